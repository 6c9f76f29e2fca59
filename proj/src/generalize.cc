// generalize.cc
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Copyright 2026 The gramlm Authors.

#include "gramlm/generalize.h"

#include <algorithm>
#include <cstdio>
#include <future>
#include <ostream>
#include <stdexcept>

namespace gramlm {
namespace {

std::string Fixed(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

std::string Decimal(const Count& c) {
  if (c.denominator() == 1) return std::to_string(c.numerator());
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", ToDouble(c));
  return buf;
}

std::string_view ModeName(GeneralizeMode mode) {
  return mode == GeneralizeMode::kNgramInjection ? "ngram" : "naive-sentences";
}

std::string_view ProvenanceName(BalanceFactor::Provenance p) {
  return p == BalanceFactor::Provenance::kGridSearched ? "grid" : "fixed";
}

}  // namespace

EventPartition ClassifyEvents(const NGramTable& train,
                              const NGramTable& grammar, int order) {
  if (train.order() < order || grammar.order() < order) {
    throw std::invalid_argument(
        "event classification at order " + std::to_string(order) +
        " needs tables of at least that order (got " +
        std::to_string(train.order()) + " and " +
        std::to_string(grammar.order()) + ")");
  }
  EventPartition p;
  p.order = order;
  for (const auto& [gram, c] : train.entries()) {
    if (static_cast<int>(gram.size()) != order) continue;
    (grammar.contains(gram) ? p.usual : p.rare).emplace(gram, c);
  }
  for (const auto& [gram, c] : grammar.entries()) {
    if (static_cast<int>(gram.size()) != order) continue;
    if (!train.contains(gram)) p.unknown.emplace(gram, c);
  }
  return p;
}

NGramTable Merge(const NGramTable& train, const NGramTable& grammar,
                 const Count& balance_factor, UnknownWeight unknown_weight) {
  if (balance_factor <= Count(0)) {
    throw std::invalid_argument("balance factor must be positive, got " +
                                FormatCount(balance_factor));
  }
  const EventPartition events = ClassifyEvents(train, grammar, train.order());
  NGramTable merged = train;
  merged.Scale(balance_factor, [&](const Gram& g) {
    return events.usual.count(g) > 0;
  });
  const Count unknown_count =
      unknown_weight == UnknownWeight::kBalanceFactor ? balance_factor
                                                      : Count(1);
  for (const auto& [gram, c] : events.unknown) {
    merged.Inject(gram, unknown_count);
  }
  return merged;
}

std::vector<Count> DefaultGrid() {
  return {Count(1, 2), Count(1), Count(2), Count(4),
          Count(8),    Count(10), Count(16)};
}

TuningResult TuneBalanceFactor(
    const NGramTable& train, const NGramTable& grammar,
    const ClassLexicon& lexicon,
    std::span<const NormalizedUtterance> tuning_corpus,
    std::span<const Count> grid, UnknownWeight unknown_weight) {
  if (grid.empty()) throw std::invalid_argument("empty balance-factor grid");
  if (tuning_corpus.empty()) {
    throw std::invalid_argument("empty tuning corpus");
  }
  std::vector<Count> values(grid.begin(), grid.end());
  for (const Count& v : values) {
    if (v <= Count(0)) {
      throw std::invalid_argument("balance factor must be positive, got " +
                                  FormatCount(v));
    }
  }
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());

  std::vector<std::future<double>> jobs;
  jobs.reserve(values.size());
  for (const Count& v : values) {
    jobs.push_back(std::async(std::launch::async, [&, v] {
      const NGramTable merged = Merge(train, grammar, v, unknown_weight);
      const ClassNGramLM lm = ClassNGramLM::Train(merged, lexicon);
      return lm.Perplexity(tuning_corpus, /*emission=*/false).pp;
    }));
  }

  TuningResult result;
  for (size_t i = 0; i < values.size(); ++i) {
    result.curve.push_back({values[i], jobs[i].get()});
  }
  const TuningPoint* best = &result.curve.front();
  for (const auto& point : result.curve) {
    if (point.pp < best->pp) best = &point;
  }
  result.best = {best->balance_factor,
                 BalanceFactor::Provenance::kGridSearched, best->pp};
  return result;
}

GeneralizeResult GeneralizedLm(
    std::span<const NormalizedUtterance> train_corpus, const Grammar& grammar,
    const ClassLexicon& lexicon,
    std::span<const NormalizedUtterance> tuning_corpus,
    std::span<const EvaluationCorpus> evaluations,
    const GeneralizeConfig& config) {
  const NGramTable train = NGramTable::Extract(train_corpus, config.order);
  const SentenceSet sentences =
      Generate(grammar, config.max_depth, config.max_sentences);
  const std::vector<NormalizedUtterance> generated = sentences.AsUtterances();
  const NGramTable grammar_table =
      NGramTable::Extract(generated, config.order);
  const EventPartition events =
      ClassifyEvents(train, grammar_table, config.order);

  GeneralizeReport report;
  report.mode = config.mode;
  report.order = config.order;
  report.grammar_sentences = sentences.size();
  report.grammar_truncated = sentences.truncated;
  report.used = events.usual.size();
  report.rare = events.rare.size();
  report.unknown = events.unknown.size();

  std::optional<NGramTable> table;
  if (config.mode == GeneralizeMode::kNaiveSentences) {
    std::vector<NormalizedUtterance> combined(train_corpus.begin(),
                                              train_corpus.end());
    combined.insert(combined.end(), generated.begin(), generated.end());
    table = NGramTable::Extract(combined, config.order);
    report.balance_factor = {Count(1), BalanceFactor::Provenance::kUserFixed,
                             0.0};
  } else {
    if (config.fixed_balance_factor) {
      report.balance_factor = {*config.fixed_balance_factor,
                               BalanceFactor::Provenance::kUserFixed, 0.0};
    } else {
      TuningResult tuned =
          TuneBalanceFactor(train, grammar_table, lexicon, tuning_corpus,
                            config.grid, config.unknown_weight);
      report.balance_factor = tuned.best;
      report.curve = std::move(tuned.curve);
    }
    table = Merge(train, grammar_table, report.balance_factor.value,
                  config.unknown_weight);
  }

  ClassNGramLM model = ClassNGramLM::Train(*table, lexicon);
  ClassNGramLM baseline = ClassNGramLM::Train(train, lexicon);
  if (report.balance_factor.objective_pp == 0.0 && !tuning_corpus.empty()) {
    report.balance_factor.objective_pp =
        model.Perplexity(tuning_corpus, false).pp;
  }
  for (const auto& eval : evaluations) {
    report.evaluations.push_back(
        {eval.name, baseline.Perplexity(eval.utterances, false).pp,
         model.Perplexity(eval.utterances, false).pp});
  }
  return {std::move(model), std::move(baseline), std::move(*table),
          std::move(report)};
}

void WriteEventReport(std::ostream& out, const GeneralizeReport& r, char sep) {
  out << "mode" << sep << "order" << sep << "grammar_sentences" << sep
      << "grammar_truncated" << sep << "used" << sep << "rare" << sep
      << "unknown" << sep << "bafa" << sep << "bafa_source" << sep
      << "tuning_pp" << '\n';
  out << ModeName(r.mode) << sep << r.order << sep << r.grammar_sentences
      << sep << (r.grammar_truncated ? 1 : 0) << sep << r.used << sep
      << r.rare << sep << r.unknown << sep << Decimal(r.balance_factor.value)
      << sep << ProvenanceName(r.balance_factor.provenance) << sep
      << Fixed(r.balance_factor.objective_pp) << '\n';
}

void WritePerplexityReport(std::ostream& out, const GeneralizeReport& r,
                           char sep) {
  out << "corpus" << sep << "pp_baseline" << sep << "pp_generalized" << sep
      << "relative_change" << '\n';
  for (const auto& e : r.evaluations) {
    out << e.corpus << sep << Fixed(e.pp_baseline) << sep
        << Fixed(e.pp_generalized) << sep
        << Fixed((e.pp_generalized - e.pp_baseline) / e.pp_baseline) << '\n';
  }
}

void WriteTuningCurve(std::ostream& out, const GeneralizeReport& r, char sep) {
  out << "bafa" << sep << "pp" << '\n';
  for (const auto& p : r.curve) {
    out << Decimal(p.balance_factor) << sep << Fixed(p.pp) << '\n';
  }
}

}  // namespace gramlm
