// generalize.h
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
//
// \file
// Generalizing a training n-gram table with grammar n-grams.
//
// Highest-order grams are split into three events:
//
//   usual    in both the training table and the grammar table
//   rare     in the training table only
//   unknown  in the grammar table only
//
// The merged table keeps rare counts, multiplies usual counts by the
// balance factor and adds each unknown gram once, weighted by the balance
// factor. Lower orders are repaired for context closure. The balance factor
// is picked from a grid by minimizing perplexity on a tuning corpus.

#ifndef GRAMLM_GENERALIZE_H_
#define GRAMLM_GENERALIZE_H_

#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gramlm/class_lm.h"
#include "gramlm/grammar.h"
#include "gramlm/lexicon.h"
#include "gramlm/ngram_table.h"

namespace gramlm {

struct EventPartition {
  int order = 0;
  // Training counts.
  std::map<Gram, Count> usual;
  std::map<Gram, Count> rare;
  // Grammar counts.
  std::map<Gram, Count> unknown;
};

// Throws std::invalid_argument if either table's order is below `order`.
EventPartition ClassifyEvents(const NGramTable& train,
                              const NGramTable& grammar, int order);

enum class UnknownWeight {
  kBalanceFactor,  // unknown count = 1 x balance factor
  kOnce,           // unknown count = 1
};

// Throws std::invalid_argument if balance_factor <= 0.
NGramTable Merge(const NGramTable& train, const NGramTable& grammar,
                 const Count& balance_factor,
                 UnknownWeight unknown_weight = UnknownWeight::kBalanceFactor);

struct BalanceFactor {
  enum class Provenance { kGridSearched, kUserFixed };

  Count value{1};
  Provenance provenance = Provenance::kUserFixed;
  // Perplexity on the tuning corpus at `value`.
  double objective_pp = 0.0;
};

struct TuningPoint {
  Count balance_factor;
  double pp = 0.0;
};

struct TuningResult {
  BalanceFactor best;
  // One point per grid value, in ascending factor order.
  std::vector<TuningPoint> curve;
};

// 0.5 1 2 4 8 10 16
std::vector<Count> DefaultGrid();

// Builds and scores one merged model per grid value (concurrently) and
// returns the minimum-perplexity factor; ties go to the smaller factor.
// Throws std::invalid_argument on an empty grid, a non-positive grid value,
// or an empty tuning corpus.
TuningResult TuneBalanceFactor(
    const NGramTable& train, const NGramTable& grammar,
    const ClassLexicon& lexicon,
    std::span<const NormalizedUtterance> tuning_corpus,
    std::span<const Count> grid,
    UnknownWeight unknown_weight = UnknownWeight::kBalanceFactor);

enum class GeneralizeMode {
  kNgramInjection,
  // Grammar sentences appended to the training text. Kept as a baseline:
  // it swamps the training frequency distribution.
  kNaiveSentences,
};

struct GeneralizeConfig {
  int order = 3;
  std::vector<Count> grid = DefaultGrid();
  // Skips tuning when set.
  std::optional<Count> fixed_balance_factor;
  UnknownWeight unknown_weight = UnknownWeight::kBalanceFactor;
  GeneralizeMode mode = GeneralizeMode::kNgramInjection;
  int max_depth = 16;
  size_t max_sentences = 200000;
};

struct EvaluationCorpus {
  std::string name;
  std::vector<NormalizedUtterance> utterances;
};

struct EvaluationRow {
  std::string corpus;
  double pp_baseline = 0.0;
  double pp_generalized = 0.0;
};

struct GeneralizeReport {
  GeneralizeMode mode = GeneralizeMode::kNgramInjection;
  int order = 0;
  size_t grammar_sentences = 0;
  bool grammar_truncated = false;
  size_t used = 0;
  size_t rare = 0;
  size_t unknown = 0;
  BalanceFactor balance_factor;
  std::vector<TuningPoint> curve;
  std::vector<EvaluationRow> evaluations;
};

struct GeneralizeResult {
  ClassNGramLM model;
  ClassNGramLM baseline;
  NGramTable table;
  GeneralizeReport report;
};

// Extract, generate, classify, tune, merge, train; then scores the baseline
// and the generalized model on every evaluation corpus. In
// kNaiveSentences mode there is no tuning and the factor is reported as 1.
GeneralizeResult GeneralizedLm(
    std::span<const NormalizedUtterance> train_corpus, const Grammar& grammar,
    const ClassLexicon& lexicon,
    std::span<const NormalizedUtterance> tuning_corpus,
    std::span<const EvaluationCorpus> evaluations,
    const GeneralizeConfig& config);

// Event composition and chosen factor, one row.
void WriteEventReport(std::ostream& out, const GeneralizeReport& report,
                      char sep = ',');
// corpus, pp_baseline, pp_generalized, relative_change
void WritePerplexityReport(std::ostream& out, const GeneralizeReport& report,
                           char sep = ',');
// balance_factor, pp
void WriteTuningCurve(std::ostream& out, const GeneralizeReport& report,
                      char sep = ',');

}  // namespace gramlm

#endif  // GRAMLM_GENERALIZE_H_
