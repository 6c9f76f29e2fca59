// cli.cc
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

#include "gramlm/cli.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <set>
#include <stdexcept>

#include "CLI11.hpp"
#include "gramlm/analysis.h"
#include "gramlm/class_lm.h"
#include "gramlm/corpus.h"
#include "gramlm/generalize.h"
#include "gramlm/grammar.h"
#include "gramlm/lexicon.h"
#include "gramlm/ngram_table.h"
#include "gramlm/synth.h"

namespace gramlm::cli {
namespace {

namespace fs = std::filesystem;

struct Common {
  std::string out_dir;
  std::string format = "csv";
  std::string group;

  char sep() const { return format == "tsv" ? '\t' : ','; }
  std::string ext() const { return format == "tsv" ? ".tsv" : ".csv"; }
};

struct Options {
  Common common;
  std::string corpus;
  std::string lexicon;
  std::string model;
  std::string grammar;
  std::string tune;
  std::string test;
  int order = 3;
  bool emission = false;
  int max_depth = 16;
  size_t max_sentences = 200000;
  std::string mode = "ngram";
  std::string grid;
  std::string bafa;
  std::string unknown_weight = "bafa";
  bool tune_on_test = false;
  std::string sizes = "100,500,1000,2000,all";
  int min_count = 3;
  double threshold = 0.001;
  SynthConfig synth;
};

fs::path OutDir(const Common& c) {
  fs::path dir;
  if (!c.out_dir.empty()) {
    dir = c.out_dir;
  } else if (const char* env = std::getenv(kOutDirEnv); env && *env) {
    dir = env;
  } else {
    dir = "gramlm_out";
  }
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw DataError("cannot create output directory " + dir.string());
  return dir;
}

std::ofstream OpenOut(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  return out;
}

std::string Fixed(double v) {
  if (!std::isfinite(v)) return "";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

std::optional<RequestGroup> GroupFilter(const Common& c) {
  if (c.group.empty()) return std::nullopt;
  auto g = ParseGroup(c.group);
  if (!g) throw UsageError("unknown request group '" + c.group + "'");
  return g;
}

LabeledCorpus LoadCorpus(const std::string& path, const ClassLexicon& lexicon,
                         const Common& c) {
  LabeledCorpus corpus = ReadLabeledCorpus(path, lexicon);
  if (auto g = GroupFilter(c)) corpus = FilterGroup(corpus, *g);
  return corpus;
}

std::vector<std::string> CommaList(std::string text) {
  for (char& ch : text) {
    if (ch == ',') ch = ' ';
  }
  return SplitWhitespace(text);
}

std::vector<Count> ParseGrid(const std::string& text) {
  std::vector<Count> grid;
  for (const auto& piece : CommaList(text)) {
    Count v;
    try {
      v = ParseCount(piece);
    } catch (const DataError&) {
      throw UsageError("bad balance factor '" + piece + "'");
    }
    if (v <= Count(0)) {
      throw UsageError("balance factors must be > 0, got '" + piece + "'");
    }
    grid.push_back(v);
  }
  if (grid.empty()) throw UsageError("empty balance-factor grid");
  return grid;
}

std::vector<size_t> ParseSizes(const std::string& text, size_t all) {
  std::vector<size_t> sizes;
  for (const auto& piece : CommaList(text)) {
    if (piece == "all") {
      sizes.push_back(all);
      continue;
    }
    size_t pos = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(piece, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != piece.size() || v == 0) {
      throw UsageError("bad training size '" + piece + "'");
    }
    sizes.push_back(static_cast<size_t>(v));
  }
  if (sizes.empty()) throw UsageError("no training sizes given");
  return sizes;
}

int CmdNormalize(const Options& o, std::ostream& out) {
  const ClassLexicon lexicon = ClassLexicon::Load(o.lexicon);
  const LabeledCorpus corpus = LoadCorpus(o.corpus, lexicon, o.common);
  const fs::path dir = OutDir(o.common);
  {
    std::ofstream f = OpenOut(dir / "normalized.tsv");
    WriteLabeledCorpus(f, corpus);
  }
  const std::vector<NormalizedUtterance> nus = Utterances(corpus);
  {
    std::ofstream f = OpenOut(dir / ("nu_counts" + o.common.ext()));
    const char sep = o.common.sep();
    f << "rank" << sep << "count" << sep << "nu" << '\n';
    const NuHistogram hist = CountNus(nus);
    size_t rank = 0;
    for (const auto& nu : RankNus(nus)) {
      f << ++rank << sep << hist.at(nu) << sep << nu.str() << '\n';
    }
  }
  out << "utterances " << nus.size() << ", distinct NUs "
      << CountNus(nus).size() << ", singletons " << SingletonCount(nus)
      << '\n';
  return kExitOk;
}

int CmdTrain(const Options& o, std::ostream& out) {
  const ClassLexicon lexicon = ClassLexicon::Load(o.lexicon);
  const LabeledCorpus corpus = LoadCorpus(o.corpus, lexicon, o.common);
  const std::vector<NormalizedUtterance> nus = Utterances(corpus);
  const NGramTable table = NGramTable::Extract(nus, o.order);
  const ClassNGramLM lm = ClassNGramLM::Train(table, lexicon);
  const fs::path dir = OutDir(o.common);
  table.Save(dir / "ngrams.tsv");
  lm.Save(dir / "model.lm");
  out << "trained order-" << o.order << " model on " << nus.size()
      << " utterances, vocabulary " << lm.vocab_size() << '\n';
  return kExitOk;
}

int CmdPerplexity(const Options& o, std::ostream& out) {
  const ClassLexicon lexicon = ClassLexicon::Load(o.lexicon);
  const ClassNGramLM lm = ClassNGramLM::Load(o.model);
  const LabeledCorpus corpus = LoadCorpus(o.corpus, lexicon, o.common);
  if (corpus.empty()) throw DataError(o.corpus + ": no utterances to score");
  const fs::path dir = OutDir(o.common);
  std::ofstream f = OpenOut(dir / ("perplexity" + o.common.ext()));
  const char sep = o.common.sep();
  f << "group" << sep << "utterances" << sep << "tokens" << sep << "oov"
    << sep << "log_prob" << sep << "pp" << '\n';
  auto row = [&](std::string_view name, const LabeledCorpus& part) {
    const PerplexityReport r = lm.Perplexity(Utterances(part), o.emission);
    f << name << sep << r.utterance_count << sep << r.token_count << sep
      << r.oov_count << sep << Fixed(r.log_prob_total) << sep << Fixed(r.pp)
      << '\n';
    return r;
  };
  for (RequestGroup g : kAllGroups) {
    const LabeledCorpus part = FilterGroup(corpus, g);
    if (!part.empty()) row(GroupName(g), part);
  }
  const PerplexityReport all = row("all", corpus);
  out << "pp " << Fixed(all.pp) << " over " << all.token_count
      << " tokens (" << all.oov_count << " oov)\n";
  return kExitOk;
}

int CmdGenerate(const Options& o, std::ostream& out, std::ostream& err) {
  const Grammar grammar = Grammar::Load(o.grammar);
  const SentenceSet sentences =
      Generate(grammar, o.max_depth, o.max_sentences);
  const fs::path dir = OutDir(o.common);
  std::ofstream f = OpenOut(dir / "sentences.txt");
  sentences.Write(f);
  if (sentences.truncated) {
    err << "warning: generation truncated at max_depth=" << o.max_depth
        << " / max_sentences=" << o.max_sentences << '\n';
  }
  out << sentences.size() << " sentences\n";
  return kExitOk;
}

int CmdGeneralize(const Options& o, std::ostream& out, std::ostream& err) {
  const ClassLexicon lexicon = ClassLexicon::Load(o.lexicon);
  const Grammar grammar = Grammar::Load(o.grammar);
  const LabeledCorpus train = LoadCorpus(o.corpus, lexicon, o.common);
  if (train.empty()) throw DataError(o.corpus + ": no training utterances");

  GeneralizeConfig config;
  config.order = o.order;
  config.max_depth = o.max_depth;
  config.max_sentences = o.max_sentences;
  config.mode = o.mode == "naive-sentences" ? GeneralizeMode::kNaiveSentences
                                            : GeneralizeMode::kNgramInjection;
  config.unknown_weight = o.unknown_weight == "once"
                              ? UnknownWeight::kOnce
                              : UnknownWeight::kBalanceFactor;
  if (!o.grid.empty()) config.grid = ParseGrid(o.grid);
  if (!o.bafa.empty()) config.fixed_balance_factor = ParseGrid(o.bafa).front();

  std::vector<EvaluationCorpus> evaluations;
  std::vector<NormalizedUtterance> test;
  if (!o.test.empty()) {
    test = Utterances(LoadCorpus(o.test, lexicon, o.common));
    evaluations.push_back({"test", test});
  }
  std::vector<NormalizedUtterance> tuning;
  if (o.tune_on_test) {
    if (o.test.empty()) throw UsageError("--tune-on-test needs --test");
    tuning = test;
  } else if (!o.tune.empty()) {
    tuning = Utterances(LoadCorpus(o.tune, lexicon, o.common));
  }
  if (config.mode == GeneralizeMode::kNgramInjection &&
      !config.fixed_balance_factor && tuning.empty()) {
    throw UsageError(
        "balance-factor tuning needs --tune, --tune-on-test or a fixed --bafa");
  }
  const SentenceSet sentences =
      Generate(grammar, config.max_depth, config.max_sentences);
  if (sentences.truncated) {
    err << "warning: grammar generation truncated\n";
  }
  evaluations.push_back({"grammar", sentences.AsUtterances()});

  const GeneralizeResult result = GeneralizedLm(
      Utterances(train), grammar, lexicon, tuning, evaluations, config);
  const fs::path dir = OutDir(o.common);
  result.model.Save(dir / "model.lm");
  result.baseline.Save(dir / "baseline.lm");
  result.table.Save(dir / "ngrams.tsv");
  const char sep = o.common.sep();
  {
    std::ofstream f = OpenOut(dir / ("events" + o.common.ext()));
    WriteEventReport(f, result.report, sep);
  }
  {
    std::ofstream f = OpenOut(dir / ("perplexity" + o.common.ext()));
    WritePerplexityReport(f, result.report, sep);
  }
  if (!result.report.curve.empty()) {
    std::ofstream f = OpenOut(dir / ("tuning" + o.common.ext()));
    WriteTuningCurve(f, result.report, sep);
  }
  const auto& r = result.report;
  out << "used " << r.used << ", rare " << r.rare << ", unknown "
      << r.unknown << ", bafa " << FormatCount(r.balance_factor.value) << '\n';
  for (const auto& e : r.evaluations) {
    out << e.corpus << ": pp " << Fixed(e.pp_baseline) << " -> "
        << Fixed(e.pp_generalized) << '\n';
  }
  return kExitOk;
}

int CmdAnalyze(const Options& o, std::ostream& out) {
  const ClassLexicon lexicon = ClassLexicon::Load(o.lexicon);
  const LabeledCorpus train = LoadCorpus(o.corpus, lexicon, o.common);
  const LabeledCorpus test = LoadCorpus(o.test, lexicon, o.common);
  if (train.empty()) throw DataError(o.corpus + ": no training utterances");
  if (test.empty()) throw DataError(o.test + ": no test utterances");
  std::vector<size_t> sizes = ParseSizes(o.sizes, train.size());
  for (size_t s : sizes) {
    if (s > train.size()) {
      throw UsageError("training size " + std::to_string(s) +
                       " exceeds corpus size " +
                       std::to_string(train.size()));
    }
  }
  const fs::path dir = OutDir(o.common);
  const char sep = o.common.sep();
  const std::vector<NormalizedUtterance> train_nus = Utterances(train);
  const std::vector<NormalizedUtterance> test_nus = Utterances(test);
  {
    std::ofstream f = OpenOut(dir / ("fig1_coverage" + o.common.ext()));
    WriteCoverageCsv(f, ComputeCoverage(train_nus, train_nus),
                     ComputeCoverage(train_nus, test_nus), sep);
  }
  {
    std::ofstream f = OpenOut(dir / ("fig3_pp_sweep" + o.common.ext()));
    WriteSweepCsv(f, PartialTrainingSweep(train, sizes, test, lexicon, o.order),
                  sep);
  }
  {
    std::ofstream f = OpenOut(dir / ("tab1_saturation" + o.common.ext()));
    WriteSaturationCsv(f, ComputeSaturation(train, sizes, o.min_count), sep);
  }
  {
    std::ofstream f = OpenOut(dir / ("sec3_overlap" + o.common.ext()));
    WriteOverlapCsv(f, FrequencyOverlap(train, test, o.threshold), sep);
  }
  {
    const ClassNGramLM lm =
        ClassNGramLM::Train(NGramTable::Extract(train_nus, o.order), lexicon);
    const UnseenSplit split = SplitUnseen(train, test);
    std::ofstream f = OpenOut(dir / ("sec3_unseen" + o.common.ext()));
    f << "group" << sep << "seen_utterances" << sep << "unseen_utterances"
      << sep << "seen_types" << sep << "unseen_types" << sep << "pp_seen"
      << sep << "pp_unseen" << '\n';
    auto pp = [&](const LabeledCorpus& part) {
      return part.empty() ? NAN : lm.Perplexity(Utterances(part), false).pp;
    };
    for (RequestGroup g : kAllGroups) {
      const LabeledCorpus seen = FilterGroup(split.seen, g);
      const LabeledCorpus unseen = FilterGroup(split.unseen, g);
      if (seen.empty() && unseen.empty()) continue;
      std::set<NormalizedUtterance> st, ut;
      for (const auto& u : seen) st.insert(u.nu);
      for (const auto& u : unseen) ut.insert(u.nu);
      f << GroupName(g) << sep << seen.size() << sep << unseen.size() << sep
        << st.size() << sep << ut.size() << sep << Fixed(pp(seen)) << sep
        << Fixed(pp(unseen)) << '\n';
    }
    f << "all" << sep << split.seen.size() << sep << split.unseen.size()
      << sep << split.seen_types << sep << split.unseen_types << sep
      << Fixed(pp(split.seen)) << sep << Fixed(pp(split.unseen)) << '\n';
  }
  out << "wrote analyses for " << train.size() << " training and "
      << test.size() << " test utterances to " << dir.string() << '\n';
  return kExitOk;
}

int CmdSynth(const Options& o, std::ostream& out) {
  if (o.synth.train_size == 0) throw UsageError("--train-size must be > 0");
  if (o.synth.noise_rate < 0.0 || o.synth.noise_rate > 1.0) {
    throw UsageError("--noise-rate must be in [0, 1]");
  }
  const SyntheticData data = Synthesize(o.synth);
  const fs::path dir = OutDir(o.common);
  WriteSyntheticData(data, dir);
  out << "wrote synthetic corpus (seed " << o.synth.seed << ") to "
      << dir.string() << '\n';
  return kExitOk;
}

void AddCommon(CLI::App* sub, Common& c, bool with_group) {
  sub->add_option("--out", c.out_dir, "Output directory");
  sub->add_option("--format", c.format, "Report format")
      ->check(CLI::IsMember({"csv", "tsv"}));
  if (with_group) {
    sub->add_option("--group", c.group,
                    "Restrict corpora to one request group (City, Date, "
                    "Time, Other)");
  }
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  Options o;
  CLI::App app{"Class-based n-gram LMs generalized with grammar n-grams",
               "gramlm"};
  app.require_subcommand(1);

  auto* normalize = app.add_subcommand("normalize", "Normalize a corpus to NUs");
  normalize->add_option("--corpus", o.corpus)->required()->check(CLI::ExistingFile);
  normalize->add_option("--lexicon", o.lexicon)->required()->check(CLI::ExistingFile);
  AddCommon(normalize, o.common, true);

  auto* train = app.add_subcommand("train", "Train a class n-gram model");
  train->add_option("--corpus", o.corpus)->required()->check(CLI::ExistingFile);
  train->add_option("--lexicon", o.lexicon)->required()->check(CLI::ExistingFile);
  train->add_option("--order", o.order)->check(CLI::PositiveNumber);
  AddCommon(train, o.common, true);

  auto* perplexity = app.add_subcommand("perplexity", "Score a corpus");
  perplexity->add_option("--model", o.model)->required()->check(CLI::ExistingFile);
  perplexity->add_option("--corpus", o.corpus)->required()->check(CLI::ExistingFile);
  perplexity->add_option("--lexicon", o.lexicon)->required()->check(CLI::ExistingFile);
  perplexity->add_flag("--emission", o.emission,
                       "Add uniform within-class word probabilities");
  AddCommon(perplexity, o.common, true);

  auto* generate = app.add_subcommand("generate", "Expand a grammar");
  generate->add_option("--grammar", o.grammar)->required()->check(CLI::ExistingFile);
  generate->add_option("--max-depth", o.max_depth)->check(CLI::PositiveNumber);
  generate->add_option("--max-sentences", o.max_sentences)->check(CLI::PositiveNumber);
  AddCommon(generate, o.common, false);

  auto* generalize = app.add_subcommand(
      "generalize", "Merge grammar n-grams into a training-set model");
  generalize->add_option("--corpus", o.corpus)->required()->check(CLI::ExistingFile);
  generalize->add_option("--grammar", o.grammar)->required()->check(CLI::ExistingFile);
  generalize->add_option("--lexicon", o.lexicon)->required()->check(CLI::ExistingFile);
  generalize->add_option("--tune", o.tune, "Tuning corpus")->check(CLI::ExistingFile);
  generalize->add_option("--test", o.test, "Evaluation corpus")->check(CLI::ExistingFile);
  generalize->add_flag("--tune-on-test", o.tune_on_test,
                       "Tune the balance factor on the evaluation corpus");
  generalize->add_option("--order", o.order)->check(CLI::PositiveNumber);
  generalize->add_option("--mode", o.mode)
      ->check(CLI::IsMember({"ngram", "naive-sentences"}));
  generalize->add_option("--grid", o.grid, "Balance factors, comma separated");
  generalize->add_option("--bafa", o.bafa, "Fixed balance factor");
  generalize->add_option("--unknown-weight", o.unknown_weight)
      ->check(CLI::IsMember({"bafa", "once"}));
  generalize->add_option("--max-depth", o.max_depth)->check(CLI::PositiveNumber);
  generalize->add_option("--max-sentences", o.max_sentences)->check(CLI::PositiveNumber);
  AddCommon(generalize, o.common, true);

  auto* analyze = app.add_subcommand("analyze", "Corpus studies");
  analyze->add_option("--corpus", o.corpus)->required()->check(CLI::ExistingFile);
  analyze->add_option("--test", o.test)->required()->check(CLI::ExistingFile);
  analyze->add_option("--lexicon", o.lexicon)->required()->check(CLI::ExistingFile);
  analyze->add_option("--order", o.order)->check(CLI::PositiveNumber);
  analyze->add_option("--sizes", o.sizes,
                      "Ascending training prefix sizes; 'all' = whole corpus");
  analyze->add_option("--min-count", o.min_count,
                      "A frequent NU occurs more than this many times")
      ->check(CLI::NonNegativeNumber);
  analyze->add_option("--threshold", o.threshold,
                      "Relative-frequency threshold for overlap")
      ->check(CLI::Range(0.0, 1.0));
  AddCommon(analyze, o.common, true);

  auto* synth = app.add_subcommand("synth", "Write the seeded synthetic corpus");
  synth->add_option("--seed", o.synth.seed);
  synth->add_option("--train-size", o.synth.train_size);
  synth->add_option("--tune-size", o.synth.tune_size);
  synth->add_option("--test-size", o.synth.test_size);
  synth->add_option("--noise-rate", o.synth.noise_rate);
  AddCommon(synth, o.common, false);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsageError;
  }

  try {
    if (normalize->parsed()) return CmdNormalize(o, out);
    if (train->parsed()) return CmdTrain(o, out);
    if (perplexity->parsed()) return CmdPerplexity(o, out);
    if (generate->parsed()) return CmdGenerate(o, out, err);
    if (generalize->parsed()) return CmdGeneralize(o, out, err);
    if (analyze->parsed()) return CmdAnalyze(o, out);
    if (synth->parsed()) return CmdSynth(o, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsageError;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsageError;
  } catch (const DataError& e) {
    err << "error: " << e.what() << '\n';
    return kExitDataError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitDataError;
  }
  err << "no subcommand\n";
  return kExitUsageError;
}

}  // namespace gramlm::cli
