// class_lm_test.cc
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

#include "gramlm/class_lm.h"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "gramlm/corpus.h"
#include "gramlm/synth.h"
#include "oracles.h"
#include "test_util.h"

namespace gramlm {
namespace {

using testing_util::G;
using testing_util::LexiconFrom;
using testing_util::Nu;
using testing_util::Nus;

const SyntheticData& Data() {
  static const SyntheticData data = Synthesize(SynthConfig{});
  return data;
}

std::vector<NormalizedUtterance> TrainPrefix(size_t n) {
  const auto& d = Data();
  std::vector<RawLine> lines(d.train.begin(), d.train.begin() + n);
  return Utterances(NormalizeCorpus(d.lexicon, lines));
}

std::vector<NormalizedUtterance> TestSplit() {
  const auto& d = Data();
  return Utterances(NormalizeCorpus(d.lexicon, d.test));
}

ClassNGramLM TrainOn(const std::vector<NormalizedUtterance>& corpus, int order,
                     const ClassLexicon& lexicon) {
  return ClassNGramLM::Train(NGramTable::Extract(corpus, order), lexicon);
}

double MaxNormalizationError(const ClassNGramLM& lm) {
  const auto tokens = lm.PredictedTokens();
  double worst = 0.0;
  for (const Gram& ctx : lm.Contexts()) {
    double sum = 0.0;
    for (const auto& t : tokens) sum += lm.Prob(ctx, t);
    worst = std::max(worst, std::abs(sum - 1.0));
  }
  return worst;
}

TEST(ClassNGramLMTest, EmptyTableIsAnError) {
  EXPECT_THROW(ClassNGramLM::Train(NGramTable(3), ClassLexicon{}), DataError);
}

TEST(ClassNGramLMTest, SingleSymbolUnigram) {
  const ClassNGramLM lm = TrainOn(Nus({"a a a"}), 1, ClassLexicon{});
  const double pa = lm.Prob({}, "a");
  const double punk = lm.Prob({}, "<unk>");
  const double peos = lm.Prob({}, "</s>");
  EXPECT_GT(pa, peos);
  EXPECT_GT(pa, punk);
  EXPECT_GT(punk, 0.0);
  EXPECT_NEAR(pa + punk + peos, 1.0, 1e-12);
  EXPECT_EQ(lm.PredictedTokens().size(), 3u);
}

TEST(ClassNGramLMTest, UniformUnigramPerplexityIsAboutV) {
  const TokenSeq alphabet = {"t0", "t1", "t2", "t3", "t4",
                             "t5", "t6", "t7", "t8", "t9"};
  std::mt19937_64 rng(10);
  auto draw = [&](size_t n) {
    std::vector<NormalizedUtterance> out;
    for (size_t i = 0; i < n; ++i) {
      NormalizedUtterance nu;
      for (int j = 0; j < 100; ++j) nu.tokens.push_back(alphabet[rng() % 10]);
      out.push_back(std::move(nu));
    }
    return out;
  };
  const ClassNGramLM lm = TrainOn(draw(500), 1, ClassLexicon{});
  const PerplexityReport r = lm.Perplexity(draw(50), false);
  EXPECT_NEAR(r.pp, 10.0, 0.5);
  EXPECT_EQ(r.oov_count, 0);
}

TEST(ClassNGramLMTest, NormalizesOverEveryContext) {
  const ClassNGramLM lm = TrainOn(TrainPrefix(500), 3, Data().lexicon);
  EXPECT_GT(lm.Contexts().size(), 100u);
  EXPECT_LT(MaxNormalizationError(lm), 1e-6);
}

TEST(ClassNGramLMTest, EveryTokenHasPositiveProbability) {
  const ClassNGramLM lm = TrainOn(TrainPrefix(200), 3, Data().lexicon);
  for (const Gram& ctx : lm.Contexts()) {
    for (const auto& t : lm.PredictedTokens()) {
      ASSERT_GT(lm.Prob(ctx, t), 0.0) << Join(ctx) << " -> " << t;
    }
  }
}

TEST(ClassNGramLMTest, MatchesNaiveOracle) {
  const auto corpus = TrainPrefix(300);
  const NGramTable table = NGramTable::Extract(corpus, 3);
  const ClassNGramLM lm = ClassNGramLM::Train(table, Data().lexicon);
  const oracle::NaiveWittenBell naive(table.entries(), 3, Data().lexicon);
  EXPECT_EQ(naive.vocabulary().size(), lm.vocab_size() - 1);
  const auto test = TestSplit();
  for (size_t i = 0; i < 30; ++i) {
    for (bool emission : {false, true}) {
      const double fast = lm.LogProb(test[i], emission);
      const long double slow = naive.LogProb(test[i], emission);
      EXPECT_NEAR(fast, static_cast<double>(slow),
                  1e-9 * std::abs(static_cast<double>(slow)))
          << test[i].str();
    }
  }
}

TEST(ClassNGramLMTest, EmissionAddsLogInverseClassSize) {
  const ClassNGramLM lm = TrainOn(TrainPrefix(500), 3, Data().lexicon);
  const NormalizedUtterance nu = Nu("CITY-NAME");
  EXPECT_NEAR(lm.LogProb(nu, true) - lm.LogProb(nu, false),
              std::log(1.0 / 2983.0), 1e-9);
}

TEST(ClassNGramLMTest, EmissionOffScoresClassSequenceOnly) {
  const ClassLexicon lex = LexiconFrom("A: x y\n");
  const ClassNGramLM lm = TrainOn(Nus({"A A"}), 2, lex);
  const double expected = std::log(lm.Prob(G("<s>"), "A")) +
                          std::log(lm.Prob(G("A"), "A")) +
                          std::log(lm.Prob(G("A"), "</s>"));
  EXPECT_NEAR(lm.LogProb(Nu("A A"), false), expected, 1e-12);
  EXPECT_NEAR(lm.LogProb(Nu("A A"), true), expected + 2 * std::log(0.5),
              1e-12);
}

TEST(ClassNGramLMTest, MemorizedUtteranceHasPerplexityNearOne) {
  std::vector<NormalizedUtterance> corpus(
      200, Nu("from CITY-NAME to CITY-NAME"));
  const ClassNGramLM lm = TrainOn(corpus, 3, Data().lexicon);
  EXPECT_LT(lm.Perplexity(corpus, false).pp, 1.2);
}

TEST(ClassNGramLMTest, MoreTrainingDataLowersPerplexity) {
  const auto test = TestSplit();
  const double small =
      TrainOn(TrainPrefix(100), 3, Data().lexicon).Perplexity(test, false).pp;
  const double large =
      TrainOn(TrainPrefix(1000), 3, Data().lexicon).Perplexity(test, false).pp;
  EXPECT_GT(small, large);
}

TEST(ClassNGramLMTest, WordPerplexityAtLeastClassPerplexity) {
  const ClassNGramLM lm = TrainOn(TrainPrefix(500), 3, Data().lexicon);
  const auto test = TestSplit();
  EXPECT_GE(lm.Perplexity(test, true).pp, lm.Perplexity(test, false).pp);
}

TEST(ClassNGramLMTest, PerplexityCountsTokensAndOov) {
  const ClassNGramLM lm = TrainOn(Nus({"a b", "b a"}), 2, ClassLexicon{});
  const PerplexityReport r = lm.Perplexity(Nus({"a zz b", "qq"}), false);
  EXPECT_EQ(r.utterance_count, 2);
  EXPECT_EQ(r.token_count, 6);
  EXPECT_EQ(r.oov_count, 2);
  EXPECT_NEAR(r.pp, std::exp(-r.log_prob_total / 6.0), 1e-12);
  EXPECT_GE(r.pp, 1.0);
}

TEST(ClassNGramLMTest, EmptyCorpusIsAnError) {
  const ClassNGramLM lm = TrainOn(Nus({"a"}), 2, ClassLexicon{});
  EXPECT_THROW(lm.Perplexity(std::vector<NormalizedUtterance>{}, false),
               std::invalid_argument);
}

TEST(ClassNGramLMTest, ExportImportRoundTrip) {
  const ClassNGramLM lm = TrainOn(TrainPrefix(300), 3, Data().lexicon);
  std::ostringstream out;
  lm.Export(out);
  std::istringstream in(out.str());
  const ClassNGramLM back = ClassNGramLM::Import(in);
  EXPECT_EQ(back.order(), lm.order());
  EXPECT_EQ(back.class_sizes(), lm.class_sizes());
  const auto tokens = lm.PredictedTokens();
  ASSERT_EQ(back.PredictedTokens(), tokens);
  for (const Gram& ctx : lm.Contexts()) {
    for (const auto& t : tokens) {
      ASSERT_EQ(back.Prob(ctx, t), lm.Prob(ctx, t)) << Join(ctx) << " " << t;
    }
  }
  std::ostringstream again;
  back.Export(again);
  EXPECT_EQ(again.str(), out.str());
  EXPECT_LT(MaxNormalizationError(back), 1e-6);
}

TEST(ClassNGramLMTest, ImportTruncatedFileFails) {
  const ClassNGramLM lm = TrainOn(Nus({"a b c", "c b"}), 3, ClassLexicon{});
  std::ostringstream out;
  lm.Export(out);
  const std::string text = out.str();
  std::istringstream in(text.substr(0, text.size() / 2));
  EXPECT_THROW(ClassNGramLM::Import(in), DataError);
}

TEST(ClassNGramLMTest, ImportVersionMismatchFails) {
  const ClassNGramLM lm = TrainOn(Nus({"a b"}), 2, ClassLexicon{});
  std::ostringstream out;
  lm.Export(out);
  std::string text = out.str();
  const std::string v1 = "# gramlm model 1";
  const auto pos = text.find(v1);
  ASSERT_NE(pos, std::string::npos);
  text.replace(pos, v1.size(), "# gramlm model 99");
  std::istringstream in(text);
  EXPECT_THROW(ClassNGramLM::Import(in), DataError);
}

TEST(ClassNGramLMTest, SaveLoadFile) {
  testing_util::TempDir dir("lm");
  const ClassNGramLM lm = TrainOn(Nus({"a b", "b"}), 2, ClassLexicon{});
  lm.Save(dir / "m.lm");
  const ClassNGramLM back = ClassNGramLM::Load(dir / "m.lm");
  EXPECT_EQ(back.Prob(G("a"), "b"), lm.Prob(G("a"), "b"));
  EXPECT_THROW(ClassNGramLM::Load(dir / "missing.lm"), DataError);
}

}  // namespace
}  // namespace gramlm
