// class_lm.h
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
// Class-based backoff n-gram model with interpolated Witten-Bell smoothing.
//
// For a context h with follower mass c(h) and T(h) distinct followers,
//
//   P(w | h) = (c(h w) + T(h) P(w | h')) / (c(h) + T(h))
//
// where h' drops the oldest token of h. The unigram level interpolates
// with the uniform distribution over the predicted vocabulary (every token
// except <s>), so <unk> and lexicon tokens unseen in training keep nonzero
// mass. Because the lower-order term enters with weight T(h)/(c(h)+T(h)),
// the interpolated model is stored exactly in backoff (ARPA) form:
// explicit probabilities for seen grams and that weight as the backoff.
//
// Words inside a class are equiprobable: word-level scoring adds
// log(1/|class|) for every class-tag token.

#ifndef GRAMLM_CLASS_LM_H_
#define GRAMLM_CLASS_LM_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "gramlm/lexicon.h"
#include "gramlm/ngram_table.h"
#include "gramlm/normalize.h"

namespace gramlm {

struct PerplexityReport {
  double pp = 0.0;
  // Natural log.
  double log_prob_total = 0.0;
  // Scored tokens: every utterance token plus one </s>; <s> is not scored.
  std::int64_t token_count = 0;
  std::int64_t oov_count = 0;
  std::int64_t utterance_count = 0;
};

class ClassNGramLM {
 public:
  static constexpr int kFormatVersion = 1;

  // Throws DataError on an empty table or one that violates closure.
  static ClassNGramLM Train(const NGramTable& table,
                            const ClassLexicon& lexicon);

  int order() const { return order_; }

  // Natural-log probability of the utterance, </s> included. Tokens outside
  // the vocabulary are scored as <unk> and counted into `oov`.
  double LogProb(const NormalizedUtterance& nu, bool emission,
                 std::int64_t* oov = nullptr) const;
  // Throws std::invalid_argument on an empty corpus.
  PerplexityReport Perplexity(std::span<const NormalizedUtterance> corpus,
                              bool emission) const;

  // P(token | context) by backoff. Only the last order()-1 context tokens
  // are used; unknown tokens map to <unk>.
  double Prob(std::span<const Token> context, std::string_view token) const;

  // Every token that receives probability mass (the vocabulary minus <s>).
  std::vector<Token> PredictedTokens() const;
  // Every context with observed follower mass, the empty context included.
  std::vector<Gram> Contexts() const;
  size_t vocab_size() const { return vocab_.size(); }
  const std::map<std::string, int>& class_sizes() const {
    return class_sizes_;
  }
  // Number of explicit entries at order k (1-based).
  size_t num_entries(int k) const { return entries_.at(k - 1).size(); }

  // ARPA text plus a `\classes:` section with class sizes. Numbers are
  // written in shortest round-trip form, so Import(Export(m)) reproduces
  // every stored value bit for bit.
  void Export(std::ostream& out) const;
  void Save(const std::filesystem::path& path) const;
  // Throws DataError on a version mismatch or malformed/truncated input.
  static ClassNGramLM Import(std::istream& in,
                             std::string_view source = "<model>");
  static ClassNGramLM Load(const std::filesystem::path& path);

 private:
  using IdGram = std::vector<TokenId>;
  struct IdGramHash {
    size_t operator()(const IdGram& g) const {
      size_t h = 1469598103934665603ull;
      for (TokenId id : g) {
        h ^= static_cast<size_t>(id) + 0x9e3779b97f4a7c15ull + (h << 6) +
             (h >> 2);
      }
      return h;
    }
  };
  struct Entry {
    double log10_prob = 0.0;
    double log10_bow = 0.0;
    bool is_context = false;
  };
  using EntryMap = std::unordered_map<IdGram, Entry, IdGramHash>;

  ClassNGramLM() = default;

  // log10 P(word | context) where context holds at most order()-1 ids.
  double Log10Prob(std::span<const TokenId> context, TokenId word) const;
  TokenId IdOrUnk(std::string_view tok, bool* oov) const;
  void BuildEmission();

  int order_ = 0;
  Vocabulary vocab_;
  TokenId start_id_ = 0;
  TokenId end_id_ = 0;
  TokenId unk_id_ = 0;
  // entries_[k-1] holds the order-k grams.
  std::vector<EntryMap> entries_;
  std::map<std::string, int> class_sizes_;
  // Natural-log emission term per token id (0 for non-class tokens).
  std::vector<double> emission_;
};

}  // namespace gramlm

#endif  // GRAMLM_CLASS_LM_H_
