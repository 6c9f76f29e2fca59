// oracles.cc
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

#include "oracles.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <utility>

namespace gramlm::oracle {
namespace {

const Token kBos = "<s>";
const Token kEos = "</s>";
const Token kUnk = "<unk>";

long double Ld(const Count& c) {
  return static_cast<long double>(c.numerator()) /
         static_cast<long double>(c.denominator());
}

}  // namespace

std::map<Gram, std::int64_t> NaiveRecount(
    const std::vector<NormalizedUtterance>& corpus, int order) {
  std::vector<TokenSeq> padded;
  std::set<Gram> candidates;
  for (const auto& nu : corpus) {
    TokenSeq p(order - 1, kBos);
    p.insert(p.end(), nu.tokens.begin(), nu.tokens.end());
    p.push_back(kEos);
    for (size_t i = 0; i < p.size(); ++i) {
      for (int k = 1; k <= order && i + k <= p.size(); ++k) {
        candidates.insert(Gram(p.begin() + i, p.begin() + i + k));
      }
    }
    padded.push_back(std::move(p));
  }
  std::map<Gram, std::int64_t> out;
  for (const Gram& g : candidates) {
    std::int64_t n = 0;
    for (const auto& p : padded) {
      for (size_t i = 0; i + g.size() <= p.size(); ++i) {
        if (std::equal(g.begin(), g.end(), p.begin() + i)) ++n;
      }
    }
    out[g] = n;
  }
  return out;
}

NaiveWittenBell::NaiveWittenBell(const std::map<Gram, Count>& counts,
                                 int order, const ClassLexicon& lexicon)
    : counts_(counts), order_(order) {
  vocab_.insert(kEos);
  vocab_.insert(kUnk);
  for (const auto& [tag, members] : lexicon.classes()) {
    vocab_.insert(tag);
    class_sizes_[tag] = static_cast<int>(members.size());
  }
  for (const auto& w : lexicon.plain_words()) vocab_.insert(w);
  for (const auto& [g, c] : counts_) {
    for (const auto& t : g) vocab_.insert(t);
  }
  vocab_.erase(kBos);
}

long double NaiveWittenBell::Prob(const Gram& context,
                                  const Token& word) const {
  Gram h = context;
  if (static_cast<int>(h.size()) > order_ - 1) {
    h.erase(h.begin(), h.end() - (order_ - 1));
  }
  // Follower statistics by a full scan of the table.
  long double mass = 0;
  long double types = 0;
  long double c_hw = 0;
  for (const auto& [g, c] : counts_) {
    if (g.size() != h.size() + 1) continue;
    if (!std::equal(h.begin(), h.end(), g.begin())) continue;
    if (g.back() == kBos) continue;
    mass += Ld(c);
    types += 1;
    if (g.back() == word) c_hw = Ld(c);
  }
  long double lower;
  if (h.empty()) {
    lower = 1.0L / static_cast<long double>(vocab_.size());
  } else {
    lower = Prob(Gram(h.begin() + 1, h.end()), word);
  }
  if (types == 0) return lower;
  return (c_hw + types * lower) / (mass + types);
}

Token NaiveWittenBell::Map(const Token& tok) const {
  return vocab_.count(tok) ? tok : kUnk;
}

long double NaiveWittenBell::LogProb(const NormalizedUtterance& nu,
                                     bool emission) const {
  Gram history(order_ - 1, kBos);
  long double total = 0;
  for (const auto& raw : nu.tokens) {
    const Token tok = Map(raw);
    total += std::log(Prob(history, tok));
    if (emission) {
      if (auto it = class_sizes_.find(tok); it != class_sizes_.end()) {
        total += std::log(1.0L / it->second);
      }
    }
    history.push_back(tok);
  }
  total += std::log(Prob(history, kEos));
  return total;
}

long double NaiveWittenBell::Perplexity(
    const std::vector<NormalizedUtterance>& corpus, bool emission) const {
  long double lp = 0;
  long double n = 0;
  for (const auto& nu : corpus) {
    lp += LogProb(nu, emission);
    n += static_cast<long double>(nu.size() + 1);
  }
  return std::exp(-lp / n);
}

std::set<TokenSeq> BruteForceExpand(const Grammar& grammar) {
  std::set<TokenSeq> out;
  std::deque<std::vector<GrammarSymbol>> work;
  work.push_back({GrammarSymbol{false, grammar.start}});
  while (!work.empty()) {
    std::vector<GrammarSymbol> form = std::move(work.front());
    work.pop_front();
    auto nt = std::find_if(form.begin(), form.end(),
                           [](const GrammarSymbol& s) { return !s.terminal; });
    if (nt == form.end()) {
      TokenSeq s;
      for (const auto& sym : form) {
        for (auto& t : SplitWhitespace(sym.text)) s.push_back(std::move(t));
      }
      out.insert(std::move(s));
      continue;
    }
    for (const Alternative& alt : grammar.productions.at(nt->text)) {
      std::vector<GrammarSymbol> next(form.begin(), nt);
      next.insert(next.end(), alt.begin(), alt.end());
      next.insert(next.end(), nt + 1, form.end());
      work.push_back(std::move(next));
    }
  }
  return out;
}

std::vector<double> CoverageRecount(
    const std::vector<NormalizedUtterance>& ranking,
    const std::vector<NormalizedUtterance>& measured) {
  std::map<TokenSeq, std::int64_t> rank_counts;
  for (const auto& nu : ranking) ++rank_counts[nu.tokens];
  std::vector<std::pair<std::int64_t, TokenSeq>> order;
  for (const auto& [s, c] : rank_counts) order.emplace_back(-c, s);
  std::sort(order.begin(), order.end());
  std::map<TokenSeq, std::int64_t> measured_counts;
  for (const auto& nu : measured) ++measured_counts[nu.tokens];
  std::vector<double> out;
  std::int64_t covered = 0;
  for (const auto& [neg, s] : order) {
    auto it = measured_counts.find(s);
    if (it != measured_counts.end()) covered += it->second;
    out.push_back(measured.empty()
                      ? 0.0
                      : static_cast<double>(covered) /
                            static_cast<double>(measured.size()));
  }
  return out;
}

}  // namespace gramlm::oracle
