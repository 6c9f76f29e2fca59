// grammar.h
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
// Hand-written context-free grammars over NU tokens and their bounded
// exhaustive expansion.
//
// File format:
//
//   # comment
//   start Time;
//   Time -> Part_of_Day Time_Specifier Time_Identifier ;
//   Part_of_Day -> "in the morning" | "in the afternoon" | "at lunch time" ;
//   Time_Identifier -> "HOUR-NUMBER" | "a quarter to HOUR-NUMBER" ;
//
// Quoted strings are terminals (split on whitespace, so one string may hold
// several tokens; "" is the empty string). Bare names are nonterminals.
// `→` is accepted for `->`. Several rules for the same name add
// alternatives. Without a `start` declaration the first rule's name is the
// start symbol.

#ifndef GRAMLM_GRAMMAR_H_
#define GRAMLM_GRAMMAR_H_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "gramlm/normalize.h"
#include "gramlm/types.h"

namespace gramlm {

struct GrammarSymbol {
  bool terminal = true;
  std::string text;

  friend bool operator==(const GrammarSymbol&, const GrammarSymbol&) = default;
};

using Alternative = std::vector<GrammarSymbol>;

struct Grammar {
  std::string start;
  std::map<std::string, std::vector<Alternative>> productions;
  // Nonterminals that can derive themselves. Recursion is allowed; the
  // generator bounds it by depth.
  std::set<std::string> recursive;

  // Throws DataError (with line numbers) on syntax errors, undefined
  // nonterminals, or a missing start symbol.
  static Grammar Parse(std::string_view text,
                       std::string_view source = "<grammar>");
  static Grammar Load(const std::filesystem::path& path);

  size_t num_alternatives(const std::string& nonterminal) const {
    return productions.at(nonterminal).size();
  }
};

struct SentenceSet {
  std::set<TokenSeq> sentences;
  // Set iff a depth or size bound pruned at least one derivation.
  bool truncated = false;

  size_t size() const { return sentences.size(); }
  std::vector<NormalizedUtterance> AsUtterances() const;
  // One sentence per line, in lexicographic token order.
  void Write(std::ostream& out) const;
};

// Expands every derivation whose nonterminal nesting depth is at most
// `max_depth` (the start symbol is at depth 1). Keeps at most
// `max_sentences` sentences. Deterministic.
// Throws std::invalid_argument unless both bounds are positive.
SentenceSet Generate(const Grammar& grammar, int max_depth,
                     size_t max_sentences);

// Fraction of distinct NUs that some generated sentence matches exactly.
// An empty NU set is vacuously covered (1.0).
double NuCoverage(const SentenceSet& sentences,
                  const std::set<NormalizedUtterance>& nus);

}  // namespace gramlm

#endif  // GRAMLM_GRAMMAR_H_
