// lexicon.h
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
// Word classes and token interning.
//
// A lexicon file holds one class per line:
//
//   # comment
//   CITY-NAME: naples rome reggio_calabria
//   WEEK-DAY: monday tuesday
//
// Multi-word members are written with '_' between words and match the
// corresponding space-separated word sequence in utterances.

#ifndef GRAMLM_LEXICON_H_
#define GRAMLM_LEXICON_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "gramlm/types.h"

namespace gramlm {

class ClassLexicon {
 public:
  ClassLexicon() = default;

  static ClassLexicon Load(const std::filesystem::path& path);
  // `source` names the input in error messages.
  static ClassLexicon Parse(std::istream& in, std::string_view source);

  // Throws DataError if `tag` already exists, is empty, or any member is
  // already classed, reserved, or collides with a tag or plain word.
  void AddClass(const std::string& tag, const std::vector<TokenSeq>& members);

  // Registers words that belong to no class. Words that are already plain
  // are ignored; a classed word or tag is an error.
  void AddPlainWord(const Token& word);

  // `word` may be a single token or a space-joined multi-word member.
  std::optional<std::string> ClassOf(std::string_view word) const;
  // Throws DataError for an unknown tag.
  int ClassSize(std::string_view tag) const;
  bool IsClassTag(std::string_view tok) const {
    return classes_.find(tok) != classes_.end();
  }

  // Longest member starting at tokens[pos]; returns {length, tag}.
  std::optional<std::pair<size_t, std::string>> LongestMatch(
      std::span<const Token> tokens, size_t pos) const;

  size_t num_classes() const { return classes_.size(); }
  size_t num_classed_words() const { return member_class_.size(); }
  const std::map<std::string, std::set<TokenSeq>, std::less<>>& classes()
      const {
    return classes_;
  }
  const std::set<Token, std::less<>>& plain_words() const {
    return plain_words_;
  }
  // Tag → class size, for class-emission scoring.
  std::map<std::string, int> ClassSizes() const;

  // Same format Load() reads; classes and members in sorted order.
  void Save(std::ostream& out) const;

 private:
  std::map<std::string, std::set<TokenSeq>, std::less<>> classes_;
  // Space-joined member → tag.
  std::unordered_map<std::string, std::string> member_class_;
  // First word of every multi-word member → member lengths present.
  std::unordered_map<std::string, std::set<size_t>> multiword_heads_;
  std::set<Token, std::less<>> plain_words_;
};

using TokenId = std::int32_t;

// Dense interning of token strings. Ids are assigned in insertion order.
class Vocabulary {
 public:
  TokenId Intern(std::string_view tok);
  std::optional<TokenId> Find(std::string_view tok) const;
  const Token& Surface(TokenId id) const { return surfaces_.at(id); }
  size_t size() const { return surfaces_.size(); }
  const std::vector<Token>& surfaces() const { return surfaces_; }

 private:
  struct Hash {
    using is_transparent = void;
    size_t operator()(std::string_view s) const {
      return std::hash<std::string_view>{}(s);
    }
  };
  std::unordered_map<std::string, TokenId, Hash, std::equal_to<>> ids_;
  std::vector<Token> surfaces_;
};

}  // namespace gramlm

#endif  // GRAMLM_LEXICON_H_
