// lexicon.cc
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

#include "gramlm/lexicon.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>

namespace gramlm {
namespace {

std::string Lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string_view Trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

TokenSeq SplitMember(std::string_view member) {
  TokenSeq words;
  size_t start = 0;
  while (start <= member.size()) {
    size_t end = member.find('_', start);
    if (end == std::string_view::npos) end = member.size();
    if (end > start) words.push_back(Lower(member.substr(start, end - start)));
    start = end + 1;
  }
  return words;
}

}  // namespace

ClassLexicon ClassLexicon::Load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open lexicon " + path.string());
  return Parse(in, path.string());
}

ClassLexicon ClassLexicon::Parse(std::istream& in, std::string_view source) {
  ClassLexicon lex;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view body = Trim(line);
    if (body.empty() || body.front() == '#') continue;
    const std::string where = std::string(source) + ":" + std::to_string(lineno);
    size_t colon = body.find(':');
    if (colon == std::string_view::npos) {
      throw DataError(where + ": expected 'TAG: member ...'");
    }
    std::string tag(Trim(body.substr(0, colon)));
    if (tag.empty() || SplitWhitespace(tag).size() != 1) {
      throw DataError(where + ": malformed class tag '" + tag + "'");
    }
    std::vector<TokenSeq> members;
    for (const Token& m : SplitWhitespace(body.substr(colon + 1))) {
      TokenSeq words = SplitMember(m);
      if (words.empty()) throw DataError(where + ": empty member '" + m + "'");
      members.push_back(std::move(words));
    }
    try {
      lex.AddClass(tag, members);
    } catch (const DataError& e) {
      throw DataError(where + ": " + e.what());
    }
  }
  return lex;
}

void ClassLexicon::AddClass(const std::string& tag,
                            const std::vector<TokenSeq>& members) {
  if (IsReserved(tag)) throw DataError("reserved tag '" + tag + "' used as class");
  if (classes_.count(tag)) throw DataError("class " + tag + " defined twice");
  if (members.empty()) throw DataError("class " + tag + " is empty");
  if (member_class_.count(tag) || plain_words_.count(tag)) {
    throw DataError("class tag " + tag + " is also a word");
  }
  std::set<TokenSeq> set;
  for (const TokenSeq& m : members) {
    if (m.empty()) throw DataError("class " + tag + " has an empty member");
    const std::string key = Join(m);
    for (const Token& w : m) {
      if (IsReserved(w)) {
        throw DataError("reserved tag '" + w + "' listed in class " + tag);
      }
    }
    if (auto it = member_class_.find(key); it != member_class_.end()) {
      if (it->second == tag) continue;
      throw DataError("word '" + key + "' is in both " + it->second + " and " +
                      tag);
    }
    if (set.count(m)) continue;
    if (classes_.count(key) || key == tag) {
      throw DataError("word '" + key + "' collides with a class tag");
    }
    if (plain_words_.count(key)) {
      throw DataError("word '" + key + "' is already a plain word");
    }
    set.insert(m);
  }
  for (const TokenSeq& m : set) {
    member_class_.emplace(Join(m), tag);
    if (m.size() > 1) multiword_heads_[m.front()].insert(m.size());
  }
  classes_.emplace(tag, std::move(set));
}

void ClassLexicon::AddPlainWord(const Token& word) {
  if (IsReserved(word) || classes_.count(word) || member_class_.count(word)) {
    throw DataError("'" + word + "' cannot be a plain word");
  }
  plain_words_.insert(word);
}

std::optional<std::string> ClassLexicon::ClassOf(std::string_view word) const {
  auto it = member_class_.find(std::string(word));
  if (it == member_class_.end()) return std::nullopt;
  return it->second;
}

int ClassLexicon::ClassSize(std::string_view tag) const {
  auto it = classes_.find(tag);
  if (it == classes_.end()) {
    throw DataError("unknown class tag '" + std::string(tag) + "'");
  }
  return static_cast<int>(it->second.size());
}

std::optional<std::pair<size_t, std::string>> ClassLexicon::LongestMatch(
    std::span<const Token> tokens, size_t pos) const {
  if (pos >= tokens.size()) return std::nullopt;
  if (auto heads = multiword_heads_.find(tokens[pos]);
      heads != multiword_heads_.end()) {
    for (auto len = heads->second.rbegin(); len != heads->second.rend(); ++len) {
      if (pos + *len > tokens.size()) continue;
      auto it = member_class_.find(Join(tokens.subspan(pos, *len)));
      if (it != member_class_.end()) return std::pair{*len, it->second};
    }
  }
  auto it = member_class_.find(tokens[pos]);
  if (it == member_class_.end()) return std::nullopt;
  return std::pair{size_t{1}, it->second};
}

std::map<std::string, int> ClassLexicon::ClassSizes() const {
  std::map<std::string, int> sizes;
  for (const auto& [tag, members] : classes_) {
    sizes.emplace(tag, static_cast<int>(members.size()));
  }
  return sizes;
}

void ClassLexicon::Save(std::ostream& out) const {
  for (const auto& [tag, members] : classes_) {
    out << tag << ':';
    for (const TokenSeq& m : members) out << ' ' << Join(m, "_");
    out << '\n';
  }
}

TokenId Vocabulary::Intern(std::string_view tok) {
  if (auto it = ids_.find(tok); it != ids_.end()) return it->second;
  const auto id = static_cast<TokenId>(surfaces_.size());
  surfaces_.emplace_back(tok);
  ids_.emplace(surfaces_.back(), id);
  return id;
}

std::optional<TokenId> Vocabulary::Find(std::string_view tok) const {
  auto it = ids_.find(tok);
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

}  // namespace gramlm
