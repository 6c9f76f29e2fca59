// grammar.cc
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

#include "gramlm/grammar.h"

#include <cctype>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace gramlm {
namespace {

enum class Lex { kName, kString, kArrow, kBar, kSemi, kEnd };

struct LexToken {
  Lex kind;
  std::string text;
  int line;
};

bool IsNameChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

std::vector<LexToken> Scan(std::string_view text, std::string_view source) {
  std::vector<LexToken> out;
  int line = 1;
  size_t i = 0;
  auto error = [&](const std::string& msg) {
    return DataError(std::string(source) + ":" + std::to_string(line) + ": " +
                     msg);
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == '\n') {
      ++line;
      ++i;
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
    } else if (c == '"') {
      std::string s;
      ++i;
      while (i < text.size() && text[i] != '"') {
        if (text[i] == '\n') throw error("unterminated string");
        s += text[i++];
      }
      if (i == text.size()) throw error("unterminated string");
      ++i;
      out.push_back({Lex::kString, std::move(s), line});
    } else if (text.substr(i, 2) == "->") {
      out.push_back({Lex::kArrow, "->", line});
      i += 2;
    } else if (text.substr(i, 3) == "\xE2\x86\x92") {  // U+2192
      out.push_back({Lex::kArrow, "->", line});
      i += 3;
    } else if (c == '|') {
      out.push_back({Lex::kBar, "|", line});
      ++i;
    } else if (c == ';') {
      out.push_back({Lex::kSemi, ";", line});
      ++i;
    } else if (IsNameChar(c)) {
      size_t j = i;
      while (j < text.size() && IsNameChar(text[j])) ++j;
      out.push_back({Lex::kName, std::string(text.substr(i, j - i)), line});
      i = j;
    } else {
      throw error(std::string("unexpected character '") + c + "'");
    }
  }
  out.push_back({Lex::kEnd, "", line});
  return out;
}

void FindRecursion(Grammar& g) {
  std::map<std::string, std::set<std::string>> edges;
  for (const auto& [name, alts] : g.productions) {
    for (const auto& alt : alts) {
      for (const auto& sym : alt) {
        if (!sym.terminal) edges[name].insert(sym.text);
      }
    }
  }
  for (const auto& [name, alts] : g.productions) {
    std::set<std::string> seen;
    std::vector<std::string> stack(edges[name].begin(), edges[name].end());
    while (!stack.empty()) {
      std::string n = std::move(stack.back());
      stack.pop_back();
      if (n == name) {
        g.recursive.insert(name);
        break;
      }
      if (!seen.insert(n).second) continue;
      for (const auto& m : edges[n]) stack.push_back(m);
    }
  }
}

using SentenceBag = std::set<TokenSeq>;

class Expander {
 public:
  Expander(const Grammar& g, int max_depth, size_t max_sentences)
      : g_(g), max_depth_(max_depth), cap_(max_sentences) {}

  const SentenceBag& Expand(const std::string& nt, int depth) {
    auto key = std::make_pair(nt, depth);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    SentenceBag result;
    if (depth > max_depth_) {
      truncated_ = true;
    } else {
      for (const Alternative& alt : g_.productions.at(nt)) {
        SentenceBag partial{TokenSeq{}};
        for (const GrammarSymbol& sym : alt) {
          if (partial.empty()) break;
          if (sym.terminal) {
            SentenceBag next;
            const TokenSeq words = SplitWhitespace(sym.text);
            for (TokenSeq s : partial) {
              s.insert(s.end(), words.begin(), words.end());
              next.insert(std::move(s));
            }
            partial = std::move(next);
          } else {
            partial = Product(partial, Expand(sym.text, depth + 1));
          }
        }
        for (const auto& s : partial) Insert(result, s);
      }
    }
    return memo_.emplace(key, std::move(result)).first->second;
  }

  bool truncated() const { return truncated_; }

 private:
  void Insert(SentenceBag& bag, const TokenSeq& s) {
    if (bag.size() == cap_) {
      if (!(s < *bag.rbegin())) {
        if (!bag.count(s)) truncated_ = true;
        return;
      }
      if (bag.count(s)) return;
      bag.erase(std::prev(bag.end()));
      truncated_ = true;
    }
    bag.insert(s);
  }

  SentenceBag Product(const SentenceBag& left, const SentenceBag& right) {
    SentenceBag out;
    // Work budget so a recursive grammar with huge fan-out still halts.
    size_t budget = 64 * cap_;
    for (const auto& a : left) {
      for (const auto& b : right) {
        if (budget-- == 0) {
          truncated_ = true;
          return out;
        }
        TokenSeq s = a;
        s.insert(s.end(), b.begin(), b.end());
        Insert(out, s);
      }
    }
    return out;
  }

  const Grammar& g_;
  int max_depth_;
  size_t cap_;
  bool truncated_ = false;
  std::map<std::pair<std::string, int>, SentenceBag> memo_;
};

}  // namespace

Grammar Grammar::Parse(std::string_view text, std::string_view source) {
  const std::vector<LexToken> toks = Scan(text, source);
  Grammar g;
  std::map<std::string, int> first_use;
  size_t i = 0;
  auto error = [&](int line, const std::string& msg) {
    return DataError(std::string(source) + ":" + std::to_string(line) + ": " +
                     msg);
  };
  auto expect = [&](Lex kind, const char* what) {
    if (toks[i].kind != kind) {
      throw error(toks[i].line, std::string("expected ") + what);
    }
    return toks[i++];
  };
  std::string first_rule;
  while (toks[i].kind != Lex::kEnd) {
    const LexToken head = expect(Lex::kName, "rule name or 'start'");
    if (head.text == "start" && toks[i].kind == Lex::kName) {
      if (!g.start.empty()) throw error(head.line, "start declared twice");
      g.start = toks[i++].text;
      first_use.emplace(g.start, head.line);
      expect(Lex::kSemi, "';' after start declaration");
      continue;
    }
    expect(Lex::kArrow, "'->'");
    if (first_rule.empty()) first_rule = head.text;
    auto& alts = g.productions[head.text];
    Alternative alt;
    while (true) {
      const LexToken& t = toks[i];
      if (t.kind == Lex::kString) {
        alt.push_back({true, t.text});
        ++i;
      } else if (t.kind == Lex::kName) {
        alt.push_back({false, t.text});
        first_use.emplace(t.text, t.line);
        ++i;
      } else if (t.kind == Lex::kBar) {
        alts.push_back(std::move(alt));
        alt.clear();
        ++i;
      } else if (t.kind == Lex::kSemi) {
        alts.push_back(std::move(alt));
        ++i;
        break;
      } else {
        throw error(t.line, "expected terminal, nonterminal, '|' or ';'");
      }
    }
  }
  if (g.start.empty()) g.start = first_rule;
  if (g.start.empty()) throw DataError(std::string(source) + ": grammar has no rules");
  for (const auto& [name, line] : first_use) {
    if (!g.productions.count(name)) {
      throw error(line, "undefined nonterminal '" + name + "'");
    }
  }
  FindRecursion(g);
  return g;
}

Grammar Grammar::Load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open grammar " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return Parse(buf.str(), path.string());
}

std::vector<NormalizedUtterance> SentenceSet::AsUtterances() const {
  std::vector<NormalizedUtterance> out;
  out.reserve(sentences.size());
  for (const auto& s : sentences) out.push_back({s});
  return out;
}

void SentenceSet::Write(std::ostream& out) const {
  for (const auto& s : sentences) out << Join(s) << '\n';
}

SentenceSet Generate(const Grammar& grammar, int max_depth,
                     size_t max_sentences) {
  if (max_depth < 1 || max_sentences < 1) {
    throw std::invalid_argument("generation bounds must be positive");
  }
  Expander expander(grammar, max_depth, max_sentences);
  SentenceSet out;
  out.sentences = expander.Expand(grammar.start, 1);
  out.truncated = expander.truncated();
  return out;
}

double NuCoverage(const SentenceSet& sentences,
                  const std::set<NormalizedUtterance>& nus) {
  if (nus.empty()) return 1.0;
  size_t covered = 0;
  for (const auto& nu : nus) {
    if (sentences.sentences.count(nu.tokens)) ++covered;
  }
  return static_cast<double>(covered) / static_cast<double>(nus.size());
}

}  // namespace gramlm
