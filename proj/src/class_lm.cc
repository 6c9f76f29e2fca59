// class_lm.cc
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

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numbers>
#include <ostream>
#include <stdexcept>

namespace gramlm {
namespace {

constexpr double kLog10Zero = -99.0;
constexpr std::string_view kVersionPrefix = "# gramlm model ";

std::string FormatDouble(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

double ParseDouble(std::string_view s, const std::string& where) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw DataError(where + ": bad number '" + std::string(s) + "'");
  }
  return v;
}

struct ContextStats {
  Count mass{0};
  int types = 0;
};

}  // namespace

ClassNGramLM ClassNGramLM::Train(const NGramTable& table,
                                 const ClassLexicon& lexicon) {
  if (table.empty()) throw DataError("cannot train on an empty n-gram table");
  std::string why;
  if (!table.ValidateClosure(&why)) {
    throw DataError("n-gram table violates context closure: " + why);
  }

  ClassNGramLM lm;
  lm.order_ = table.order();
  lm.start_id_ = lm.vocab_.Intern(kSentenceStart);
  lm.end_id_ = lm.vocab_.Intern(kSentenceEnd);
  lm.unk_id_ = lm.vocab_.Intern(kUnknown);
  for (const auto& [tag, members] : lexicon.classes()) lm.vocab_.Intern(tag);
  for (const auto& w : lexicon.plain_words()) lm.vocab_.Intern(w);
  for (const auto& [gram, c] : table.entries()) {
    for (const auto& tok : gram) lm.vocab_.Intern(tok);
  }
  lm.class_sizes_ = lexicon.ClassSizes();
  lm.entries_.assign(lm.order_, EntryMap{});

  // Grams that predict a real token, grouped by order, and follower stats
  // of their contexts. Grams ending in <s> exist only as padding contexts.
  std::vector<std::vector<std::pair<IdGram, Count>>> grams(lm.order_);
  std::vector<std::unordered_map<IdGram, ContextStats, IdGramHash>> stats(
      lm.order_);
  for (const auto& [gram, c] : table.entries()) {
    if (gram.back() == kSentenceStart) continue;
    IdGram ids;
    ids.reserve(gram.size());
    for (const auto& tok : gram) ids.push_back(*lm.vocab_.Find(tok));
    IdGram ctx(ids.begin(), ids.end() - 1);
    ContextStats& s = stats[ctx.size()][ctx];
    s.mass += c;
    ++s.types;
    grams[gram.size() - 1].emplace_back(std::move(ids), c);
  }

  // Unigrams: interpolate with uniform over the predicted vocabulary.
  const ContextStats& root = stats[0][IdGram{}];
  if (root.types == 0) throw DataError("n-gram table has no unigram counts");
  const double predicted = static_cast<double>(lm.vocab_.size() - 1);
  const double root_mass = ToDouble(root.mass);
  std::vector<double> unigram_counts(lm.vocab_.size(), 0.0);
  for (const auto& [ids, c] : grams[0]) unigram_counts[ids[0]] = ToDouble(c);
  for (TokenId id = 0; id < static_cast<TokenId>(lm.vocab_.size()); ++id) {
    Entry e;
    if (id == lm.start_id_) {
      e.log10_prob = kLog10Zero;
    } else {
      e.log10_prob = std::log10((unigram_counts[id] + root.types / predicted) /
                                (root_mass + root.types));
    }
    lm.entries_[0].emplace(IdGram{id}, e);
  }

  for (int k = 2; k <= lm.order_; ++k) {
    EntryMap& lower = lm.entries_[k - 2];
    for (const auto& [ctx, s] : stats[k - 1]) {
      auto [it, inserted] = lower.try_emplace(ctx);
      if (inserted) it->second.log10_prob = kLog10Zero;
      const double mass = ToDouble(s.mass);
      it->second.is_context = true;
      it->second.log10_bow = std::log10(s.types / (mass + s.types));
    }
    for (const auto& [ids, c] : grams[k - 1]) {
      IdGram ctx(ids.begin(), ids.end() - 1);
      const ContextStats& s = stats[k - 1].at(ctx);
      const double lower_prob = std::pow(
          10.0, lm.Log10Prob(std::span(ctx).subspan(1), ids.back()));
      const double p = (ToDouble(c) + s.types * lower_prob) /
                       (ToDouble(s.mass) + s.types);
      lm.entries_[k - 1].emplace(ids, Entry{std::log10(p), 0.0, false});
    }
  }
  lm.BuildEmission();
  return lm;
}

void ClassNGramLM::BuildEmission() {
  emission_.assign(vocab_.size(), 0.0);
  for (const auto& [tag, size] : class_sizes_) {
    if (auto id = vocab_.Find(tag)) emission_[*id] = -std::log(double(size));
  }
}

double ClassNGramLM::Log10Prob(std::span<const TokenId> context,
                               TokenId word) const {
  if (static_cast<int>(context.size()) > order_ - 1) {
    context = context.last(order_ - 1);
  }
  double bow = 0.0;
  IdGram key;
  key.reserve(order_);
  for (size_t start = 0; start <= context.size(); ++start) {
    key.assign(context.begin() + start, context.end());
    key.push_back(word);
    const EntryMap& m = entries_[key.size() - 1];
    if (auto it = m.find(key); it != m.end()) {
      return bow + it->second.log10_prob;
    }
    if (start < context.size()) {
      key.pop_back();
      const EntryMap& cm = entries_[key.size() - 1];
      if (auto it = cm.find(key); it != cm.end() && it->second.is_context) {
        bow += it->second.log10_bow;
      }
    }
  }
  throw std::logic_error("token id " + std::to_string(word) +
                         " has no unigram entry");
}

TokenId ClassNGramLM::IdOrUnk(std::string_view tok, bool* oov) const {
  auto id = vocab_.Find(tok);
  if (!id || *id == start_id_) {
    if (oov) *oov = true;
    return unk_id_;
  }
  if (oov) *oov = false;
  return *id;
}

double ClassNGramLM::LogProb(const NormalizedUtterance& nu, bool emission,
                             std::int64_t* oov) const {
  std::vector<TokenId> history(order_ - 1, start_id_);
  history.reserve(order_ - 1 + nu.size() + 1);
  double log10_total = 0.0;
  double emission_total = 0.0;
  for (const auto& tok : nu.tokens) {
    bool unknown = false;
    TokenId id = IdOrUnk(tok, &unknown);
    if (unknown && oov) ++*oov;
    log10_total += Log10Prob(history, id);
    if (emission) emission_total += emission_[id];
    history.push_back(id);
  }
  log10_total += Log10Prob(history, end_id_);
  return log10_total * std::numbers::ln10 + emission_total;
}

PerplexityReport ClassNGramLM::Perplexity(
    std::span<const NormalizedUtterance> corpus, bool emission) const {
  if (corpus.empty()) {
    throw std::invalid_argument("perplexity of an empty corpus");
  }
  PerplexityReport r;
  for (const auto& nu : corpus) {
    r.log_prob_total += LogProb(nu, emission, &r.oov_count);
    r.token_count += static_cast<std::int64_t>(nu.size()) + 1;
  }
  r.utterance_count = static_cast<std::int64_t>(corpus.size());
  r.pp = std::exp(-r.log_prob_total / static_cast<double>(r.token_count));
  return r;
}

double ClassNGramLM::Prob(std::span<const Token> context,
                          std::string_view token) const {
  std::vector<TokenId> ids;
  ids.reserve(context.size());
  for (const auto& tok : context) {
    auto id = vocab_.Find(tok);
    ids.push_back(id ? *id : unk_id_);
  }
  return std::pow(10.0, Log10Prob(ids, IdOrUnk(token, nullptr)));
}

std::vector<Token> ClassNGramLM::PredictedTokens() const {
  std::vector<Token> out;
  for (TokenId id = 0; id < static_cast<TokenId>(vocab_.size()); ++id) {
    if (id != start_id_) out.push_back(vocab_.Surface(id));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Gram> ClassNGramLM::Contexts() const {
  std::vector<Gram> out{Gram{}};
  for (int k = 1; k < order_; ++k) {
    for (const auto& [ids, e] : entries_[k - 1]) {
      if (!e.is_context) continue;
      Gram g;
      for (TokenId id : ids) g.push_back(vocab_.Surface(id));
      out.push_back(std::move(g));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

void ClassNGramLM::Export(std::ostream& out) const {
  out << kVersionPrefix << kFormatVersion << "\n\n\\data\\\n";
  for (int k = 1; k <= order_; ++k) {
    out << "ngram " << k << '=' << entries_[k - 1].size() << '\n';
  }
  for (int k = 1; k <= order_; ++k) {
    std::vector<std::pair<Gram, const Entry*>> lines;
    lines.reserve(entries_[k - 1].size());
    for (const auto& [ids, e] : entries_[k - 1]) {
      Gram g;
      for (TokenId id : ids) g.push_back(vocab_.Surface(id));
      lines.emplace_back(std::move(g), &e);
    }
    std::sort(lines.begin(), lines.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    out << "\n\\" << k << "-grams:\n";
    for (const auto& [g, e] : lines) {
      out << FormatDouble(e->log10_prob) << '\t' << Join(g);
      if (e->is_context) out << '\t' << FormatDouble(e->log10_bow);
      out << '\n';
    }
  }
  out << "\n\\classes:\n";
  for (const auto& [tag, size] : class_sizes_) {
    out << tag << '\t' << size << '\n';
  }
  out << "\n\\end\\\n";
}

void ClassNGramLM::Save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  Export(out);
}

ClassNGramLM ClassNGramLM::Import(std::istream& in, std::string_view source) {
  ClassNGramLM lm;
  std::string line;
  int lineno = 0;
  auto where = [&] { return std::string(source) + ":" + std::to_string(lineno); };

  // Header up to \data\.
  bool seen_data = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.rfind(kVersionPrefix, 0) == 0) {
      const std::string v = line.substr(kVersionPrefix.size());
      if (v != std::to_string(kFormatVersion)) {
        throw DataError(where() + ": model format version mismatch (file " +
                        v + ", expected " + std::to_string(kFormatVersion) +
                        ")");
      }
    }
    if (line == "\\data\\") {
      seen_data = true;
      break;
    }
  }
  if (!seen_data) throw DataError(std::string(source) + ": missing \\data\\");

  std::vector<size_t> declared;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) break;
    if (line.rfind("ngram ", 0) != 0) throw DataError(where() + ": expected 'ngram k=N'");
    auto eq = line.find('=');
    if (eq == std::string::npos) throw DataError(where() + ": expected 'ngram k=N'");
    const int k = static_cast<int>(ParseDouble(line.substr(6, eq - 6), where()));
    if (k != static_cast<int>(declared.size()) + 1) {
      throw DataError(where() + ": n-gram orders out of sequence");
    }
    declared.push_back(static_cast<size_t>(ParseDouble(line.substr(eq + 1), where())));
  }
  if (declared.empty()) throw DataError(where() + ": no n-gram counts");
  lm.order_ = static_cast<int>(declared.size());
  lm.entries_.assign(lm.order_, EntryMap{});

  // Read all grams as strings first so the vocabulary comes from the
  // unigram section.
  struct Raw {
    Gram gram;
    Entry entry;
  };
  std::vector<std::vector<Raw>> sections(lm.order_);
  int section = 0;
  bool in_classes = false;
  bool seen_end = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line == "\\end\\") {
      seen_end = true;
      break;
    }
    if (line == "\\classes:") {
      in_classes = true;
      section = 0;
      continue;
    }
    if (line.front() == '\\') {
      int k = 0;
      auto [ptr, ec] = std::from_chars(line.data() + 1, line.data() + line.size(), k);
      if (ec != std::errc() || std::string_view(ptr) != "-grams:" || k < 1 ||
          k > lm.order_) {
        throw DataError(where() + ": unexpected section '" + line + "'");
      }
      section = k;
      in_classes = false;
      continue;
    }
    std::vector<std::string_view> fields;
    std::string_view rest(line);
    while (true) {
      auto tab = rest.find('\t');
      fields.push_back(rest.substr(0, tab));
      if (tab == std::string_view::npos) break;
      rest.remove_prefix(tab + 1);
    }
    if (in_classes) {
      if (fields.size() != 2) throw DataError(where() + ": bad class line");
      lm.class_sizes_[std::string(fields[0])] =
          static_cast<int>(ParseDouble(fields[1], where()));
      continue;
    }
    if (section == 0) throw DataError(where() + ": entry outside any section");
    if (fields.size() < 2 || fields.size() > 3) {
      throw DataError(where() + ": expected 'log10prob<TAB>gram[<TAB>log10bow]'");
    }
    Raw raw;
    raw.gram = SplitWhitespace(fields[1]);
    if (static_cast<int>(raw.gram.size()) != section) {
      throw DataError(where() + ": gram length does not match section");
    }
    raw.entry.log10_prob = ParseDouble(fields[0], where());
    if (fields.size() == 3) {
      raw.entry.is_context = true;
      raw.entry.log10_bow = ParseDouble(fields[2], where());
    }
    sections[section - 1].push_back(std::move(raw));
  }
  if (!seen_end) throw DataError(std::string(source) + ": truncated model (no \\end\\)");
  for (int k = 1; k <= lm.order_; ++k) {
    if (sections[k - 1].size() != declared[k - 1]) {
      throw DataError(std::string(source) + ": declared " +
                      std::to_string(declared[k - 1]) + " " +
                      std::to_string(k) + "-grams, found " +
                      std::to_string(sections[k - 1].size()));
    }
  }

  for (const Raw& raw : sections[0]) lm.vocab_.Intern(raw.gram[0]);
  for (auto tok : {kSentenceStart, kSentenceEnd, kUnknown}) {
    if (!lm.vocab_.Find(tok)) {
      throw DataError(std::string(source) + ": missing unigram " + std::string(tok));
    }
  }
  lm.start_id_ = *lm.vocab_.Find(kSentenceStart);
  lm.end_id_ = *lm.vocab_.Find(kSentenceEnd);
  lm.unk_id_ = *lm.vocab_.Find(kUnknown);
  for (int k = 1; k <= lm.order_; ++k) {
    for (const Raw& raw : sections[k - 1]) {
      IdGram ids;
      for (const auto& tok : raw.gram) {
        auto id = lm.vocab_.Find(tok);
        if (!id) {
          throw DataError(std::string(source) + ": token '" + tok +
                          "' has no unigram entry");
        }
        ids.push_back(*id);
      }
      if (!lm.entries_[k - 1].emplace(std::move(ids), raw.entry).second) {
        throw DataError(std::string(source) + ": duplicate gram '" +
                        Join(raw.gram) + "'");
      }
    }
  }
  lm.BuildEmission();
  return lm;
}

ClassNGramLM ClassNGramLM::Load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open model " + path.string());
  return Import(in, path.string());
}

}  // namespace gramlm
