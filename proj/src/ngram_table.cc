// ngram_table.cc
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

#include "gramlm/ngram_table.h"

#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace gramlm {

NGramTable::NGramTable(int order) : order_(order) {
  if (order < 1) {
    throw std::invalid_argument("n-gram order must be >= 1, got " +
                                std::to_string(order));
  }
}

NGramTable NGramTable::Extract(std::span<const NormalizedUtterance> corpus,
                               int order) {
  NGramTable table(order);
  TokenSeq padded;
  for (const auto& nu : corpus) {
    padded.assign(order - 1, Token(kSentenceStart));
    padded.insert(padded.end(), nu.tokens.begin(), nu.tokens.end());
    padded.emplace_back(kSentenceEnd);
    for (size_t i = 0; i < padded.size(); ++i) {
      for (int k = 1; k <= order && i + k <= padded.size(); ++k) {
        Gram g(padded.begin() + i, padded.begin() + i + k);
        table.Set(g, table.count(g) + 1);
      }
    }
  }
  return table;
}

Count NGramTable::count(const Gram& gram) const {
  auto it = counts_.find(gram);
  return it == counts_.end() ? Count(0) : it->second;
}

Count NGramTable::FollowerSum(const Gram& context) const {
  auto it = follower_sums_.find(context);
  return it == follower_sums_.end() ? Count(0) : it->second;
}

void NGramTable::Set(const Gram& gram, const Count& value) {
  Count old(0);
  auto it = counts_.find(gram);
  if (it != counts_.end()) old = it->second;
  if (value == Count(0)) {
    if (it != counts_.end()) counts_.erase(it);
  } else if (it != counts_.end()) {
    it->second = value;
  } else {
    counts_.emplace(gram, value);
  }
  if (gram.size() > 1) {
    Gram prefix(gram.begin(), gram.end() - 1);
    Count& fs = follower_sums_[prefix];
    fs += value - old;
    if (fs == Count(0)) follower_sums_.erase(prefix);
  }
}

void NGramTable::RepairChain(Gram context) {
  while (!context.empty()) {
    const Count needed = FollowerSum(context);
    if (count(context) >= needed) return;
    Set(context, needed);
    context.pop_back();
  }
}

void NGramTable::RepairAll() {
  // Highest-order contexts first so each repair sees final follower sums.
  for (int k = order_ - 1; k >= 1; --k) {
    std::vector<Gram> contexts;
    for (const auto& [ctx, sum] : follower_sums_) {
      if (static_cast<int>(ctx.size()) == k && count(ctx) < sum) {
        contexts.push_back(ctx);
      }
    }
    for (const Gram& ctx : contexts) RepairChain(ctx);
  }
}

void NGramTable::Inject(const Gram& gram, const Count& count) {
  if (gram.empty() || static_cast<int>(gram.size()) > order_) {
    throw std::invalid_argument("cannot inject a " +
                                std::to_string(gram.size()) +
                                "-gram into an order-" +
                                std::to_string(order_) + " table");
  }
  if (count < Count(0)) throw std::invalid_argument("negative injection count");
  if (count == Count(0)) return;
  Set(gram, this->count(gram) + count);
  RepairChain(Gram(gram.begin(), gram.end() - 1));
}

void NGramTable::Scale(const Count& factor, const Selector& selector) {
  if (factor <= Count(0)) {
    throw std::invalid_argument("scale factor must be positive, got " +
                                FormatCount(factor));
  }
  if (factor == Count(1)) return;
  std::vector<Gram> selected;
  for (const auto& [gram, c] : counts_) {
    if (selector(gram)) selected.push_back(gram);
  }
  for (const Gram& g : selected) Set(g, count(g) * factor);
  RepairAll();
}

void NGramTable::MergeFrom(const NGramTable& other) {
  if (other.order_ > order_) {
    throw std::invalid_argument("cannot merge an order-" +
                                std::to_string(other.order_) +
                                " table into order " + std::to_string(order_));
  }
  for (const auto& [gram, c] : other.counts_) Set(gram, count(gram) + c);
  RepairAll();
}

std::vector<std::pair<Gram, Count>> NGramTable::GramsOfOrder(int k) const {
  std::vector<std::pair<Gram, Count>> out;
  for (const auto& [gram, c] : counts_) {
    if (static_cast<int>(gram.size()) == k) out.emplace_back(gram, c);
  }
  return out;
}

bool NGramTable::ValidateClosure(std::string* why) const {
  auto fail = [&](std::string msg) {
    if (why) *why = std::move(msg);
    return false;
  };
  std::map<Gram, Count> sums;
  for (const auto& [gram, c] : counts_) {
    if (c <= Count(0)) return fail("non-positive count for '" + Join(gram) + "'");
    if (static_cast<int>(gram.size()) > order_) {
      return fail("gram '" + Join(gram) + "' exceeds order");
    }
    if (gram.size() > 1) sums[Gram(gram.begin(), gram.end() - 1)] += c;
  }
  for (const auto& [ctx, sum] : sums) {
    if (count(ctx) < sum) {
      return fail("context '" + Join(ctx) + "' has count " +
                  FormatCount(count(ctx)) + " < follower sum " +
                  FormatCount(sum));
    }
  }
  return true;
}

void NGramTable::Write(std::ostream& out) const {
  out << "#order\t" << order_ << '\n';
  for (const auto& [gram, c] : counts_) {
    out << FormatCount(c) << '\t' << Join(gram) << '\n';
  }
}

void NGramTable::Save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  Write(out);
}

NGramTable NGramTable::Read(std::istream& in, std::string_view source) {
  std::string line;
  int lineno = 1;
  if (!std::getline(in, line) || line.rfind("#order\t", 0) != 0) {
    throw DataError(std::string(source) + ":1: missing '#order' header");
  }
  int order = 0;
  try {
    order = std::stoi(line.substr(7));
  } catch (const std::exception&) {
    throw DataError(std::string(source) + ":1: bad order");
  }
  if (order < 1) throw DataError(std::string(source) + ":1: bad order");
  NGramTable table(order);
  while (std::getline(in, line)) {
    ++lineno;
    const std::string where = std::string(source) + ":" + std::to_string(lineno);
    if (line.empty()) continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos) throw DataError(where + ": missing tab");
    Count c;
    try {
      c = ParseCount(std::string_view(line).substr(0, tab));
    } catch (const DataError& e) {
      throw DataError(where + ": " + e.what());
    }
    Gram gram = SplitWhitespace(std::string_view(line).substr(tab + 1));
    if (gram.empty() || static_cast<int>(gram.size()) > order || c <= Count(0)) {
      throw DataError(where + ": invalid entry");
    }
    if (table.contains(gram)) throw DataError(where + ": duplicate gram");
    table.Set(gram, c);
  }
  std::string why;
  if (!table.ValidateClosure(&why)) {
    throw DataError(std::string(source) + ": " + why);
  }
  return table;
}

NGramTable NGramTable::Load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  return Read(in, path.string());
}

}  // namespace gramlm
