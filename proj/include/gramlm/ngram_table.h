// ngram_table.h
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
// Exact n-gram counts of orders 1..n with context closure.
//
// Closure: for every context c (a stored gram of order < n),
//
//   count(c) >= sum_w count(c w)
//
// Grams extracted from sentences satisfy this automatically. Grams added
// artificially (grammar injection, balance-factor scaling) do not, so every
// mutation raises the affected prefixes to the smallest count that restores
// the inequality.
//
// Text format: a header line `#order<TAB>n`, then one `count<TAB>tok ... tok`
// line per gram, sorted lexicographically by token sequence.

#ifndef GRAMLM_NGRAM_TABLE_H_
#define GRAMLM_NGRAM_TABLE_H_

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gramlm/normalize.h"
#include "gramlm/types.h"

namespace gramlm {

class NGramTable {
 public:
  using Selector = std::function<bool(const Gram&)>;

  // Throws std::invalid_argument if order < 1.
  explicit NGramTable(int order);

  // Pads each utterance with order-1 `<s>` and one `</s>`, then counts every
  // k-gram of the padded sequence for k = 1..order.
  static NGramTable Extract(std::span<const NormalizedUtterance> corpus,
                            int order);

  // Adds `count` to `gram` and repairs its prefixes. A zero count is a no-op.
  // Throws std::invalid_argument if the gram is empty, longer than order(),
  // or count is negative.
  void Inject(const Gram& gram, const Count& count);

  // Multiplies the counts of every selected gram by `factor`, then repairs
  // closure. Throws std::invalid_argument if factor <= 0.
  void Scale(const Count& factor, const Selector& selector);

  // Pointwise addition, then one closure repair pass.
  void MergeFrom(const NGramTable& other);

  int order() const { return order_; }
  bool empty() const { return counts_.empty(); }
  size_t size() const { return counts_.size(); }
  Count count(const Gram& gram) const;
  bool contains(const Gram& gram) const { return counts_.count(gram) > 0; }
  // Sum of count(context w) over all stored w.
  Count FollowerSum(const Gram& context) const;

  const std::map<Gram, Count>& entries() const { return counts_; }
  // All stored grams of exactly `k` tokens, in sorted order.
  std::vector<std::pair<Gram, Count>> GramsOfOrder(int k) const;

  // Checks the closure inequality for every context and that all counts are
  // positive. On failure fills `why` (if given) and returns false.
  bool ValidateClosure(std::string* why = nullptr) const;

  void Write(std::ostream& out) const;
  void Save(const std::filesystem::path& path) const;
  // Throws DataError on malformed input or a table that violates closure.
  static NGramTable Read(std::istream& in, std::string_view source = "<table>");
  static NGramTable Load(const std::filesystem::path& path);

  friend bool operator==(const NGramTable& a, const NGramTable& b) {
    return a.order_ == b.order_ && a.counts_ == b.counts_;
  }

 private:
  void Set(const Gram& gram, const Count& value);
  // Raises `context` and then its prefixes until closure holds along the
  // chain. Stops at the first prefix that already satisfies it.
  void RepairChain(Gram context);
  void RepairAll();

  int order_;
  std::map<Gram, Count> counts_;
  // context → sum of the counts of its one-token extensions.
  std::map<Gram, Count> follower_sums_;
};

}  // namespace gramlm

#endif  // GRAMLM_NGRAM_TABLE_H_
