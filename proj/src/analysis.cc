// analysis.cc
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

#include "gramlm/analysis.h"

#include <algorithm>
#include <cstdio>
#include <future>
#include <ostream>
#include <set>
#include <stdexcept>

#include "gramlm/class_lm.h"
#include "gramlm/ngram_table.h"

namespace gramlm {
namespace {

std::string Fixed(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

}  // namespace

std::vector<NormalizedUtterance> RankNus(
    std::span<const NormalizedUtterance> corpus) {
  const NuHistogram hist = CountNus(corpus);
  std::vector<std::pair<NormalizedUtterance, std::int64_t>> ranked(
      hist.begin(), hist.end());
  // hist is already in lexicographic order, so a stable sort on count
  // leaves ties lexicographic.
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  std::vector<NormalizedUtterance> out;
  out.reserve(ranked.size());
  for (auto& [nu, c] : ranked) out.push_back(std::move(nu));
  return out;
}

CoverageCurve ComputeCoverage(std::span<const NormalizedUtterance> ranking,
                              std::span<const NormalizedUtterance> measured) {
  if (ranking.empty()) {
    throw std::invalid_argument("coverage needs a non-empty ranking corpus");
  }
  const std::vector<NormalizedUtterance> ranked = RankNus(ranking);
  const NuHistogram measured_hist = CountNus(measured);
  CoverageCurve curve;
  curve.reserve(ranked.size());
  std::int64_t covered = 0;
  const double total = static_cast<double>(measured.size());
  for (size_t r = 0; r < ranked.size(); ++r) {
    if (auto it = measured_hist.find(ranked[r]); it != measured_hist.end()) {
      covered += it->second;
    }
    curve.push_back({r + 1, total == 0 ? 0.0 : double(covered) / total});
  }
  return curve;
}

std::vector<SweepRow> PartialTrainingSweep(const LabeledCorpus& corpus,
                                           std::span<const size_t> sizes,
                                           const LabeledCorpus& test,
                                           const ClassLexicon& lexicon,
                                           int order) {
  for (size_t i = 0; i < sizes.size(); ++i) {
    if (sizes[i] == 0 || sizes[i] > corpus.size()) {
      throw std::invalid_argument("training size " + std::to_string(sizes[i]) +
                                  " outside 1.." +
                                  std::to_string(corpus.size()));
    }
    if (i > 0 && sizes[i] < sizes[i - 1]) {
      throw std::invalid_argument("training sizes must be ascending");
    }
  }
  std::map<RequestGroup, std::vector<NormalizedUtterance>> by_group;
  for (const auto& u : test) by_group[u.group].push_back(u.nu);

  std::vector<std::future<std::vector<SweepRow>>> jobs;
  for (size_t size : sizes) {
    jobs.push_back(std::async(std::launch::async, [&, size] {
      const std::vector<NormalizedUtterance> train =
          Utterances(Prefix(corpus, size));
      const ClassNGramLM lm =
          ClassNGramLM::Train(NGramTable::Extract(train, order), lexicon);
      std::vector<SweepRow> rows;
      for (const auto& [group, utts] : by_group) {
        rows.push_back({size, group, lm.Perplexity(utts, false).pp,
                        lm.Perplexity(utts, true).pp, utts.size()});
      }
      return rows;
    }));
  }
  std::vector<SweepRow> out;
  for (auto& job : jobs) {
    auto rows = job.get();
    out.insert(out.end(), rows.begin(), rows.end());
  }
  return out;
}

UnseenSplit SplitUnseen(const LabeledCorpus& train, const LabeledCorpus& test) {
  std::set<NormalizedUtterance> known;
  for (const auto& u : train) known.insert(u.nu);
  UnseenSplit split;
  std::set<NormalizedUtterance> seen_types, unseen_types;
  for (const auto& u : test) {
    if (known.count(u.nu)) {
      split.seen.push_back(u);
      seen_types.insert(u.nu);
    } else {
      split.unseen.push_back(u);
      unseen_types.insert(u.nu);
    }
  }
  split.seen_types = seen_types.size();
  split.unseen_types = unseen_types.size();
  return split;
}

SaturationTable ComputeSaturation(const LabeledCorpus& corpus,
                                  std::span<const size_t> sizes,
                                  int min_count) {
  SaturationTable table;
  table.sizes.assign(sizes.begin(), sizes.end());
  std::map<RequestGroup, std::map<NormalizedUtterance, std::int64_t>> counts;
  for (const auto& u : corpus) ++counts[u.group][u.nu];
  for (const auto& [group, hist] : counts) {
    std::set<NormalizedUtterance> frequent;
    for (const auto& [nu, c] : hist) {
      if (c > min_count) frequent.insert(nu);
    }
    SaturationRow row;
    row.group = group;
    row.frequent_total = frequent.size();
    for (size_t size : sizes) {
      std::set<NormalizedUtterance> present;
      const size_t n = std::min(size, corpus.size());
      for (size_t i = 0; i < n; ++i) {
        if (corpus[i].group == group && frequent.count(corpus[i].nu)) {
          present.insert(corpus[i].nu);
        }
      }
      row.present.push_back(present.size());
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::map<RequestGroup, double> FrequencyOverlap(const LabeledCorpus& train,
                                                const LabeledCorpus& test,
                                                double threshold) {
  std::map<std::pair<RequestGroup, NormalizedUtterance>, std::int64_t> counts;
  for (const auto& u : train) ++counts[{u.group, u.nu}];
  std::set<std::pair<RequestGroup, NormalizedUtterance>> selected;
  const double total = static_cast<double>(train.size());
  for (const auto& [key, c] : counts) {
    if (total > 0 && double(c) / total > threshold) selected.insert(key);
  }
  std::map<RequestGroup, std::set<NormalizedUtterance>> test_types;
  for (const auto& u : test) test_types[u.group].insert(u.nu);
  std::map<RequestGroup, double> out;
  for (const auto& [group, types] : test_types) {
    size_t hit = 0;
    for (const auto& nu : types) hit += selected.count({group, nu});
    out[group] = double(hit) / double(types.size());
  }
  return out;
}

size_t SingletonCount(std::span<const NormalizedUtterance> corpus) {
  size_t n = 0;
  for (const auto& [nu, c] : CountNus(corpus)) n += (c == 1);
  return n;
}

void WriteCoverageCsv(std::ostream& out, const CoverageCurve& train,
                      const CoverageCurve& test, char sep) {
  out << "rank" << sep << "train_coverage" << sep << "test_coverage" << '\n';
  for (size_t i = 0; i < train.size(); ++i) {
    out << train[i].rank << sep << Fixed(train[i].coverage) << sep
        << (i < test.size() ? Fixed(test[i].coverage) : "") << '\n';
  }
}

void WriteSweepCsv(std::ostream& out, const std::vector<SweepRow>& rows,
                   char sep) {
  out << "size" << sep << "group" << sep << "test_utterances" << sep
      << "pp_class" << sep << "pp_word" << '\n';
  for (const auto& r : rows) {
    out << r.size << sep << GroupName(r.group) << sep << r.test_utterances
        << sep << Fixed(r.pp_class) << sep << Fixed(r.pp_word) << '\n';
  }
}

void WriteSaturationCsv(std::ostream& out, const SaturationTable& table,
                        char sep) {
  out << "group" << sep << "frequent_total";
  for (size_t s : table.sizes) out << sep << s;
  out << '\n';
  for (const auto& row : table.rows) {
    out << GroupName(row.group) << sep << row.frequent_total;
    for (size_t v : row.present) out << sep << v;
    out << '\n';
  }
}

void WriteOverlapCsv(std::ostream& out,
                     const std::map<RequestGroup, double>& overlap, char sep) {
  out << "group" << sep << "overlap" << '\n';
  for (const auto& [g, v] : overlap) {
    out << GroupName(g) << sep << Fixed(v) << '\n';
  }
}

}  // namespace gramlm
