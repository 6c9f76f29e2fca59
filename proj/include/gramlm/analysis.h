// analysis.h
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
// Corpus studies over normalized utterances: NU coverage curves, partial
// training-set perplexity sweeps, unseen-NU splits, frequent-NU saturation
// and frequency overlap between training and test NUs. All results are
// plain data with CSV writers; formatting is fixed-precision so outputs are
// byte-identical across runs.

#ifndef GRAMLM_ANALYSIS_H_
#define GRAMLM_ANALYSIS_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <vector>

#include "gramlm/corpus.h"
#include "gramlm/lexicon.h"
#include "gramlm/normalize.h"

namespace gramlm {

// Distinct NUs by descending frequency, ties in lexicographic NU order.
std::vector<NormalizedUtterance> RankNus(
    std::span<const NormalizedUtterance> corpus);

struct CoveragePoint {
  size_t rank = 0;
  // Fraction of the measured corpus whose NU is among the top `rank`.
  double coverage = 0.0;
};

using CoverageCurve = std::vector<CoveragePoint>;

// One point per distinct NU of the ranking corpus. Throws
// std::invalid_argument if the ranking corpus is empty.
CoverageCurve ComputeCoverage(std::span<const NormalizedUtterance> ranking,
                              std::span<const NormalizedUtterance> measured);

struct SweepRow {
  size_t size = 0;
  RequestGroup group = RequestGroup::kOther;
  // Perplexity over class tokens, and with uniform class emission added.
  double pp_class = 0.0;
  double pp_word = 0.0;
  size_t test_utterances = 0;
};

// Trains on each corpus prefix in `sizes` and scores every request group
// present in `test`. Sizes must be ascending and within the corpus
// (std::invalid_argument otherwise). Rows are ordered by size, then group.
std::vector<SweepRow> PartialTrainingSweep(const LabeledCorpus& corpus,
                                           std::span<const size_t> sizes,
                                           const LabeledCorpus& test,
                                           const ClassLexicon& lexicon,
                                           int order);

struct UnseenSplit {
  LabeledCorpus seen;
  LabeledCorpus unseen;
  size_t seen_types = 0;
  size_t unseen_types = 0;
};

// A test utterance is unseen iff its NU never occurs in `train`.
UnseenSplit SplitUnseen(const LabeledCorpus& train, const LabeledCorpus& test);

struct SaturationRow {
  RequestGroup group = RequestGroup::kOther;
  // NUs of this group occurring more than min_count times in the whole
  // corpus.
  size_t frequent_total = 0;
  // Per size: how many of them occur in the corpus prefix.
  std::vector<size_t> present;
};

struct SaturationTable {
  std::vector<size_t> sizes;
  std::vector<SaturationRow> rows;
};

SaturationTable ComputeSaturation(const LabeledCorpus& corpus,
                                  std::span<const size_t> sizes,
                                  int min_count = 3);

// Per group: fraction of distinct test NUs that are training NUs whose
// relative frequency in the whole training corpus exceeds `threshold`.
// Groups without test utterances are omitted.
std::map<RequestGroup, double> FrequencyOverlap(const LabeledCorpus& train,
                                                const LabeledCorpus& test,
                                                double threshold = 0.001);

// Distinct NUs occurring exactly once.
size_t SingletonCount(std::span<const NormalizedUtterance> corpus);

// rank, train_coverage, test_coverage; `train` and `test` must come from
// the same ranking.
void WriteCoverageCsv(std::ostream& out, const CoverageCurve& train,
                      const CoverageCurve& test, char sep = ',');
void WriteSweepCsv(std::ostream& out, const std::vector<SweepRow>& rows,
                   char sep = ',');
void WriteSaturationCsv(std::ostream& out, const SaturationTable& table,
                        char sep = ',');
void WriteOverlapCsv(std::ostream& out,
                     const std::map<RequestGroup, double>& overlap,
                     char sep = ',');

}  // namespace gramlm

#endif  // GRAMLM_ANALYSIS_H_
