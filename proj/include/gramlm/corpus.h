// corpus.h
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
// Corpus files. A plain corpus has one utterance per line; a labeled corpus
// has `group<TAB>utterance` per line where group is one of City, Date, Time,
// Other. Readers accept both: lines without a recognised group label are
// read as group Other. Line order is acquisition order and is preserved.

#ifndef GRAMLM_CORPUS_H_
#define GRAMLM_CORPUS_H_

#include <array>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gramlm/lexicon.h"
#include "gramlm/normalize.h"

namespace gramlm {

enum class RequestGroup { kCity, kDate, kTime, kOther };

inline constexpr std::array<RequestGroup, 4> kAllGroups = {
    RequestGroup::kCity, RequestGroup::kDate, RequestGroup::kTime,
    RequestGroup::kOther};

std::string_view GroupName(RequestGroup g);
std::optional<RequestGroup> ParseGroup(std::string_view name);

struct LabeledUtterance {
  RequestGroup group = RequestGroup::kOther;
  NormalizedUtterance nu;
};

using LabeledCorpus = std::vector<LabeledUtterance>;

struct RawLine {
  RequestGroup group = RequestGroup::kOther;
  bool labeled = false;
  std::string text;
};

std::vector<RawLine> ReadRawCorpus(const std::filesystem::path& path);
std::vector<RawLine> ParseRawCorpus(std::istream& in);

LabeledCorpus NormalizeCorpus(const ClassLexicon& lexicon,
                              std::span<const RawLine> lines);
LabeledCorpus ReadLabeledCorpus(const std::filesystem::path& path,
                                const ClassLexicon& lexicon);

std::vector<NormalizedUtterance> Utterances(const LabeledCorpus& corpus);
LabeledCorpus FilterGroup(const LabeledCorpus& corpus, RequestGroup g);
// First `n` utterances in acquisition order.
LabeledCorpus Prefix(const LabeledCorpus& corpus, size_t n);

void WriteLabeledCorpus(std::ostream& out, const LabeledCorpus& corpus);

}  // namespace gramlm

#endif  // GRAMLM_CORPUS_H_
