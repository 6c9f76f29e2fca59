// corpus.cc
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

#include "gramlm/corpus.h"

#include <fstream>
#include <istream>
#include <ostream>

namespace gramlm {

std::string_view GroupName(RequestGroup g) {
  switch (g) {
    case RequestGroup::kCity: return "City";
    case RequestGroup::kDate: return "Date";
    case RequestGroup::kTime: return "Time";
    case RequestGroup::kOther: return "Other";
  }
  return "Other";
}

std::optional<RequestGroup> ParseGroup(std::string_view name) {
  for (RequestGroup g : kAllGroups) {
    if (GroupName(g) == name) return g;
  }
  return std::nullopt;
}

std::vector<RawLine> ParseRawCorpus(std::istream& in) {
  std::vector<RawLine> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    RawLine raw;
    if (auto tab = line.find('\t'); tab != std::string::npos) {
      if (auto g = ParseGroup(std::string_view(line).substr(0, tab))) {
        raw.group = *g;
        raw.labeled = true;
        raw.text = line.substr(tab + 1);
        lines.push_back(std::move(raw));
        continue;
      }
    }
    raw.text = std::move(line);
    lines.push_back(std::move(raw));
  }
  return lines;
}

std::vector<RawLine> ReadRawCorpus(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open corpus " + path.string());
  return ParseRawCorpus(in);
}

LabeledCorpus NormalizeCorpus(const ClassLexicon& lexicon,
                              std::span<const RawLine> lines) {
  LabeledCorpus corpus;
  corpus.reserve(lines.size());
  for (const RawLine& raw : lines) {
    corpus.push_back({raw.group, Normalize(lexicon, raw.text)});
  }
  return corpus;
}

LabeledCorpus ReadLabeledCorpus(const std::filesystem::path& path,
                                const ClassLexicon& lexicon) {
  return NormalizeCorpus(lexicon, ReadRawCorpus(path));
}

std::vector<NormalizedUtterance> Utterances(const LabeledCorpus& corpus) {
  std::vector<NormalizedUtterance> out;
  out.reserve(corpus.size());
  for (const auto& u : corpus) out.push_back(u.nu);
  return out;
}

LabeledCorpus FilterGroup(const LabeledCorpus& corpus, RequestGroup g) {
  LabeledCorpus out;
  for (const auto& u : corpus) {
    if (u.group == g) out.push_back(u);
  }
  return out;
}

LabeledCorpus Prefix(const LabeledCorpus& corpus, size_t n) {
  if (n > corpus.size()) {
    throw DataError("prefix of " + std::to_string(n) +
                    " utterances exceeds corpus size " +
                    std::to_string(corpus.size()));
  }
  return LabeledCorpus(corpus.begin(), corpus.begin() + n);
}

void WriteLabeledCorpus(std::ostream& out, const LabeledCorpus& corpus) {
  for (const auto& u : corpus) {
    out << GroupName(u.group) << '\t' << u.nu.str() << '\n';
  }
}

}  // namespace gramlm
