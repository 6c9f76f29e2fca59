// normalize.h
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
// Normalized utterances: class members replaced by their class tag, e.g.
// "from naples to rome" -> "from CITY-NAME to CITY-NAME".

#ifndef GRAMLM_NORMALIZE_H_
#define GRAMLM_NORMALIZE_H_

#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>

#include "gramlm/lexicon.h"
#include "gramlm/types.h"

namespace gramlm {

struct NormalizedUtterance {
  TokenSeq tokens;

  bool empty() const { return tokens.empty(); }
  size_t size() const { return tokens.size(); }
  std::string str() const { return Join(tokens); }

  friend auto operator<=>(const NormalizedUtterance&,
                          const NormalizedUtterance&) = default;
  friend bool operator==(const NormalizedUtterance&,
                         const NormalizedUtterance&) = default;
};

// Strips .,;:!? and splits on whitespace. Case is left alone.
TokenSeq Tokenize(std::string_view text);

// Greedy longest-match replacement of class members, left to right.
// Tokens that are class tags are kept verbatim; everything else is
// lowercased. Unknown words pass through. Idempotent.
NormalizedUtterance Normalize(const ClassLexicon& lexicon,
                              std::span<const Token> tokens);
NormalizedUtterance Normalize(const ClassLexicon& lexicon,
                              std::string_view text);

using NuHistogram = std::map<NormalizedUtterance, std::int64_t>;

NuHistogram CountNus(std::span<const NormalizedUtterance> corpus);

}  // namespace gramlm

#endif  // GRAMLM_NORMALIZE_H_
