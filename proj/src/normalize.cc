// normalize.cc
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

#include "gramlm/normalize.h"

#include <cctype>

namespace gramlm {

TokenSeq Tokenize(std::string_view text) {
  std::string cleaned;
  cleaned.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '.': case ',': case ';': case ':': case '!': case '?':
        cleaned += ' ';
        break;
      default:
        cleaned += c;
    }
  }
  return SplitWhitespace(cleaned);
}

NormalizedUtterance Normalize(const ClassLexicon& lexicon,
                              std::span<const Token> tokens) {
  TokenSeq lowered;
  lowered.reserve(tokens.size());
  for (const Token& t : tokens) {
    if (lexicon.IsClassTag(t) || IsReserved(t)) {
      lowered.push_back(t);
      continue;
    }
    Token low = t;
    for (char& c : low) {
      c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    lowered.push_back(std::move(low));
  }

  NormalizedUtterance nu;
  nu.tokens.reserve(lowered.size());
  size_t pos = 0;
  while (pos < lowered.size()) {
    if (lexicon.IsClassTag(lowered[pos])) {
      nu.tokens.push_back(lowered[pos++]);
      continue;
    }
    if (auto match = lexicon.LongestMatch(lowered, pos)) {
      nu.tokens.push_back(std::move(match->second));
      pos += match->first;
    } else {
      nu.tokens.push_back(lowered[pos++]);
    }
  }
  return nu;
}

NormalizedUtterance Normalize(const ClassLexicon& lexicon,
                              std::string_view text) {
  return Normalize(lexicon, Tokenize(text));
}

NuHistogram CountNus(std::span<const NormalizedUtterance> corpus) {
  NuHistogram hist;
  for (const auto& nu : corpus) ++hist[nu];
  return hist;
}

}  // namespace gramlm
