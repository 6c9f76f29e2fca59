// types.cc
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

#include "gramlm/types.h"

#include <cctype>
#include <charconv>

namespace gramlm {
namespace {

std::int64_t ParseInt(std::string_view text, std::string_view whole) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw DataError("invalid count '" + std::string(whole) + "'");
  }
  return v;
}

}  // namespace

std::string FormatCount(const Count& c) {
  std::string out = std::to_string(c.numerator());
  if (c.denominator() != 1) {
    out += '/';
    out += std::to_string(c.denominator());
  }
  return out;
}

Count ParseCount(std::string_view text) {
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    std::int64_t num = ParseInt(text.substr(0, slash), text);
    std::int64_t den = ParseInt(text.substr(slash + 1), text);
    if (den <= 0) throw DataError("invalid count '" + std::string(text) + "'");
    return Count(num, den);
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view frac = text.substr(dot + 1);
    if (frac.size() > 12) {
      throw DataError("too many decimals in '" + std::string(text) + "'");
    }
    std::int64_t whole = dot == 0 ? 0 : ParseInt(text.substr(0, dot), text);
    std::int64_t den = 1;
    for (size_t i = 0; i < frac.size(); ++i) den *= 10;
    std::int64_t part = frac.empty() ? 0 : ParseInt(frac, text);
    if (part < 0 || whole < 0) {
      throw DataError("invalid count '" + std::string(text) + "'");
    }
    return Count(whole) + Count(part, den);
  }
  return Count(ParseInt(text, text));
}

std::string Join(std::span<const Token> tokens, std::string_view sep) {
  std::string out;
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (i) out += sep;
    out += tokens[i];
  }
  return out;
}

TokenSeq SplitWhitespace(std::string_view text) {
  TokenSeq out;
  size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
      ++i;
    size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j])))
      ++j;
    if (j > i) out.emplace_back(text.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace gramlm
