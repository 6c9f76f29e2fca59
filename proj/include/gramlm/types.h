// types.h
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
// Shared vocabulary types, exact counts and the error hierarchy.

#ifndef GRAMLM_TYPES_H_
#define GRAMLM_TYPES_H_

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>

namespace gramlm {

using Token = std::string;
using TokenSeq = std::vector<Token>;
// An n-gram of any order 1..n.
using Gram = std::vector<Token>;

// Exact count. Balance-factor scaling multiplies by decimal rationals, so
// counts never drift the way floats would.
using Count = boost::rational<std::int64_t>;

inline constexpr std::string_view kSentenceStart = "<s>";
inline constexpr std::string_view kSentenceEnd = "</s>";
inline constexpr std::string_view kUnknown = "<unk>";

inline bool IsReserved(std::string_view tok) {
  return tok == kSentenceStart || tok == kSentenceEnd || tok == kUnknown;
}

// Bad input data: malformed files, invariant violations. CLI exit status 1.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad invocation: missing flags, invalid option values. CLI exit status 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// "5", "5/2". Accepts the same plus decimals such as "0.25" on input.
std::string FormatCount(const Count& c);
Count ParseCount(std::string_view text);

inline double ToDouble(const Count& c) {
  return boost::rational_cast<double>(c);
}

std::string Join(std::span<const Token> tokens, std::string_view sep = " ");
TokenSeq SplitWhitespace(std::string_view text);

}  // namespace gramlm

#endif  // GRAMLM_TYPES_H_
