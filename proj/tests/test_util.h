// test_util.h
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

#ifndef GRAMLM_TESTS_TEST_UTIL_H_
#define GRAMLM_TESTS_TEST_UTIL_H_

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gramlm/lexicon.h"
#include "gramlm/normalize.h"
#include "gramlm/types.h"

namespace gramlm::testing_util {

inline NormalizedUtterance Nu(std::string_view text) {
  return NormalizedUtterance{SplitWhitespace(text)};
}

inline std::vector<NormalizedUtterance> Nus(
    std::initializer_list<std::string_view> texts) {
  std::vector<NormalizedUtterance> out;
  for (auto t : texts) out.push_back(Nu(t));
  return out;
}

inline ClassLexicon LexiconFrom(const std::string& text) {
  std::istringstream in(text);
  return ClassLexicon::Parse(in, "<test>");
}

inline Gram G(std::string_view text) { return SplitWhitespace(text); }

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& name) {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            (name + "_" + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& p) const {
    return path_ / p;
  }

 private:
  std::filesystem::path path_;
};

inline void WriteFile(const std::filesystem::path& p, const std::string& s) {
  std::ofstream out(p, std::ios::binary);
  out << s;
}

inline std::string ReadFile(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Random corpus over a small alphabet; lengths 1..max_len.
inline std::vector<NormalizedUtterance> RandomCorpus(std::mt19937_64& rng,
                                                     size_t n,
                                                     const TokenSeq& alphabet,
                                                     size_t max_len) {
  std::vector<NormalizedUtterance> out;
  for (size_t i = 0; i < n; ++i) {
    const size_t len = 1 + rng() % max_len;
    NormalizedUtterance nu;
    for (size_t j = 0; j < len; ++j) {
      nu.tokens.push_back(alphabet[rng() % alphabet.size()]);
    }
    out.push_back(std::move(nu));
  }
  return out;
}

}  // namespace gramlm::testing_util

#endif  // GRAMLM_TESTS_TEST_UTIL_H_
