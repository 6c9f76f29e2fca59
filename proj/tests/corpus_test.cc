// corpus_test.cc
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

#include <gtest/gtest.h>

#include <sstream>

#include "test_util.h"

namespace gramlm {
namespace {

using testing_util::LexiconFrom;

TEST(CorpusTest, GroupNamesRoundTrip) {
  for (RequestGroup g : kAllGroups) EXPECT_EQ(ParseGroup(GroupName(g)), g);
  EXPECT_EQ(ParseGroup("city"), std::nullopt);
}

TEST(CorpusTest, ParsesLabeledAndUnlabeledLines) {
  std::istringstream in("City\tto Rome\r\nhello there\nTime\tat five\n");
  const auto lines = ParseRawCorpus(in);
  ASSERT_EQ(lines.size(), 3u);
  EXPECT_TRUE(lines[0].labeled);
  EXPECT_EQ(lines[0].group, RequestGroup::kCity);
  EXPECT_EQ(lines[0].text, "to Rome");
  EXPECT_FALSE(lines[1].labeled);
  EXPECT_EQ(lines[1].group, RequestGroup::kOther);
  EXPECT_EQ(lines[1].text, "hello there");
  EXPECT_EQ(lines[2].group, RequestGroup::kTime);
}

TEST(CorpusTest, NormalizeFilterPrefix) {
  const ClassLexicon lex = LexiconFrom("CITY-NAME: rome\n");
  std::istringstream in("City\tto Rome\nDate\ttomorrow\nCity\tfrom rome\n");
  const auto lines = ParseRawCorpus(in);
  const LabeledCorpus c = NormalizeCorpus(lex, lines);
  ASSERT_EQ(c.size(), 3u);
  EXPECT_EQ(c[0].nu.str(), "to CITY-NAME");
  const LabeledCorpus city = FilterGroup(c, RequestGroup::kCity);
  ASSERT_EQ(city.size(), 2u);
  EXPECT_EQ(city[1].nu.str(), "from CITY-NAME");
  EXPECT_EQ(Prefix(c, 2).size(), 2u);
  EXPECT_EQ(Prefix(c, 0).size(), 0u);
  EXPECT_THROW(Prefix(c, 4), DataError);
  std::ostringstream out;
  WriteLabeledCorpus(out, c);
  EXPECT_EQ(out.str(),
            "City\tto CITY-NAME\nDate\ttomorrow\nCity\tfrom CITY-NAME\n");
}

TEST(CorpusTest, MissingFileIsADataError) {
  EXPECT_THROW(ReadRawCorpus("/nonexistent/corpus.txt"), DataError);
}

}  // namespace
}  // namespace gramlm
