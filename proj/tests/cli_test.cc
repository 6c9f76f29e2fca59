// cli_test.cc
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

#include "gramlm/cli.h"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "test_util.h"

namespace gramlm {
namespace {

namespace fs = std::filesystem;
using testing_util::ReadFile;
using testing_util::TempDir;
using testing_util::WriteFile;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result Cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::Run(args, out, err);
  return {code, out.str(), err.str()};
}

// Synthetic corpus written once per test binary.
const fs::path& SynthDir() {
  static TempDir dir("gramlm_cli_synth");
  static const bool done = [] {
    const Result r = Cli({"synth", "--out", dir.path().string(),
                          "--train-size", "1500", "--tune-size", "200",
                          "--test-size", "300"});
    EXPECT_EQ(r.code, 0) << r.err;
    return true;
  }();
  (void)done;
  return dir.path();
}

std::string P(const std::string& name) { return (SynthDir() / name).string(); }

std::map<std::string, std::string> Snapshot(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (e.is_regular_file()) {
      out[fs::relative(e.path(), dir).string()] = ReadFile(e.path());
    }
  }
  return out;
}

TEST(CliTest, NoSubcommandIsUsageError) {
  EXPECT_EQ(Cli({}).code, cli::kExitUsageError);
}

TEST(CliTest, HelpSucceeds) {
  const Result r = Cli({"--help"});
  EXPECT_EQ(r.code, cli::kExitOk);
  EXPECT_NE(r.out.find("generalize"), std::string::npos);
}

TEST(CliTest, UnknownFlagIsUsageError) {
  EXPECT_EQ(Cli({"train", "--bogus"}).code, cli::kExitUsageError);
}

TEST(CliTest, MissingInputFileIsUsageError) {
  TempDir out("cli_missing");
  const Result r = Cli({"train", "--corpus", "/nonexistent/c.tsv", "--lexicon",
                        P("lexicon.lex"), "--out", out.path().string()});
  EXPECT_EQ(r.code, cli::kExitUsageError);
  EXPECT_FALSE(r.err.empty());
}

TEST(CliTest, MalformedLexiconIsDataErrorWithLine) {
  TempDir dir("cli_badlex");
  WriteFile(dir / "bad.lex", "CITY-NAME: rome\nno colon\n");
  const Result r =
      Cli({"normalize", "--corpus", P("train.tsv"), "--lexicon",
           (dir / "bad.lex").string(), "--out", dir.path().string()});
  EXPECT_EQ(r.code, cli::kExitDataError);
  EXPECT_NE(r.err.find("bad.lex:2"), std::string::npos) << r.err;
}

TEST(CliTest, MalformedGrammarIsDataError) {
  TempDir dir("cli_badgram");
  WriteFile(dir / "g.bnf", "S -> \"a\" Foo ;\n");
  const Result r = Cli({"generate", "--grammar", (dir / "g.bnf").string(),
                        "--out", dir.path().string()});
  EXPECT_EQ(r.code, cli::kExitDataError);
  EXPECT_NE(r.err.find("Foo"), std::string::npos) << r.err;
}

TEST(CliTest, BadOptionValuesAreUsageErrors) {
  TempDir dir("cli_badopt");
  const std::string out = dir.path().string();
  EXPECT_EQ(Cli({"train", "--corpus", P("train.tsv"), "--lexicon",
                 P("lexicon.lex"), "--order", "0", "--out", out})
                .code,
            cli::kExitUsageError);
  EXPECT_EQ(Cli({"generalize", "--corpus", P("train.tsv"), "--grammar",
                 P("grammars/date.bnf"), "--lexicon", P("lexicon.lex"),
                 "--bafa", "0", "--out", out})
                .code,
            cli::kExitUsageError);
  EXPECT_EQ(Cli({"generalize", "--corpus", P("train.tsv"), "--grammar",
                 P("grammars/date.bnf"), "--lexicon", P("lexicon.lex"),
                 "--out", out})
                .code,
            cli::kExitUsageError);
  EXPECT_EQ(Cli({"train", "--corpus", P("train.tsv"), "--lexicon",
                 P("lexicon.lex"), "--format", "xml", "--out", out})
                .code,
            cli::kExitUsageError);
}

TEST(CliTest, TrainThenPerplexity) {
  TempDir dir("cli_train");
  const std::string out = dir.path().string();
  ASSERT_EQ(Cli({"train", "--corpus", P("train.tsv"), "--lexicon",
                 P("lexicon.lex"), "--out", out})
                .code,
            0);
  ASSERT_TRUE(fs::exists(dir / "model.lm"));
  ASSERT_TRUE(fs::exists(dir / "ngrams.tsv"));
  const Result r = Cli({"perplexity", "--model", (dir / "model.lm").string(),
                        "--corpus", P("train.tsv"), "--lexicon",
                        P("lexicon.lex"), "--out", out});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream csv(ReadFile(dir / "perplexity.csv"));
  std::string header, line;
  std::getline(csv, header);
  EXPECT_EQ(header, "group,utterances,tokens,oov,log_prob,pp");
  int rows = 0;
  while (std::getline(csv, line)) {
    ++rows;
    const double pp = std::stod(line.substr(line.rfind(',') + 1));
    EXPECT_GE(pp, 1.0) << line;
  }
  EXPECT_EQ(rows, 4);
}

TEST(CliTest, GeneralizeWritesEventReport) {
  TempDir dir("cli_gen");
  const Result r =
      Cli({"generalize", "--corpus", P("train.tsv"), "--grammar",
           P("grammars/date.bnf"), "--lexicon", P("lexicon.lex"), "--tune",
           P("tune.tsv"), "--test", P("test.tsv"), "--order", "3", "--out",
           dir.path().string(), "--format", "tsv"});
  ASSERT_EQ(r.code, 0) << r.err;
  for (const char* f : {"model.lm", "baseline.lm", "ngrams.tsv", "events.tsv",
                        "perplexity.tsv", "tuning.tsv"}) {
    EXPECT_TRUE(fs::exists(dir / f)) << f;
  }
  const std::string events = ReadFile(dir / "events.tsv");
  for (const char* col : {"used", "rare", "unknown", "bafa"}) {
    EXPECT_NE(events.find(col), std::string::npos) << col;
  }
}

TEST(CliTest, OutDirFromEnvironment) {
  TempDir dir("cli_env");
  ASSERT_EQ(setenv(cli::kOutDirEnv, dir.path().string().c_str(), 1), 0);
  const Result r =
      Cli({"generate", "--grammar", P("grammars/time.bnf")});
  unsetenv(cli::kOutDirEnv);
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(fs::exists(dir / "sentences.txt"));
}

TEST(CliTest, CommandsDoNotMutateInputs) {
  const auto before = Snapshot(SynthDir());
  TempDir dir("cli_mut");
  ASSERT_EQ(Cli({"normalize", "--corpus", P("train.tsv"), "--lexicon",
                 P("lexicon.lex"), "--out", dir.path().string()})
                .code,
            0);
  EXPECT_EQ(Snapshot(SynthDir()), before);
}

TEST(CliTest, RepeatedRunsAreByteIdentical) {
  const std::vector<std::vector<std::string>> commands = {
      {"synth", "--seed", "42", "--train-size", "600", "--tune-size", "100",
       "--test-size", "100"},
      {"normalize", "--corpus", P("train.tsv"), "--lexicon", P("lexicon.lex")},
      {"train", "--corpus", P("train.tsv"), "--lexicon", P("lexicon.lex")},
      {"generate", "--grammar", P("grammars/city_dt.bnf")},
      {"generalize", "--corpus", P("train.tsv"), "--grammar",
       P("grammars/time.bnf"), "--lexicon", P("lexicon.lex"), "--tune",
       P("tune.tsv"), "--test", P("test.tsv")},
      {"analyze", "--corpus", P("train.tsv"), "--test", P("test.tsv"),
       "--lexicon", P("lexicon.lex"), "--sizes", "100,500,all"},
  };
  for (const auto& cmd : commands) {
    TempDir a("cli_det_a"), b("cli_det_b");
    auto args_a = cmd, args_b = cmd;
    args_a.insert(args_a.end(), {"--out", a.path().string()});
    args_b.insert(args_b.end(), {"--out", b.path().string()});
    const Result ra = Cli(args_a);
    const Result rb = Cli(args_b);
    ASSERT_EQ(ra.code, 0) << cmd[0] << ": " << ra.err;
    ASSERT_EQ(rb.code, 0) << cmd[0] << ": " << rb.err;
    const auto sa = Snapshot(a.path());
    EXPECT_FALSE(sa.empty()) << cmd[0];
    EXPECT_EQ(sa, Snapshot(b.path())) << cmd[0];
  }
}

TEST(CliTest, AnalyzeWritesAllTables) {
  TempDir dir("cli_an");
  const Result r = Cli({"analyze", "--corpus", P("train.tsv"), "--test",
                        P("test.tsv"), "--lexicon", P("lexicon.lex"),
                        "--sizes", "100,1000,all", "--out",
                        dir.path().string()});
  ASSERT_EQ(r.code, 0) << r.err;
  for (const char* f : {"fig1_coverage.csv", "fig3_pp_sweep.csv",
                        "tab1_saturation.csv", "sec3_overlap.csv",
                        "sec3_unseen.csv"}) {
    EXPECT_TRUE(fs::exists(dir / f)) << f;
  }
  EXPECT_EQ(Cli({"analyze", "--corpus", P("train.tsv"), "--test",
                 P("test.tsv"), "--lexicon", P("lexicon.lex"), "--sizes",
                 "100,999999", "--out", dir.path().string()})
                .code,
            cli::kExitUsageError);
}

}  // namespace
}  // namespace gramlm
