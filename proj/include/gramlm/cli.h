// cli.h
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
// The gramlm command line: normalize, train, perplexity, generate,
// generalize, analyze and synth subcommands. Artifacts go to the directory
// given by --out, else $GRAMLM_OUT_DIR, else ./gramlm_out. Reports are CSV
// or TSV (--format).
//
// Exit status: 0 on success, 1 on data errors (bad file contents, reported
// with file and line), 2 on usage errors (bad flags, missing files,
// out-of-range parameters).

#ifndef GRAMLM_CLI_H_
#define GRAMLM_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace gramlm::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDataError = 1;
inline constexpr int kExitUsageError = 2;

inline constexpr const char* kOutDirEnv = "GRAMLM_OUT_DIR";

// `args` excludes the program name.
int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace gramlm::cli

#endif  // GRAMLM_CLI_H_
