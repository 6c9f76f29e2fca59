// synth.h
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
// Seeded synthetic timetable-dialogue corpus.
//
// Three request groups answer a train-timetable system's prompts for the
// cities, the date and the time of departure. Each group draws a sentence
// template with Zipf weights, then fills its slots with phrases and class
// members, again Zipf-weighted. The Time group uses flatter weights and more
// combinable pieces, so its NU distribution has higher entropy. A small
// fraction of utterances gets a filler or a false start, standing in for
// spontaneous-speech phenomena.
//
// Alongside the corpora come the class lexicon (a 2,983-member city class
// among others) and four hand-written grammars written from the frequent
// NUs: city, city_dt (cities plus date and time), date and time.
//
// Only std::mt19937_64 raw output is used, so corpora are identical across
// standard libraries for a given seed.

#ifndef GRAMLM_SYNTH_H_
#define GRAMLM_SYNTH_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "gramlm/corpus.h"
#include "gramlm/lexicon.h"

namespace gramlm {

struct SynthConfig {
  std::uint64_t seed = 1999;
  size_t train_size = 5000;
  size_t tune_size = 500;
  size_t test_size = 1000;
  // Probability that an utterance carries a filler or a false start.
  double noise_rate = 0.015;
};

struct SyntheticData {
  ClassLexicon lexicon;
  // Labeled raw utterances in acquisition order.
  std::vector<RawLine> train;
  std::vector<RawLine> tune;
  std::vector<RawLine> test;
  // Grammar name (city, city_dt, date, time) → grammar file text.
  std::map<std::string, std::string> grammars;
};

SyntheticData Synthesize(const SynthConfig& config);

// A grammar over the k most probable sentence templates of the generator
// (by overall probability mass), with every slot expanded to all of its
// phrases and class tags. Covers exactly the noise-free NUs those
// templates can produce.
std::string TemplateGrammar(size_t k);

// Writes lexicon.lex, train.tsv, tune.tsv, test.tsv and grammars/<name>.bnf.
void WriteSyntheticData(const SyntheticData& data,
                        const std::filesystem::path& dir);

}  // namespace gramlm

#endif  // GRAMLM_SYNTH_H_
