// synth.cc
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

#include "gramlm/synth.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <set>

namespace gramlm {
namespace {

constexpr size_t kCityCount = 2983;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  // Uniform in [0, 1) from the top 53 bits.
  double Uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  size_t Below(size_t n) {
    return std::min(n - 1, static_cast<size_t>(Uniform() * double(n)));
  }

 private:
  std::mt19937_64 gen_;
};

struct WeightedList {
  std::vector<std::string> items;
  std::vector<double> cdf;

  const std::string& Sample(Rng& rng) const {
    const double u = rng.Uniform() * cdf.back();
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    return items[std::min<size_t>(it - cdf.begin(), items.size() - 1)];
  }
};

// Weight of the item at rank r (0-based) is 1 / (r + 1)^exponent.
WeightedList Zipf(std::vector<std::string> items, double exponent) {
  WeightedList w;
  double total = 0.0;
  for (size_t r = 0; r < items.size(); ++r) {
    total += 1.0 / std::pow(double(r + 1), exponent);
    w.cdf.push_back(total);
  }
  w.items = std::move(items);
  return w;
}

std::vector<std::string> CityNames() {
  std::vector<std::string> names = {
      "rome",      "milan",     "naples",         "turin",
      "palermo",   "genoa",     "bologna",        "florence",
      "bari",      "catania",   "venice",         "verona",
      "messina",   "padua",     "trieste",        "brescia",
      "parma",     "taranto",   "prato",          "modena",
      "reggio calabria", "la spezia", "ascoli piceno", "pisa",
      "livorno",   "cagliari",  "perugia",        "ancona",
      "pescara",   "salerno",   "bergamo",        "trento",
      "bolzano",   "udine",     "lecce",          "siena",
      "ferrara",   "ravenna",   "rimini",         "foggia",
  };
  const std::vector<std::string> heads = {
      "san",   "monte", "castel", "villa", "porto", "borgo", "rocca", "torre",
      "ponte", "campo", "valle",  "poggio", "colle", "fonte", "serra", "pietra"};
  const std::vector<std::string> roots = {
      "alto",  "basso",  "nuovo", "vecchio", "rosso", "bianco", "verde",
      "fiore", "mare",   "sole",  "luna",    "lago",  "bosco",  "piano",
      "ferro", "oro",    "vento", "grande",  "lungo", "chiaro"};
  const std::vector<std::string> tails = {"",     "a",    "i",   "ello",
                                          "ino",  "etto", "one", "ano",
                                          "ese",  "ula"};
  std::set<std::string> seen(names.begin(), names.end());
  for (const auto& t : tails) {
    for (const auto& r : roots) {
      for (const auto& h : heads) {
        if (names.size() == kCityCount) return names;
        std::string name = h + r + t;
        if (seen.insert(name).second) names.push_back(std::move(name));
      }
    }
  }
  return names;
}

std::vector<std::string> Hours() {
  return {"one",        "two",        "three",       "four",
          "five",       "six",        "seven",       "eight",
          "nine",       "ten",        "eleven",      "twelve",
          "thirteen",   "fourteen",   "fifteen",     "sixteen",
          "seventeen",  "eighteen",   "nineteen",    "twenty",
          "twenty-one", "twenty-two", "twenty-three", "twenty-four"};
}

std::vector<std::string> Ordinals() {
  const std::vector<std::string> units = {
      "first", "second", "third",   "fourth", "fifth",
      "sixth", "seventh", "eighth", "ninth"};
  std::vector<std::string> out = units;
  for (const char* w : {"tenth", "eleventh", "twelfth", "thirteenth",
                        "fourteenth", "fifteenth", "sixteenth",
                        "seventeenth", "eighteenth", "nineteenth",
                        "twentieth"}) {
    out.emplace_back(w);
  }
  for (const auto& u : units) out.push_back("twenty-" + u);
  out.emplace_back("thirtieth");
  out.emplace_back("thirty-first");
  return out;
}

std::vector<std::string> WeekDays() {
  return {"monday", "friday", "tuesday", "saturday",
          "wednesday", "thursday", "sunday"};
}

std::vector<std::string> Months() {
  return {"august", "july",  "december", "june",     "september", "may",
          "april",  "march", "october",  "november", "january",   "february"};
}

TokenSeq MemberTokens(const std::string& member) {
  return SplitWhitespace(member);
}

class Generator {
 public:
  Generator() {
    slots_["CITY"] = Zipf(CityNames(), 1.0);
    slots_["HOUR"] = Zipf(Hours(), 0.4);
    slots_["ORD"] = Zipf(Ordinals(), 0.3);
    slots_["WDAY"] = Zipf(WeekDays(), 0.3);
    slots_["MONTH"] = Zipf(Months(), 0.5);

    slots_["LEAD"] = Zipf({"i want to go", "i want to leave",
                           "i would like to go", "i need a train",
                           "i want to travel", "i would like to travel",
                           "i have to go", "i need to go", "i must go",
                           "i am going"},
                          1.4);
    slots_["DLEAD"] = Zipf({"i want to leave", "i would like to leave",
                            "i need to leave", "i am leaving",
                            "i have to leave", "i must leave",
                            "i would like to travel", "i leave"},
                           1.4);
    slots_["REL"] = Zipf({"tomorrow", "today", "the day after tomorrow"}, 1.0);
    slots_["POD"] = Zipf({"in the morning", "in the afternoon",
                          "in the evening", "at lunch time", "at night",
                          "early in the morning", "late in the evening"},
                         0.7);
    slots_["SPEC"] = Zipf({"at", "after", "before", "around",
                           "not earlier than", "not later than", "about",
                           "by"},
                          0.6);
    slots_["TID"] = Zipf({"{HOUR}", "{HOUR} o'clock", "half past {HOUR}",
                          "a quarter to {HOUR}", "a quarter past {HOUR}",
                          "{HOUR} and a half", "noon",
                          "{HOUR} minutes past {HOUR}", "midnight",
                          "{HOUR} minutes to {HOUR}"},
                         0.6);
    slots_["DATEX"] = Zipf({"on {WDAY}", "tomorrow", "today",
                            "on the {ORD} of {MONTH}", "on the {ORD}"},
                           1.0);

    groups_.push_back(
        {RequestGroup::kCity, 0.4,
         Zipf({"from {CITY} to {CITY}",
               "{CITY}",
               "{LEAD} from {CITY} to {CITY}",
               "to {CITY}",
               "{LEAD} to {CITY}",
               "from {CITY}",
               "{LEAD} from {CITY} to {CITY} {POD}",
               "{CITY} {CITY}",
               "from {CITY} to {CITY} {DATEX}",
               "{CITY} to {CITY}",
               "from {CITY} to {CITY} please",
               "i am leaving from {CITY} and going to {CITY}",
               "departure {CITY} arrival {CITY}",
               "the train for {CITY}"},
              1.15)});
    groups_.push_back(
        {RequestGroup::kDate, 0.3,
         Zipf({"{WDAY}",
               "on {WDAY}",
               "{REL}",
               "the {ORD} of {MONTH}",
               "{WDAY} the {ORD}",
               "{ORD} {MONTH}",
               "on {WDAY} the {ORD} of {MONTH}",
               "next {WDAY}",
               "{DLEAD} {REL}",
               "on the {ORD}",
               "this {WDAY}",
               "any day is fine"},
              1.05)});
    groups_.push_back(
        {RequestGroup::kTime, 0.3,
         Zipf({"{SPEC} {TID}",
               "{POD}",
               "{SPEC} {TID} {POD}",
               "{TID}",
               "{POD} {SPEC} {TID}",
               "i want to leave {SPEC} {TID}",
               "i would like to leave {POD}",
               "{SPEC} {TID} please",
               "as soon as possible",
               "it does not matter"},
              0.55)});
  }

  RawLine Draw(Rng& rng, double noise_rate) const {
    double u = rng.Uniform();
    const GroupSpec* spec = &groups_.back();
    for (const auto& g : groups_) {
      if (u < g.weight) {
        spec = &g;
        break;
      }
      u -= g.weight;
    }
    TokenSeq tokens = Expand(spec->templates.Sample(rng), rng);
    if (rng.Uniform() < noise_rate) AddNoise(tokens, rng);
    return {spec->group, true, Join(tokens)};
  }

  std::string TemplateGrammar(size_t k) const {
    struct Ranked {
      double mass;
      size_t order;
      const std::string* pattern;
    };
    std::vector<Ranked> ranked;
    for (const auto& g : groups_) {
      const auto& cdf = g.templates.cdf;
      for (size_t i = 0; i < cdf.size(); ++i) {
        const double p = (cdf[i] - (i ? cdf[i - 1] : 0.0)) / cdf.back();
        ranked.push_back({g.weight * p, ranked.size(), &g.templates.items[i]});
      }
    }
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const Ranked& a, const Ranked& b) {
                       return a.mass > b.mass;
                     });
    ranked.resize(std::min(k, ranked.size()));

    std::set<std::string> used;
    std::string out = "start Top;\nTop -> ";
    for (size_t i = 0; i < ranked.size(); ++i) {
      if (i) out += "\n     | ";
      out += Rhs(*ranked[i].pattern, used);
    }
    out += " ;\n";
    // Slots can refer to further slots; expand until no new ones appear.
    std::set<std::string> done;
    while (done.size() < used.size()) {
      for (const std::string& slot : std::set<std::string>(used)) {
        if (!done.insert(slot).second) continue;
        out += "Slot_" + slot + " -> ";
        const auto& items = slots_.at(slot).items;
        for (size_t i = 0; i < items.size(); ++i) {
          if (i) out += " | ";
          out += Rhs(items[i], used);
        }
        out += " ;\n";
      }
    }
    return out;
  }

  ClassLexicon Lexicon() const {
    ClassLexicon lex;
    auto add = [&](const std::string& tag, const std::string& slot) {
      std::vector<TokenSeq> members;
      for (const auto& m : slots_.at(slot).items) {
        members.push_back(MemberTokens(m));
      }
      lex.AddClass(tag, members);
    };
    add("CITY-NAME", "CITY");
    add("DAY-ORDINAL", "ORD");
    add("HOUR-NUMBER", "HOUR");
    add("MONTH-NAME", "MONTH");
    add("WEEK-DAY", "WDAY");
    return lex;
  }

 private:
  struct GroupSpec {
    RequestGroup group;
    double weight;
    WeightedList templates;
  };

  TokenSeq Expand(const std::string& pattern, Rng& rng) const {
    TokenSeq out;
    for (const auto& piece : SplitWhitespace(pattern)) {
      if (piece.size() > 2 && piece.front() == '{' && piece.back() == '}') {
        const auto& list = slots_.at(piece.substr(1, piece.size() - 2));
        TokenSeq sub = Expand(list.Sample(rng), rng);
        out.insert(out.end(), sub.begin(), sub.end());
      } else {
        out.push_back(piece);
      }
    }
    return out;
  }

  static const char* ClassTag(const std::string& slot) {
    if (slot == "CITY") return "CITY-NAME";
    if (slot == "HOUR") return "HOUR-NUMBER";
    if (slot == "ORD") return "DAY-ORDINAL";
    if (slot == "WDAY") return "WEEK-DAY";
    if (slot == "MONTH") return "MONTH-NAME";
    return nullptr;
  }

  // Right-hand side for one pattern: words and class tags become quoted
  // terminals, other slots become Slot_<name> nonterminals.
  static std::string Rhs(const std::string& pattern,
                         std::set<std::string>& used) {
    std::string out;
    for (const auto& piece : SplitWhitespace(pattern)) {
      if (!out.empty()) out += ' ';
      if (piece.size() > 2 && piece.front() == '{' && piece.back() == '}') {
        const std::string slot = piece.substr(1, piece.size() - 2);
        if (const char* tag = ClassTag(slot)) {
          out += '"' + std::string(tag) + '"';
        } else {
          used.insert(slot);
          out += "Slot_" + slot;
        }
      } else {
        out += '"' + piece + '"';
      }
    }
    return out;
  }

  static void AddNoise(TokenSeq& tokens, Rng& rng) {
    static const std::vector<std::string> fillers = {"ehm", "uh", "well",
                                                     "er"};
    switch (rng.Below(3)) {
      case 0:  // filler
        tokens.insert(tokens.begin() + rng.Below(tokens.size() + 1),
                      fillers[rng.Below(fillers.size())]);
        break;
      case 1:  // false start
        tokens.insert(tokens.begin(), tokens.front());
        break;
      default:
        tokens.insert(tokens.begin(), "yes");
    }
  }

  std::map<std::string, WeightedList> slots_;
  std::vector<GroupSpec> groups_;
};

constexpr const char* kCityGrammar = R"(# Departure and arrival cities.
start City;
City -> "CITY-NAME" | From To | From | To | Lead From To | Lead To
      | "CITY-NAME CITY-NAME" | "CITY-NAME to CITY-NAME" | From To "please"
      | "departure CITY-NAME arrival CITY-NAME"
      | "i am leaving" From "and going" To | "the train" For
      | "i need a train" For ;
From -> "from CITY-NAME" ;
To -> "to CITY-NAME" ;
For -> "for CITY-NAME" ;
Lead -> "i want to go" | "i want to leave" | "i would like to go"
      | "i need a train" | "i want to travel" | "i would like to travel"
      | "i have to go" | "i need to go" | "i must go" | "i am going" ;
)";

constexpr const char* kCityDateTimeGrammar = R"(# Cities, optionally with date and time of departure.
start City;
City -> "CITY-NAME" | From To | From | To | Lead From To | Lead To
      | "CITY-NAME CITY-NAME" | "CITY-NAME to CITY-NAME"
      | From To Date | Lead From To Date | Lead From To Time
      | Lead From To Date Time | From To Time ;
From -> "from CITY-NAME" ;
To -> "to CITY-NAME" ;
Lead -> "i want to go" | "i want to leave" | "i would like to go"
      | "i need a train" | "i want to travel" ;
Date -> "on WEEK-DAY" | "today" | "tomorrow" | "the day after tomorrow"
      | "on the DAY-ORDINAL" | "on the DAY-ORDINAL of MONTH-NAME" ;
Time -> Part_of_Day | Time_Specifier Time_Identifier
      | Part_of_Day Time_Specifier Time_Identifier ;
Part_of_Day -> "in the morning" | "in the afternoon" | "in the evening"
      | "at lunch time" | "at night" ;
Time_Specifier -> "at" | "after" | "before" | "around" | "not earlier than"
      | "not later than" ;
Time_Identifier -> "HOUR-NUMBER" | "HOUR-NUMBER o'clock" | "half past HOUR-NUMBER"
      | "a quarter to HOUR-NUMBER" | "a quarter past HOUR-NUMBER" ;
)";

constexpr const char* kDateGrammar = R"(# Date of departure.
start Date;
Date -> Day | "on" Day | Relative | "next WEEK-DAY" | "this WEEK-DAY"
      | Lead When ;
Day -> "WEEK-DAY" | "the DAY-ORDINAL" | "the DAY-ORDINAL of MONTH-NAME"
      | "DAY-ORDINAL MONTH-NAME" | "WEEK-DAY the DAY-ORDINAL"
      | "WEEK-DAY the DAY-ORDINAL of MONTH-NAME" | "WEEK-DAY DAY-ORDINAL MONTH-NAME" ;
Relative -> "today" | "tomorrow" | "the day after tomorrow" ;
When -> Relative | "on" Day ;
Lead -> "i want to leave" | "i would like to leave" | "i need to leave"
      | "i am leaving" | "i have to leave" | "i must leave"
      | "i would like to travel" | "i leave" ;
)";

constexpr const char* kTimeGrammar = R"(# Time of departure.
start Time;
Time -> Time_Specifier Time_Identifier | Part_of_Day
      | Time_Specifier Time_Identifier Part_of_Day
      | Part_of_Day Time_Specifier Time_Identifier | Time_Identifier
      | "i want to leave" Time_Specifier Time_Identifier
      | "i would like to leave" Part_of_Day
      | "i want to arrive" Time_Specifier Time_Identifier
      | "i want to leave" Part_of_Day Time_Specifier Time_Identifier ;
Part_of_Day -> "in the morning" | "in the afternoon" | "in the evening"
      | "at lunch time" | "at night" | "early in the morning"
      | "late in the evening" | "at dinner time" ;
Time_Specifier -> "at" | "after" | "before" | "around" | "not earlier than"
      | "not later than" | "about" | "by" ;
Time_Identifier -> "HOUR-NUMBER" | "HOUR-NUMBER o'clock" | "half past HOUR-NUMBER"
      | "a quarter to HOUR-NUMBER" | "a quarter past HOUR-NUMBER"
      | "HOUR-NUMBER and a half" | "noon" | "midnight"
      | "HOUR-NUMBER minutes past HOUR-NUMBER"
      | "HOUR-NUMBER minutes to HOUR-NUMBER" ;
)";

void WriteLines(const std::filesystem::path& path,
                const std::vector<RawLine>& lines) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  for (const auto& l : lines) {
    out << GroupName(l.group) << '\t' << l.text << '\n';
  }
}

}  // namespace

SyntheticData Synthesize(const SynthConfig& config) {
  const Generator gen;
  Rng rng(config.seed);
  SyntheticData data;
  data.lexicon = gen.Lexicon();
  auto draw = [&](size_t n, std::vector<RawLine>& out) {
    out.reserve(n);
    for (size_t i = 0; i < n; ++i) out.push_back(gen.Draw(rng, config.noise_rate));
  };
  draw(config.train_size, data.train);
  draw(config.tune_size, data.tune);
  draw(config.test_size, data.test);
  data.grammars = {{"city", kCityGrammar},
                   {"city_dt", kCityDateTimeGrammar},
                   {"date", kDateGrammar},
                   {"time", kTimeGrammar}};
  return data;
}

std::string TemplateGrammar(size_t k) {
  return Generator().TemplateGrammar(k);
}

void WriteSyntheticData(const SyntheticData& data,
                        const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir / "grammars");
  {
    std::ofstream out(dir / "lexicon.lex", std::ios::binary);
    if (!out) throw DataError("cannot write " + (dir / "lexicon.lex").string());
    data.lexicon.Save(out);
  }
  WriteLines(dir / "train.tsv", data.train);
  WriteLines(dir / "tune.tsv", data.tune);
  WriteLines(dir / "test.tsv", data.test);
  for (const auto& [name, text] : data.grammars) {
    std::ofstream out(dir / "grammars" / (name + ".bnf"), std::ios::binary);
    if (!out) throw DataError("cannot write grammar " + name);
    out << text;
  }
}

}  // namespace gramlm
