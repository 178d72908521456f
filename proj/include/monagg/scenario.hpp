// Copyright 2026 The monagg Authors
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

// Scenario files: buyers, a sharing schedule and an outside option, as JSON.
//
//   {
//     "buyers": [{"kind": "linear", "c": "1"},
//                {"kind": "power", "c": "1", "k": "1/2"},
//                {"kind": "knots", "points": [["0", "0"], ["1/2", "0.7"], ["1", "1"]]}],
//     "schedule": {"kind": "equal-split"},
//     "auction": {"reserve": "0", "competing_bids": ["0.6"], "tie_policy": "group_wins"},
//     "policy": "approx", "epsilon": "1e-9", "seed": 7
//   }
//
// Exactly one of "auction" and "fixed_price" is required. Optional keys:
// "schedules" (name -> schedule stanza, for comparisons), "prices",
// "utility_class" ("full" or {"kind": "power", "k_min", "k_max"}) and "fuzz"
// ({"u_max", "grid": "values"|"power", "values", "configs", "triple_samples"}).
// Numbers are decimal strings, "p/q" strings or plain JSON numbers.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "monagg/analysis.hpp"
#include "monagg/auction.hpp"
#include "monagg/errors.hpp"
#include "monagg/schedule.hpp"
#include "monagg/utility.hpp"

namespace monagg {

// Invalid scenario input, anchored to a line of the source file.
class ScenarioError : public Error {
 public:
  ScenarioError(std::string file, int line, std::string path, std::string message);
  const std::string& file() const { return file_; }
  int line() const { return line_; }
  const std::string& path() const { return path_; }
  const std::string& message() const { return message_; }

 private:
  std::string file_;
  int line_;
  std::string path_;
  std::string message_;
};

struct FuzzSettings {
  std::optional<Scalar> u_max;
  std::optional<std::string> grid;  // "values" or "power"
  std::vector<Scalar> values;       // empty: 0, 1/4, 1/2, 3/4, 1
  std::vector<AuctionConfig> configs;
  std::uint64_t triple_samples = 0;
};

struct Scenario {
  std::string source;  // file name used in messages
  std::vector<ClassMember> buyers;
  ShareSchedule schedule = ShareSchedule::equal_split(1);
  std::vector<NamedSchedule> named_schedules;
  std::optional<AuctionConfig> auction;
  std::optional<Scalar> fixed_price;
  std::vector<Scalar> prices;
  std::optional<UtilityClassSpec> utility_class;
  NumericPolicy policy = NumericPolicy::approx();
  bool policy_given = false;  // "policy" or "epsilon" present in the file
  std::uint64_t seed = 1;
  FuzzSettings fuzz;

  int buyer_count() const { return static_cast<int>(buyers.size()); }
  // The price the group faces: the fixed price, or the auction threshold.
  Scalar price_level() const;
};

// Throws ScenarioError with the line of the offending value.
Scenario parse_scenario(std::string_view text, const std::string& source_name);
Scenario load_scenario(const std::string& path);

// Maps JSON pointers ("/buyers/2/points") to 1-based source lines.
class JsonLineMap {
 public:
  explicit JsonLineMap(std::string_view text);
  // Line of `pointer`, or of its closest recorded ancestor.
  int line_of(std::string_view pointer) const;
  static int line_at_offset(std::string_view text, std::size_t offset);

 private:
  std::map<std::string, int, std::less<>> lines_;
};

}  // namespace monagg
