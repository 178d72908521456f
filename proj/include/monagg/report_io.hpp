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

// JSON and CSV forms of mechanism results.
//
// Numbers are written as {"decimal": "<15 significant digits>", "exact": "p/q"};
// "exact" appears only for exact values, and parsing prefers it, so exact
// results read back bit for bit. Buyer sets are arrays of 0-based indices.

#pragma once

#include <nlohmann/json.hpp>

#include <string>

#include "monagg/analysis.hpp"
#include "monagg/auction.hpp"
#include "monagg/mechanism.hpp"

namespace monagg {

nlohmann::json to_json(const Scalar& s);
Scalar scalar_from_json(const nlohmann::json& j);

nlohmann::json to_json(BuyerSet s);
BuyerSet buyer_set_from_json(const nlohmann::json& j);

// Knots as [["x", "u"], ...] in the scenario file's notation.
nlohmann::json to_json(const UtilityReport& u);
UtilityReport utility_report_from_json(const nlohmann::json& j);

nlohmann::json to_json(const BetaTrace& trace);
BetaTrace beta_trace_from_json(const nlohmann::json& j);

nlohmann::json to_json(const AllocationOutcome& outcome);
AllocationOutcome allocation_outcome_from_json(const nlohmann::json& j);

nlohmann::json to_json(const AuctionConfig& cfg);
nlohmann::json to_json(const AuctionResult& result);
nlohmann::json to_json(const DeviationViolation& v);
nlohmann::json to_json(const FuzzReport& report);
nlohmann::json to_json(const WelfareReport& report);
nlohmann::json to_json(const ScheduleComparison& cmp);

// CSV with a header row.
std::string trace_csv(const BetaTrace& trace);
std::string violations_csv(const FuzzReport& report);
std::string comparison_csv(const ScheduleComparison& cmp);

// Short decimal for people: integers keep a ".0" ("1.0", "0.45").
std::string human(const Scalar& s, int significant = 6);

}  // namespace monagg
