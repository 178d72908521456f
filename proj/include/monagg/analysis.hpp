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

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "monagg/auction.hpp"
#include "monagg/mechanism.hpp"
#include "monagg/schedule.hpp"
#include "monagg/utility.hpp"

namespace monagg {

// Samples closed forms at every share the schedule can hand out; knot
// reports pass through unchanged.
std::vector<UtilityReport> realize_reports(std::span<const ClassMember> buyers, const ShareSchedule& schedule);

// What buyer i gets from an outcome, judged by its true utility.
struct PreferenceOutcome {
  Scalar net;                 // U_i(fraction) - payment
  bool wins_nonzero = false;  // fraction > 0
  friend bool operator==(const PreferenceOutcome&, const PreferenceOutcome&) = default;
};

PreferenceOutcome preference_outcome(const UtilityReport& true_utility, const AllocationOutcome& outcome,
                                     int buyer);

// Total preorder: higher net first, then a non-zero fraction over nothing.
// Returns <0, 0, >0.
int compare_lexicographic(const PreferenceOutcome& a, const PreferenceOutcome& b, const NumericPolicy& policy);

// Only what the model itself orders: net utility, and at net 0 a non-zero
// fraction over nothing. Other ties compare equal.
int compare_stated(const PreferenceOutcome& a, const PreferenceOutcome& b, const NumericPolicy& policy);

// A joint misreport after which no coalition member is worse off and one is
// strictly better off.
struct DeviationViolation {
  BuyerSet coalition;
  std::vector<UtilityReport> truthful_reports;
  std::vector<UtilityReport> deviant_reports;
  AuctionConfig outside;
  std::vector<PreferenceOutcome> before;  // one per buyer
  std::vector<PreferenceOutcome> after;
  // True when the violation disappears under compare_stated, i.e. it relies
  // on the lexicographic tie rule.
  bool depends_on_extension = false;
};

enum class BudgetMode { kRefuse, kPartial };

struct FuzzOptions {
  // Maximum number of joint deviation profiles evaluated (each against every
  // auction config). 0 evaluates nothing.
  std::uint64_t budget = 1'000'000;
  BudgetMode budget_mode = BudgetMode::kRefuse;
  std::uint64_t seed = 1;
  // Sampled profiles for the grand coalition of three; 0 means whatever
  // budget the smaller coalitions leave.
  std::uint64_t triple_samples = 0;
  int max_coalition_size = 3;
  NumericPolicy policy = NumericPolicy::approx();
};

struct FuzzReport {
  std::vector<DeviationViolation> violations;  // sorted by coalition, then reports
  std::uint64_t profiles = 0;                  // joint deviations evaluated
  std::uint64_t required = 0;                  // profiles the full plan needs
  bool complete = true;                        // false when the budget cut it short
};

// Report grid for one buyer: every tuple of `values` (fractions of u_max) at
// the buyer's positive share points, kept when its piecewise-linear
// extension is in the concave class.
std::vector<UtilityReport> build_report_grid(const ShareSchedule& schedule, int buyer, const Scalar& u_max,
                                             std::span<const Scalar> values);
std::vector<Scalar> default_grid_values();  // 0, 1/4, 1/2, 3/4, 1

// Reports c x^k sampled at every share point of the schedule, for c in
// `values` times u_max and k in `exponents`. The same grid serves every
// buyer. Used when a schedule targets the power family rather than the whole
// concave class.
std::vector<UtilityReport> build_power_grid(const ShareSchedule& schedule, const Scalar& u_max,
                                            std::span<const Scalar> values, std::span<const Scalar> exponents);
// Multiples of 1/8 in (0, k_max]; just k_max when none fit.
std::vector<Scalar> default_power_exponents(const Scalar& k_max);

// Every coalition of size <= max_coalition_size; coalitions of at most two
// deviate over the full cross-product of their grids, the grand coalition of
// three is sampled. n <= 3. Throws BudgetExceeded in kRefuse mode when the
// exhaustive part does not fit.
FuzzReport enumerate_coalition_deviations(std::span<const UtilityReport> true_utilities,
                                          const ShareSchedule& schedule, std::span<const AuctionConfig> configs,
                                          std::span<const std::vector<UtilityReport>> report_grid,
                                          const FuzzOptions& options = {});

// Singleton coalitions only.
FuzzReport check_unilateral_truthfulness(std::span<const UtilityReport> true_utilities,
                                         const ShareSchedule& schedule, std::span<const AuctionConfig> configs,
                                         std::span<const std::vector<UtilityReport>> report_grid,
                                         const FuzzOptions& options = {});

struct ConsistencyWitness {
  int buyer;  // values the whole resource above the price yet does not win
  AllocationOutcome outcome;
};

// Every buyer with U_i(1) > price must end up in the winning set.
std::optional<ConsistencyWitness> check_individual_consistency(std::span<const UtilityReport> reports,
                                                               const ShareSchedule& schedule, const Scalar& price,
                                                               const NumericPolicy& policy = NumericPolicy::approx());

struct WelfareReport {
  Scalar mechanism_welfare;  // sum of U_i(fraction_i), gross of payments
  Scalar optimal_welfare;
  std::vector<Scalar> optimal_division;
  bool purchased_by_mechanism = false;
  bool purchasable_optimally = false;
  // The group could have paid but the mechanism did not buy.
  bool inefficient() const { return purchasable_optimally && !purchased_by_mechanism; }
};

// max sum U_i(z_i) s.t. sum z_i <= 1, by taking knot segments in order of
// slope. Exact for concave piecewise-linear utilities.
WelfareReport optimal_welfare(std::span<const UtilityReport> utilities);

WelfareReport efficiency_gap(std::span<const UtilityReport> reports, const ShareSchedule& schedule,
                             const Scalar& price, const NumericPolicy& policy = NumericPolicy::approx());

enum class Dominance { kEqual, kDominates, kDominated, kIncomparable };
std::string_view to_string(Dominance d);

// Componentwise over aligned steps; the shorter vector is padded with a
// value below every real beta.
Dominance compare_beta_vectors(std::span<const Scalar> a, std::span<const Scalar> b, const NumericPolicy& policy);

struct NamedSchedule {
  std::string name;
  ShareSchedule schedule;
};

struct ScheduleComparison {
  struct Row {
    std::string name;
    BetaTrace trace;
    std::vector<AllocationOutcome> outcomes;  // one per price
  };
  std::vector<Row> rows;
  std::vector<Scalar> prices;
  // dominance[a][b]: how row a's beta vector relates to row b's.
  std::vector<std::vector<Dominance>> dominance;
};

// Throws DomainError when the schedules disagree on n or with the buyers.
ScheduleComparison compare_schedules(std::span<const ClassMember> buyers, std::span<const NamedSchedule> schedules,
                                     std::span<const Scalar> prices,
                                     const NumericPolicy& policy = NumericPolicy::approx());

}  // namespace monagg
