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

#include <span>
#include <vector>

#include "monagg/buyer_set.hpp"
#include "monagg/scalar.hpp"
#include "monagg/schedule.hpp"
#include "monagg/utility.hpp"

namespace monagg {

// One round of the aggregation: the active set, the largest total payment it
// can bear under the reports, and the bottleneck buyers removed afterwards.
struct BetaStep {
  BuyerSet subset;
  Scalar beta;
  BuyerSet removed;
  friend bool operator==(const BetaStep&, const BetaStep&) = default;
};

struct BetaTrace {
  int buyer_count = 0;
  std::vector<BetaStep> steps;
  Scalar beta_star;
  friend bool operator==(const BetaTrace&, const BetaTrace&) = default;
};

struct AllocationOutcome {
  bool purchased = false;
  BuyerSet winning_set;
  std::vector<Scalar> fractions;
  std::vector<Scalar> payments;
  Scalar price;  // amount paid; 0 when nothing was bought

  static AllocationOutcome nothing(int n);
  friend bool operator==(const AllocationOutcome&, const AllocationOutcome&) = default;
};

// Runs the shrinking-set computation starting from all buyers. At each step
//   beta_j = min over i in S_j with y_i(S_j) > 0 of G_i(x_i(S_j)) / y_i(S_j)
// and every minimizer is removed. Buyers with zero payment share never bind
// and stay until their set wins or the trace ends. Reports are assumed to be
// class members already (UtilityReport guarantees it).
BetaTrace compute_beta(std::span<const UtilityReport> reports, const ShareSchedule& schedule,
                       const NumericPolicy& policy = NumericPolicy::approx());

// As compute_beta, with S_1 = start instead of all buyers.
BetaTrace compute_beta_from(std::span<const UtilityReport> reports, const ShareSchedule& schedule,
                            BuyerSet start, const NumericPolicy& policy = NumericPolicy::approx());

inline const Scalar& group_bid(const BetaTrace& trace) { return trace.beta_star; }

// Divides the resource and `price` according to the first step whose beta
// covers the price (ties favour the group). Nothing is bought when no step
// covers it.
AllocationOutcome allocate(const BetaTrace& trace, const ShareSchedule& schedule, const Scalar& price,
                           const NumericPolicy& policy = NumericPolicy::approx());

// The fixed-price variant: drop every buyer whose reported value for its
// share is below its share of the price, all at once, until the remaining set
// can pay or nobody is left.
AllocationOutcome fixed_price_outcome(std::span<const UtilityReport> reports, const ShareSchedule& schedule,
                                      const Scalar& price,
                                      const NumericPolicy& policy = NumericPolicy::approx());

// compute_beta_from(start) followed by allocate.
AllocationOutcome rerun_from(std::span<const UtilityReport> reports, const ShareSchedule& schedule,
                             BuyerSet start, const Scalar& price,
                             const NumericPolicy& policy = NumericPolicy::approx());

}  // namespace monagg
