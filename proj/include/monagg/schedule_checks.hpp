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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include "monagg/schedule.hpp"
#include "monagg/utility.hpp"

namespace monagg {

// x_i(smaller) < x_i(larger) for a buyer in smaller, with smaller ⊆ larger.
struct CrossMonotonicityWitness {
  int buyer;
  BuyerSet smaller;
  BuyerSet larger;
  Scalar share_smaller;
  Scalar share_larger;
  std::string describe() const;
};

// Checks x_i(A) >= x_i(B) for every i in A ⊆ B. Only the pairs
// (B, B minus one buyer) are enumerated; the relation composes along chains.
std::optional<CrossMonotonicityWitness> validate_cross_monotonic(
    const ShareSchedule& schedule, const NumericPolicy& policy = NumericPolicy::approx(),
    int max_n = ShareSchedule::kMaxTableBuyers);

// A concrete failure of the monotonicity condition: with `utility` as the
// buyer's true utility and total price `price_level`, the buyer cannot
// afford its share in `larger` but can in `smaller`.
struct MonotonicityWitness {
  int buyer;
  BuyerSet smaller;
  BuyerSet larger;
  ClassMember utility;
  Scalar price_level;

  // Re-evaluates the implication against the schedule.
  bool verify(const ShareSchedule& schedule, const NumericPolicy& policy) const;
  std::string describe() const;
};

// Direct test of one instance of the condition: true when
// U(x_i(larger)) < C y_i(larger) (with the policy's margin) but
// U(x_i(smaller)) >= C y_i(smaller).
bool violates_monotonicity(const ShareVectorPair& smaller, const ShareVectorPair& larger, int buyer,
                           const ClassMember& utility, const Scalar& price_level,
                           const NumericPolicy& policy);

// Closed-form check of the monotonicity condition over the concave class.
//
// The criterion is a derived reduction, not a quoted result: the quantifier
// over all concave U is attained by linear functions (when the share grows)
// or by ramps flat past the smaller share (when it shrinks). With a, b the
// buyer's resource shares and ya, yb its payment shares in A ⊆ B:
//   yb = 0            -> nothing to check
//   ya = 0            -> fails
//   a = 0             -> holds
//   b = 0             -> fails (a > 0)
//   a >= b            -> needs ya / yb >= a / b
//   a <  b            -> needs ya >= yb
// A witness (zero, linear or ramp utility plus a price level) accompanies
// every failure. brute_force_monotonicity_check is its independent check.
std::optional<MonotonicityWitness> validate_monotonicity_class_c(
    const ShareSchedule& schedule, const NumericPolicy& policy = NumericPolicy::approx(),
    int max_n = ShareSchedule::kMaxTableBuyers);

// Same condition for a given class. For the power family {c x^k} the test
// reduces to a^k / ya <= b^k / yb at both ends of the exponent range (the
// log of each side is linear in k), with k -> 0 read as ya >= yb.
std::optional<MonotonicityWitness> validate_monotonicity(
    const ShareSchedule& schedule, const UtilityClassSpec& cls,
    const NumericPolicy& policy = NumericPolicy::approx(), int max_n = ShareSchedule::kMaxTableBuyers);

// Sampling oracle: draws (U in cls, C, i, A ⊆ B) tuples and tests the
// implication directly. n <= 8.
std::optional<MonotonicityWitness> brute_force_monotonicity_check(
    const ShareSchedule& schedule, std::size_t samples, std::uint64_t seed,
    const UtilityClassSpec& cls = UtilityClassSpec::full(),
    const NumericPolicy& policy = NumericPolicy::approx());

struct SingleCrossingCounterexample {
  ClassMember utility;
  Scalar price_level;  // C
  Scalar x;            // C f(x) > U(x) here ...
  Scalar x_later;      // ... but C f(x_later) <= U(x_later), x_later > x
};

struct SingleCrossingResult {
  enum class Verdict { kHolds, kHoldsAtResolution, kCounterexample };
  Verdict verdict;
  std::optional<SingleCrossingCounterexample> counterexample;
};

// Whether C f crosses every class member at most once from below. Power
// weights against the power family, and the identity against the full
// class, are decided in closed form; everything else is a grid search with
// `grid` points per axis (>= 16).
SingleCrossingResult single_crossing_check(const WeightFunction& f, const UtilityClassSpec& cls,
                                           int grid = 64);

}  // namespace monagg
