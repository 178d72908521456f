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

#include "monagg/schedule_checks.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "test_support.hpp"

namespace monagg {
namespace {

using testing::d;
using testing::ranked_base;
using testing::ranked_order;
using testing::witness_table;

const NumericPolicy kApprox = NumericPolicy::approx();

ShareSchedule random_table(Rng& rng, int n) {
  ShareSchedule::Table t;
  for_each_nonempty_subset(BuyerSet::all(n), [&](BuyerSet a) {
    t[a] = {testing::random_shares(rng, n, a, 12, true), testing::random_shares(rng, n, a, 12, true)};
  });
  return ShareSchedule::table(n, std::move(t));
}

ShareSchedule tabulate(const ShareSchedule& s) {
  ShareSchedule::Table t;
  for_each_nonempty_subset(BuyerSet::all(s.buyer_count()), [&](BuyerSet a) { t[a] = s.shares_for(a); });
  return ShareSchedule::table(s.buyer_count(), std::move(t));
}

TEST(CrossMonotonicTest, PassesOnEqualSplitAndRanked) {
  EXPECT_FALSE(validate_cross_monotonic(ShareSchedule::equal_split(6)).has_value());
  EXPECT_FALSE(validate_cross_monotonic(ShareSchedule::rras(ranked_order(), ranked_base(), WeightFunction::sqrt()))
                   .has_value());
}

TEST(CrossMonotonicTest, FindsShrinkingShare) {
  ShareSchedule::Table t = [] {
    ShareSchedule::Table t;
    for_each_nonempty_subset(BuyerSet::all(3), [&](BuyerSet a) { t[a] = ShareSchedule::equal_split(3).shares_for(a); });
    return t;
  }();
  t[BuyerSet{0, 1}] = {{Scalar::ratio(1, 4), Scalar::ratio(3, 4), 0}, {Scalar::ratio(1, 2), Scalar::ratio(1, 2), 0}};
  auto w = validate_cross_monotonic(ShareSchedule::table(3, t));
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->buyer, 0);
  EXPECT_EQ(w->smaller, (BuyerSet{0, 1}));
  EXPECT_EQ(w->larger, BuyerSet::all(3));
  EXPECT_EQ(w->share_smaller, Scalar::ratio(1, 4));
  EXPECT_EQ(w->share_larger, Scalar::ratio(1, 3));
}

TEST(MonotonicityTest, EqualSplitAndCmssPass) {
  for (int n = 1; n <= 8; ++n) {
    EXPECT_FALSE(validate_monotonicity_class_c(ShareSchedule::equal_split(n)).has_value()) << n;
  }
  EXPECT_FALSE(validate_monotonicity_class_c(ShareSchedule::cmss_ranked(ranked_order(), ranked_base())).has_value());
}

TEST(MonotonicityTest, WitnessTableYieldsLinearWitness) {
  ShareSchedule s = witness_table();
  auto w = validate_monotonicity_class_c(s, NumericPolicy::exact());
  ASSERT_TRUE(w.has_value());
  EXPECT_TRUE(w->verify(s, NumericPolicy::exact())) << w->describe();
  EXPECT_TRUE(brute_force_monotonicity_check(s, 20000, 5).has_value());

  // The constructed pair: buyer 0 from {0,1,2} (x = y = 1/3) to {0,1}
  // (x = 2/3, y = 1/3). U(x) = x, C = 3/2: U(1/3) = 1/3 < 1/2 but
  // U(2/3) = 2/3 >= 1/2.
  ShareVectorPair small = s.shares_for(BuyerSet{0, 1});
  ShareVectorPair large = s.shares_for(BuyerSet::all(3));
  EXPECT_TRUE(violates_monotonicity(small, large, 0, UtilityReport::linear(1), Scalar::ratio(3, 2),
                                    NumericPolicy::exact()));

  // In a table the singletons force y = x, so buyer 1 (x = 1/3, y = 2/3 in
  // {0,1}) also breaks the condition against {1}; the enumeration meets that
  // pair first. Above C = 2 the constructed pair no longer fails.
  EXPECT_FALSE(violates_monotonicity(small, large, 0, UtilityReport::linear(1), Scalar(3),
                                     NumericPolicy::exact()));
}

TEST(MonotonicityTest, SqrtRrasPassesOnItsOwnClassOnly) {
  ShareSchedule r = ShareSchedule::rras(ranked_order(), ranked_base(), WeightFunction::sqrt());
  EXPECT_FALSE(validate_monotonicity(r, r.natural_class()).has_value());
  EXPECT_FALSE(brute_force_monotonicity_check(r, 20000, 11, r.natural_class()).has_value());

  // Buyer 1 going from {0,1,2} to {1,2}: resource share 1/4 -> 3/4 while the
  // payment share ratio is only about 2.16, so a linear utility breaks it.
  auto w = validate_monotonicity_class_c(r);
  ASSERT_TRUE(w.has_value());
  EXPECT_TRUE(w->verify(r, kApprox));
  EXPECT_TRUE(brute_force_monotonicity_check(r, 20000, 11).has_value());
}

// Property: ranked reallocation passes on its natural class for random
// orders and bases up to n = 8; CMSS passes the full class.
TEST(MonotonicityPropertyTest, RankedSchedulesPass) {
  Rng rng(17);
  for (int trial = 0; trial < 25; ++trial) {
    int n = static_cast<int>(rng.between(1, 8));
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    for (int i = n - 1; i > 0; --i) std::swap(order[i], order[rng.below(i + 1)]);
    std::vector<Scalar> base = testing::random_shares(rng, n, BuyerSet::all(n), 24, false);
    for (const WeightFunction& f : {WeightFunction::identity(), WeightFunction::sqrt(),
                                    WeightFunction::power(Scalar::ratio(1, 3))}) {
      ShareSchedule r = ShareSchedule::rras(order, base, f);
      EXPECT_FALSE(validate_cross_monotonic(r).has_value());
      auto w = validate_monotonicity(r, r.natural_class());
      EXPECT_FALSE(w.has_value()) << r.describe() << (w ? w->describe() : "");
    }
    EXPECT_FALSE(validate_monotonicity_class_c(ShareSchedule::cmss_ranked(order, base)).has_value());
  }
}

// Property: the closed form and the sampling oracle agree on random tables.
TEST(MonotonicityPropertyTest, ClosedFormAgreesWithOracle) {
  Rng rng(4242);
  int violators = 0;
  for (int trial = 0; trial < 60; ++trial) {
    int n = static_cast<int>(rng.between(2, 4));
    ShareSchedule s = trial % 3 == 0 ? tabulate(ShareSchedule::cmss_ranked(
                                           [&] {
                                             std::vector<int> o(n);
                                             for (int i = 0; i < n; ++i) o[i] = n - 1 - i;
                                             return o;
                                           }(),
                                           testing::random_shares(rng, n, BuyerSet::all(n), 12, false)))
                                     : random_table(rng, n);
    auto closed = validate_monotonicity_class_c(s, NumericPolicy::exact());
    auto sampled = brute_force_monotonicity_check(s, 10000, rng.next(), UtilityClassSpec::full(), NumericPolicy::exact());
    EXPECT_EQ(closed.has_value(), sampled.has_value()) << "trial " << trial;
    if (closed) {
      ++violators;
      EXPECT_TRUE(closed->verify(s, NumericPolicy::exact())) << closed->describe();
    }
    if (sampled) EXPECT_TRUE(sampled->verify(s, NumericPolicy::exact())) << sampled->describe();
  }
  EXPECT_GE(violators, 10);
}

TEST(MonotonicityPropertyTest, PowerFamilyClosedFormAgreesWithOracle) {
  Rng rng(808);
  UtilityClassSpec cls = UtilityClassSpec::power_family(0, Scalar::ratio(1, 2));
  for (int trial = 0; trial < 40; ++trial) {
    int n = static_cast<int>(rng.between(2, 3));
    ShareSchedule s = random_table(rng, n);
    auto closed = validate_monotonicity(s, cls);
    auto sampled = brute_force_monotonicity_check(s, 10000, rng.next(), cls);
    EXPECT_EQ(closed.has_value(), sampled.has_value()) << "trial " << trial;
    if (closed) EXPECT_TRUE(closed->verify(s, kApprox)) << closed->describe();
  }
}

TEST(SingleCrossingTest, ClosedFormCases) {
  EXPECT_EQ(single_crossing_check(WeightFunction::identity(), UtilityClassSpec::full()).verdict,
            SingleCrossingResult::Verdict::kHolds);
  EXPECT_EQ(single_crossing_check(WeightFunction::sqrt(), UtilityClassSpec::power_family(0, Scalar::ratio(1, 2))).verdict,
            SingleCrossingResult::Verdict::kHolds);
  auto bad = single_crossing_check(WeightFunction::power(Scalar::ratio(1, 3)),
                                   UtilityClassSpec::power_family(0, Scalar::ratio(1, 2)));
  ASSERT_EQ(bad.verdict, SingleCrossingResult::Verdict::kCounterexample);
  const auto& ce = *bad.counterexample;
  auto f = WeightFunction::power(Scalar::ratio(1, 3));
  EXPECT_GT(d(ce.price_level * f(ce.x)), d(evaluate(ce.utility, ce.x)));
  EXPECT_LE(d(ce.price_level * f(ce.x_later)), d(evaluate(ce.utility, ce.x_later)));
  EXPECT_LT(d(ce.x), d(ce.x_later));
}

TEST(SingleCrossingTest, SqrtAgainstFullClassCrossesTwice) {
  auto r = single_crossing_check(WeightFunction::sqrt(), UtilityClassSpec::full());
  ASSERT_EQ(r.verdict, SingleCrossingResult::Verdict::kCounterexample);
  const auto& ce = *r.counterexample;
  EXPECT_GT(d(ce.price_level) * std::sqrt(d(ce.x)), d(evaluate(ce.utility, ce.x)));
  EXPECT_LE(d(ce.price_level) * std::sqrt(d(ce.x_later)), d(evaluate(ce.utility, ce.x_later)) + 1e-12);
  // The hand example: U(x) = x, C = 0.9.
  EXPECT_GT(0.9 * std::sqrt(0.25), 0.25);
  EXPECT_LT(0.9 * std::sqrt(1.0), 1.0);
}

// The closed form for power weights against the grid search.
TEST(SingleCrossingTest, PowerClosedFormAgreesWithGrid) {
  for (int qi = 1; qi <= 6; ++qi) {
    Scalar q = Scalar::ratio(qi, 6);
    for (int ki = 1; ki <= 6; ++ki) {
      Scalar k = Scalar::ratio(ki, 6);
      bool holds = single_crossing_check(WeightFunction::power(q), UtilityClassSpec::power_family(k, k)).verdict ==
                   SingleCrossingResult::Verdict::kHolds;
      // Grid: once C x^q exceeds x^k it must stay above. Scaling U is the
      // same as scaling C, so c = 1 suffices.
      bool grid_ok = true;
      for (double c : {0.3, 0.7, 1.0, 1.5, 3.0}) {
        bool seen_above = false;
        for (int j = 1; j <= 400; ++j) {
          double x = j / 400.0;
          double diff = c * std::pow(x, d(q)) - std::pow(x, d(k));
          if (diff > 1e-12) seen_above = true;
          if (seen_above && diff < -1e-12) grid_ok = false;
        }
      }
      EXPECT_EQ(holds, grid_ok) << "q=" << q << " k=" << k;
    }
  }
}

}  // namespace
}  // namespace monagg
