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

// Fixtures shared by the unit tests: the three-buyer running example and the
// ranked reallocation instance, plus small random generators.

#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "monagg/random.hpp"
#include "monagg/schedule.hpp"
#include "monagg/utility.hpp"

namespace monagg::testing {

inline std::vector<Scalar> share_points_union(const ShareSchedule& s) {
  std::vector<Scalar> pts;
  for (int i = 0; i < s.buyer_count(); ++i) {
    for (const Scalar& p : s.share_points(i)) pts.push_back(p);
  }
  return pts;
}

// x, sqrt(x), ln(1+x) sampled at the equal-split shares of three buyers.
inline std::vector<UtilityReport> running_example_reports() {
  ShareSchedule s = ShareSchedule::equal_split(3);
  std::vector<Scalar> pts = share_points_union(s);
  return {sample_report(ClosedFormUtility::linear(1), pts),
          sample_report(ClosedFormUtility::power(1, Scalar::ratio(1, 2)), pts),
          sample_report(ClosedFormUtility::log(1), pts)};
}

inline std::vector<int> ranked_order() { return {0, 1, 2}; }
inline std::vector<Scalar> ranked_base() { return {Scalar::ratio(1, 2), Scalar::ratio(1, 4), Scalar::ratio(1, 4)}; }

// x^(1/4), x^(1/3), x^(1/2) at the shares the ranked schedules can produce.
inline std::vector<UtilityReport> ranked_example_reports(const ShareSchedule& s) {
  std::vector<Scalar> pts = share_points_union(s);
  return {sample_report(ClosedFormUtility::power(1, Scalar::ratio(1, 4)), pts),
          sample_report(ClosedFormUtility::power(1, Scalar::ratio(1, 3)), pts),
          sample_report(ClosedFormUtility::power(1, Scalar::ratio(1, 2)), pts)};
}

// Random exact shares over `subset` with denominator `den`.
inline std::vector<Scalar> random_shares(Rng& rng, int n, BuyerSet subset, int den, bool allow_zero) {
  std::vector<long long> w(n, 0);
  long long total = 0;
  for (int i : subset) {
    w[i] = rng.between(allow_zero ? 0 : 1, 6);
    total += w[i];
  }
  if (total == 0) {
    w[subset.first()] = 1;
    total = 1;
  }
  std::vector<Scalar> out(n, Scalar(0));
  // Quantize to 1/den while keeping the exact sum 1.
  long long assigned = 0;
  int last = -1;
  for (int i : subset) {
    long long q = w[i] * den / total;
    out[i] = Scalar::ratio(q, den);
    assigned += q;
    last = i;
  }
  out[last] = out[last] + Scalar::ratio(den - assigned, den);
  return out;
}

inline std::vector<UtilityReport> random_reports(Rng& rng, const ShareSchedule& s, const Scalar& u_max) {
  std::vector<UtilityReport> out;
  for (int i = 0; i < s.buyer_count(); ++i) {
    std::vector<Scalar> pts = s.share_points(i);
    std::erase_if(pts, [](const Scalar& p) { return p.sign() <= 0; });
    out.push_back(random_concave_utility(rng.next(), pts, u_max));
  }
  return out;
}

// Three buyers; buyer 0's resource share doubles when buyer 2 leaves while
// its payment share stays at 1/3, which breaks monotonicity.
inline ShareSchedule witness_table() {
  ShareSchedule::Table t;
  auto third = Scalar::ratio(1, 3);
  auto half = Scalar::ratio(1, 2);
  t[BuyerSet{0, 1, 2}] = {{third, third, third}, {third, third, third}};
  t[BuyerSet{0, 1}] = {{Scalar::ratio(2, 3), third, 0}, {third, Scalar::ratio(2, 3), 0}};
  t[BuyerSet{0, 2}] = {{half, 0, half}, {half, 0, half}};
  t[BuyerSet{1, 2}] = {{0, half, half}, {0, half, half}};
  for (int i = 0; i < 3; ++i) {
    std::vector<Scalar> e(3, Scalar(0));
    e[i] = 1;
    t[BuyerSet::single(i)] = {e, e};
  }
  return ShareSchedule::table(3, std::move(t));
}

inline double d(const Scalar& s) { return s.to_double(); }

}  // namespace monagg::testing
