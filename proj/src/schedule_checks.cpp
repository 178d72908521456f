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

#include <cmath>
#include <limits>
#include <sstream>

#include "monagg/random.hpp"

namespace monagg {

namespace {

using Failure = std::pair<ClassMember, Scalar>;

ClassMember scale_member(const ClassMember& u, const Scalar& factor) {
  if (const auto* r = std::get_if<UtilityReport>(&u)) return r->scaled(factor);
  const auto& f = std::get<ClosedFormUtility>(u);
  switch (f.kind()) {
    case ClosedFormUtility::Kind::kLinear: return ClosedFormUtility::linear(f.c() * factor);
    case ClosedFormUtility::Kind::kPower: return ClosedFormUtility::power(f.c() * factor, f.k());
    case ClosedFormUtility::Kind::kLog: return ClosedFormUtility::log(f.c() * factor);
  }
  return u;
}

// Scale U and C together until the premise holds with more than the
// policy's margin; the implication is invariant under joint scaling.
Failure with_margin(ClassMember u, Scalar c, const Scalar& b, const Scalar& yb,
                    const NumericPolicy& policy) {
  if (policy.is_exact()) return {std::move(u), std::move(c)};
  double gap = (c * yb - evaluate(u, b)).to_double();
  double want = 4.0 * policy.epsilon();
  if (gap > 0 && gap <= want) {
    Scalar factor = Scalar::approx(want / gap);
    u = scale_member(u, factor);
    c *= factor;
  }
  return {std::move(u), std::move(c)};
}

std::optional<Failure> full_class_failure(const Scalar& a, const Scalar& b, const Scalar& ya,
                                          const Scalar& yb, const NumericPolicy& policy) {
  const Scalar zero(0);
  if (!policy.gt(yb, zero)) return std::nullopt;
  if (!policy.gt(ya, zero)) return Failure{UtilityReport::zero(), Scalar(1)};
  if (!policy.gt(a, zero)) return std::nullopt;
  if (!policy.gt(b, zero)) {
    return Failure{UtilityReport::linear(Scalar(2) * ya / a), Scalar(1)};
  }
  if (policy.ge(a, b)) {
    if (policy.ge(ya * b, a * yb)) return std::nullopt;
    Scalar c = (b / yb + a / ya) / Scalar(2);
    return with_margin(UtilityReport::linear(Scalar(1)), c, b, yb, policy);
  }
  if (policy.ge(ya, yb)) return std::nullopt;
  Scalar c = (a / yb + a / ya) / Scalar(2);
  return with_margin(UtilityReport::ramp(Scalar(1), a), c, b, yb, policy);
}

std::optional<Failure> power_family_failure(const UtilityClassSpec& cls, const Scalar& a,
                                            const Scalar& b, const Scalar& ya, const Scalar& yb,
                                            const NumericPolicy& policy) {
  const Scalar zero(0);
  if (!policy.gt(yb, zero)) return std::nullopt;
  if (!policy.gt(ya, zero)) return Failure{ClosedFormUtility::power(zero, cls.k_max()), Scalar(1)};
  if (!policy.gt(a, zero)) return std::nullopt;
  if (!policy.gt(b, zero)) {
    Scalar c = pow(a, cls.k_max()) / ya / Scalar(2);
    return with_margin(ClosedFormUtility::power(Scalar(1), cls.k_max()), c, b, yb, policy);
  }
  auto fails_at = [&](const Scalar& k) { return policy.gt(pow(a, k) * yb, pow(b, k) * ya); };
  auto witness_at = [&](const Scalar& k) {
    Scalar c = (pow(b, k) / yb + pow(a, k) / ya) / Scalar(2);
    return with_margin(ClosedFormUtility::power(Scalar(1), k), c, b, yb, policy);
  };
  if (fails_at(cls.k_max())) return witness_at(cls.k_max());
  if (cls.k_min().sign() > 0) {
    if (fails_at(cls.k_min())) return witness_at(cls.k_min());
  } else if (policy.lt(ya, yb)) {
    // k -> 0+: a^k / ya -> 1 / ya exceeds 1 / yb. Find a k > 0 that shows it.
    double ratio_y = std::log(ya.to_double() / yb.to_double());  // < 0
    double ratio_x = std::log(a.to_double() / b.to_double());
    double k = cls.k_max().to_double();
    if (ratio_x < 0) k = std::min(k, 0.5 * ratio_y / ratio_x);
    return witness_at(Scalar::approx(k));
  }
  return std::nullopt;
}

std::vector<ShareVectorPair> all_pairs(const ShareSchedule& schedule, int max_n) {
  const int n = schedule.buyer_count();
  if (n > max_n) throw DomainError("schedule has " + std::to_string(n) + " buyers; limit is " + std::to_string(max_n));
  std::vector<ShareVectorPair> pairs(std::size_t{1} << n);
  for_each_nonempty_subset(BuyerSet::all(n), [&](BuyerSet s) { pairs[s.bits()] = schedule.shares_for(s); });
  return pairs;
}

// Visits (i, A = B \ {j}, B) for every B and j in B, i in A.
template <typename Fn>
auto for_each_single_deletion(int n, Fn&& fn) -> decltype(fn(0, BuyerSet{}, BuyerSet{})) {
  decltype(fn(0, BuyerSet{}, BuyerSet{})) result;
  for_each_nonempty_subset(BuyerSet::all(n), [&](BuyerSet larger) {
    if (result || larger.size() < 2) return;
    for (int j : larger) {
      BuyerSet smaller = larger.without(j);
      for (int i : smaller) {
        if (result) return;
        result = fn(i, smaller, larger);
      }
    }
  });
  return result;
}

}  // namespace

std::string CrossMonotonicityWitness::describe() const {
  std::ostringstream os;
  os << "buyer " << buyer + 1 << ": x(" << smaller.display() << ") = " << share_smaller.to_decimal()
     << " < x(" << larger.display() << ") = " << share_larger.to_decimal();
  return os.str();
}

std::optional<CrossMonotonicityWitness> validate_cross_monotonic(const ShareSchedule& schedule,
                                                                 const NumericPolicy& policy,
                                                                 int max_n) {
  const auto pairs = all_pairs(schedule, max_n);
  return for_each_single_deletion(
      schedule.buyer_count(),
      [&](int i, BuyerSet smaller, BuyerSet larger) -> std::optional<CrossMonotonicityWitness> {
        const Scalar& xa = pairs[smaller.bits()].x[i];
        const Scalar& xb = pairs[larger.bits()].x[i];
        if (policy.lt(xa, xb)) return CrossMonotonicityWitness{i, smaller, larger, xa, xb};
        return std::nullopt;
      });
}

bool violates_monotonicity(const ShareVectorPair& smaller, const ShareVectorPair& larger, int buyer,
                           const ClassMember& utility, const Scalar& price_level,
                           const NumericPolicy& policy) {
  const Scalar ub = evaluate(utility, larger.x[buyer]);
  if (!policy.lt(ub, price_level * larger.y[buyer])) return false;
  const Scalar ua = evaluate(utility, smaller.x[buyer]);
  return ua >= price_level * smaller.y[buyer];
}

bool MonotonicityWitness::verify(const ShareSchedule& schedule, const NumericPolicy& policy) const {
  if (!smaller.contains(buyer) || !smaller.is_subset_of(larger)) return false;
  return violates_monotonicity(schedule.shares_for(smaller), schedule.shares_for(larger), buyer, utility,
                               price_level, policy);
}

std::string MonotonicityWitness::describe() const {
  std::ostringstream os;
  os << "buyer " << buyer + 1 << ", A=" << smaller.display() << " within B=" << larger.display()
     << ", U(x)=" << monagg::describe(utility) << ", C=" << price_level.to_decimal();
  return os.str();
}

std::optional<MonotonicityWitness> validate_monotonicity(const ShareSchedule& schedule,
                                                         const UtilityClassSpec& cls,
                                                         const NumericPolicy& policy, int max_n) {
  const auto pairs = all_pairs(schedule, max_n);
  return for_each_single_deletion(
      schedule.buyer_count(),
      [&](int i, BuyerSet smaller, BuyerSet larger) -> std::optional<MonotonicityWitness> {
        const ShareVectorPair& pa = pairs[smaller.bits()];
        const ShareVectorPair& pb = pairs[larger.bits()];
        auto failure = cls.is_full() ? full_class_failure(pa.x[i], pb.x[i], pa.y[i], pb.y[i], policy)
                                     : power_family_failure(cls, pa.x[i], pb.x[i], pa.y[i], pb.y[i], policy);
        if (!failure) return std::nullopt;
        return MonotonicityWitness{i, smaller, larger, std::move(failure->first), std::move(failure->second)};
      });
}

std::optional<MonotonicityWitness> validate_monotonicity_class_c(const ShareSchedule& schedule,
                                                                 const NumericPolicy& policy, int max_n) {
  return validate_monotonicity(schedule, UtilityClassSpec::full(), policy, max_n);
}

namespace {

Scalar random_unit(Rng& rng, long long steps = 1000) { return Scalar::ratio(rng.between(1, steps), steps); }

ClassMember sample_member(const UtilityClassSpec& cls, const Scalar& a, const Scalar& b, Rng& rng) {
  const Scalar slope = random_unit(rng) * Scalar(2);
  if (!cls.is_full()) {
    Scalar k;
    switch (rng.below(3)) {
      case 0: k = cls.k_max(); break;
      case 1:
        k = cls.k_min().sign() > 0 ? cls.k_min()
                                   : cls.k_max() * Scalar::ratio(1, 1LL << rng.between(1, 20));
        break;
      default: {
        double lo = cls.k_min().to_double();
        double hi = cls.k_max().to_double();
        k = Scalar::approx(lo + (hi - lo) * rng.unit());
        if (k.sign() <= 0) k = cls.k_max();
      }
    }
    return ClosedFormUtility::power(slope, k);
  }
  switch (rng.below(8)) {
    case 0: return UtilityReport::zero();
    case 1:
    case 2: return UtilityReport::linear(slope);
    case 3:
    case 4: {
      Scalar knee = random_unit(rng);
      if (rng.coin() && a.sign() > 0) knee = a;
      else if (rng.coin() && b.sign() > 0) knee = b;
      return UtilityReport::ramp(slope, knee);
    }
    default: {
      std::vector<Scalar> points{random_unit(rng), random_unit(rng)};
      if (a.sign() > 0) points.push_back(a);
      if (b.sign() > 0) points.push_back(b);
      return random_concave_utility(rng.next(), points, Scalar(2));
    }
  }
}

Scalar sample_price_level(const ClassMember& u, const Scalar& b, const Scalar& yb, Rng& rng) {
  Scalar threshold = yb.sign() > 0 ? evaluate(u, b) / yb : Scalar(1);
  if (rng.below(10) < 7) {
    Scalar bump = Scalar::ratio(1, 1LL << rng.between(1, 20));
    if (threshold.is_zero()) return bump;
    return threshold * (Scalar(1) + bump);
  }
  return random_unit(rng, 4000) * max(threshold, Scalar(1)) * Scalar(4);
}

}  // namespace

std::optional<MonotonicityWitness> brute_force_monotonicity_check(const ShareSchedule& schedule,
                                                                  std::size_t samples, std::uint64_t seed,
                                                                  const UtilityClassSpec& cls,
                                                                  const NumericPolicy& policy) {
  const int n = schedule.buyer_count();
  if (n > 8) throw DomainError("sampling oracle is limited to 8 buyers");
  const auto pairs = all_pairs(schedule, 8);
  const std::uint32_t full = BuyerSet::all(n).bits();
  Rng rng(seed);
  for (std::size_t s = 0; s < samples; ++s) {
    BuyerSet larger(static_cast<std::uint32_t>(rng.between(1, full)));
    auto members = larger.members();
    int i = members[rng.below(members.size())];
    BuyerSet smaller = BuyerSet(static_cast<std::uint32_t>(rng.next()) & larger.bits()).with(i);
    const ShareVectorPair& pa = pairs[smaller.bits()];
    const ShareVectorPair& pb = pairs[larger.bits()];
    ClassMember u = sample_member(cls, pa.x[i], pb.x[i], rng);
    Scalar c = sample_price_level(u, pb.x[i], pb.y[i], rng);
    if (violates_monotonicity(pa, pb, i, u, c, policy)) {
      return MonotonicityWitness{i, smaller, larger, std::move(u), std::move(c)};
    }
  }
  return std::nullopt;
}

namespace {

std::vector<ClassMember> grid_members(const UtilityClassSpec& cls, int grid) {
  std::vector<ClassMember> out;
  if (cls.is_full()) {
    out.emplace_back(UtilityReport::linear(Scalar(1)));
    for (int j = 1; j < grid; ++j) out.emplace_back(UtilityReport::ramp(Scalar(1), Scalar::ratio(j, grid)));
    for (int j = 1; j <= grid; ++j) out.emplace_back(ClosedFormUtility::power(Scalar(1), Scalar::ratio(j, grid)));
    out.emplace_back(ClosedFormUtility::log(Scalar(1)));
  } else {
    const Scalar lo = cls.k_min();
    const Scalar span = cls.k_max() - lo;
    for (int j = 0; j <= grid; ++j) {
      Scalar k = lo + span * Scalar::ratio(j, grid);
      if (k.sign() <= 0) k = cls.k_max() * Scalar::ratio(1, 4 * grid);
      out.emplace_back(ClosedFormUtility::power(Scalar(1), k));
    }
  }
  return out;
}

}  // namespace

SingleCrossingResult single_crossing_check(const WeightFunction& f, const UtilityClassSpec& cls, int grid) {
  using V = SingleCrossingResult::Verdict;
  if (grid < 16) throw DomainError("single crossing grid needs at least 16 points");
  const auto q = f.power_exponent();

  if (q && !cls.is_full()) {
    // C x^q > c x^k  <=>  C / c > x^(k - q): persists to the right iff k <= q.
    if (*q >= cls.k_max()) return {V::kHolds, std::nullopt};
    const Scalar& k = cls.k_max();
    double gap = (k - *q).to_double();
    Scalar x = Scalar::approx(std::pow(0.5, 1.0 / gap) / 2.0);
    return {V::kCounterexample,
            SingleCrossingCounterexample{ClosedFormUtility::power(Scalar(1), k), Scalar::ratio(1, 2), x, Scalar(1)}};
  }
  if (q && *q == Scalar(1) && cls.is_full()) {
    // Star-shapedness: U(x)/x is non-increasing for every concave U with U(0) = 0.
    return {V::kHolds, std::nullopt};
  }

  std::vector<Scalar> xs;
  std::vector<Scalar> fx;
  for (int j = 0; j <= grid; ++j) {
    xs.push_back(Scalar::ratio(j, grid));
    fx.push_back(f(xs.back()));
  }
  for (const ClassMember& u : grid_members(cls, grid)) {
    std::optional<std::size_t> best;  // earlier point with the smallest U/f
    double best_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < xs.size(); ++j) {
      double uj = evaluate(u, xs[j]).to_double();
      double fj = fx[j].to_double();
      double ratio = fj > 0 ? uj / fj : std::numeric_limits<double>::infinity();
      if (best && ratio > best_ratio * (1 + 1e-12) + 1e-15) {
        double c = std::isinf(ratio) ? best_ratio * 2 + 1 : 0.5 * (best_ratio + ratio);
        return {V::kCounterexample,
                SingleCrossingCounterexample{u, Scalar::approx(c), xs[*best], xs[j]}};
      }
      if (fj > 0 && ratio < best_ratio) {
        best_ratio = ratio;
        best = j;
      }
    }
  }
  return {V::kHoldsAtResolution, std::nullopt};
}

}  // namespace monagg
