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

#include "monagg/utility.hpp"

#include <algorithm>
#include <sstream>

#include "monagg/random.hpp"

namespace monagg {

std::string_view to_string(ClassViolationKind kind) {
  switch (kind) {
    case ClassViolationKind::kEmpty: return "empty";
    case ClassViolationKind::kFirstKnotNotAtZero: return "first-knot-not-at-zero";
    case ClassViolationKind::kNonZeroAtOrigin: return "nonzero-at-origin";
    case ClassViolationKind::kOutOfRange: return "out-of-range";
    case ClassViolationKind::kNotIncreasing: return "x-not-increasing";
    case ClassViolationKind::kDecreasing: return "decreasing";
    case ClassViolationKind::kNotConcave: return "not-concave";
    case ClassViolationKind::kLastKnotNotAtOne: return "last-knot-not-at-one";
  }
  return "unknown";
}

std::string ClassViolation::message() const {
  const std::string at = " at knot " + std::to_string(index);
  switch (kind) {
    case ClassViolationKind::kEmpty: return "no knots";
    case ClassViolationKind::kFirstKnotNotAtZero: return "first knot must be at x=0";
    case ClassViolationKind::kNonZeroAtOrigin: return "U(0) must be 0" + at;
    case ClassViolationKind::kOutOfRange: return "x outside [0,1]" + at;
    case ClassViolationKind::kNotIncreasing: return "x not strictly increasing" + at;
    case ClassViolationKind::kDecreasing: return "decreasing" + at;
    case ClassViolationKind::kNotConcave: return "not concave" + at;
    case ClassViolationKind::kLastKnotNotAtOne: return "last knot must be at x=1" + at;
  }
  return "invalid" + at;
}

namespace {

bool all_exact(std::span<const Knot> knots) {
  return std::all_of(knots.begin(), knots.end(),
                     [](const Knot& k) { return k.x.is_exact() && k.u.is_exact(); });
}

NumericPolicy default_policy(std::span<const Knot> knots) {
  return all_exact(knots) ? NumericPolicy::exact() : NumericPolicy::approx();
}

}  // namespace

std::optional<ClassViolation> validate_class_c(std::span<const Knot> knots,
                                               const NumericPolicy& policy) {
  using K = ClassViolationKind;
  if (knots.empty()) return ClassViolation{K::kEmpty, 0};
  if (!policy.eq(knots[0].x, Scalar(0))) return ClassViolation{K::kFirstKnotNotAtZero, 0};
  if (!policy.eq(knots[0].u, Scalar(0))) return ClassViolation{K::kNonZeroAtOrigin, 0};
  for (std::size_t k = 1; k < knots.size(); ++k) {
    const Knot& cur = knots[k];
    const Knot& prev = knots[k - 1];
    if (cur.x <= prev.x) return ClassViolation{K::kNotIncreasing, k};
    if (policy.gt(cur.x, Scalar(1))) return ClassViolation{K::kOutOfRange, k};
    if (policy.lt(cur.u, prev.u)) return ClassViolation{K::kDecreasing, k};
    if (k >= 2) {
      const Knot& before = knots[k - 2];
      // slope(prev, cur) <= slope(before, prev), cross-multiplied
      // (both run lengths are positive).
      Scalar lhs = (cur.u - prev.u) * (prev.x - before.x);
      Scalar rhs = (prev.u - before.u) * (cur.x - prev.x);
      if (policy.gt(lhs, rhs)) return ClassViolation{K::kNotConcave, k};
    }
  }
  if (!policy.eq(knots.back().x, Scalar(1))) {
    return ClassViolation{K::kLastKnotNotAtOne, knots.size() - 1};
  }
  return std::nullopt;
}

std::optional<ClassViolation> validate_class_c(std::span<const Knot> knots) {
  return validate_class_c(knots, default_policy(knots));
}

UtilityReport UtilityReport::from_knots(std::vector<Knot> knots) {
  NumericPolicy policy = default_policy(knots);
  return from_knots(std::move(knots), policy);
}

UtilityReport UtilityReport::from_knots(std::vector<Knot> knots, const NumericPolicy& policy) {
  if (auto violation = validate_class_c(knots, policy)) {
    throw InvalidReport(violation->message());
  }
  // Snap the end points so evaluation at 0 and 1 hits a knot exactly.
  knots.front() = Knot{Scalar(0), Scalar(0)};
  knots.back().x = Scalar(1);
  UtilityReport r;
  r.knots_ = std::move(knots);
  return r;
}

UtilityReport UtilityReport::zero() { return linear(Scalar(0)); }

UtilityReport UtilityReport::linear(const Scalar& slope) {
  if (slope.sign() < 0) throw ConstructionError("slope must be non-negative");
  return from_knots({{Scalar(0), Scalar(0)}, {Scalar(1), slope}});
}

UtilityReport UtilityReport::ramp(const Scalar& slope, const Scalar& knee) {
  if (slope.sign() < 0) throw ConstructionError("slope must be non-negative");
  if (knee.sign() <= 0 || knee > Scalar(1)) throw ConstructionError("ramp knee must lie in (0,1]");
  if (knee == Scalar(1)) return linear(slope);
  return from_knots({{Scalar(0), Scalar(0)}, {knee, slope * knee}, {Scalar(1), slope * knee}});
}

bool UtilityReport::is_exact() const { return all_exact(knots_); }

Scalar UtilityReport::operator()(const Scalar& x) const { return evaluate(*this, x); }

UtilityReport UtilityReport::scaled(const Scalar& factor) const {
  if (factor.sign() < 0) throw DomainError("scale factor must be non-negative");
  UtilityReport r = *this;
  for (Knot& k : r.knots_) k.u *= factor;
  return r;
}

std::string UtilityReport::describe() const {
  std::ostringstream os;
  os << "knots[";
  for (std::size_t i = 0; i < knots_.size(); ++i) {
    if (i) os << ' ';
    os << '(' << knots_[i].x.to_fraction() << ',' << knots_[i].u.to_fraction() << ')';
  }
  os << ']';
  return os.str();
}

Scalar evaluate(const UtilityReport& u, const Scalar& x) {
  if (x.sign() < 0 || x > Scalar(1)) {
    throw DomainError("utility evaluated outside [0,1] at x=" + x.to_decimal());
  }
  const auto& knots = u.knots();
  auto it = std::lower_bound(knots.begin(), knots.end(), x,
                             [](const Knot& k, const Scalar& v) { return k.x < v; });
  if (it == knots.end()) return knots.back().u;  // unreachable: last knot is at 1
  if (it->x == x) return it->u;
  const Knot& hi = *it;
  const Knot& lo = *(it - 1);
  return lo.u + (hi.u - lo.u) * (x - lo.x) / (hi.x - lo.x);
}

ClosedFormUtility ClosedFormUtility::linear(const Scalar& c) {
  if (c.sign() < 0) throw ConstructionError("linear utility needs c >= 0");
  return ClosedFormUtility(Kind::kLinear, c, Scalar(1));
}

ClosedFormUtility ClosedFormUtility::power(const Scalar& c, const Scalar& k) {
  if (c.sign() < 0) throw ConstructionError("power utility needs c >= 0");
  if (k.sign() <= 0 || k > Scalar(1)) throw ConstructionError("power utility needs 0 < k <= 1");
  return ClosedFormUtility(Kind::kPower, c, k);
}

ClosedFormUtility ClosedFormUtility::log(const Scalar& c) {
  if (c.sign() < 0) throw ConstructionError("log utility needs c >= 0");
  return ClosedFormUtility(Kind::kLog, c, Scalar(0));
}

Scalar ClosedFormUtility::operator()(const Scalar& x) const {
  if (x.sign() < 0 || x > Scalar(1)) throw DomainError("utility evaluated outside [0,1]");
  if (c_.is_zero()) return Scalar(0);
  switch (kind_) {
    case Kind::kLinear: return c_ * x;
    case Kind::kPower: return c_ * pow(x, k_);
    case Kind::kLog: return c_ * log1p(x);
  }
  return Scalar(0);
}

std::string ClosedFormUtility::describe() const {
  switch (kind_) {
    case Kind::kLinear: return c_.to_fraction() + "*x";
    case Kind::kPower: return c_.to_fraction() + "*x^" + k_.to_fraction();
    case Kind::kLog: return c_.to_fraction() + "*ln(1+x)";
  }
  return "?";
}

UtilityReport sample_report(const ClosedFormUtility& f, std::vector<Scalar> points) {
  for (const Scalar& p : points) {
    if (p.sign() < 0 || p > Scalar(1)) throw DomainError("sample point outside [0,1]: " + p.to_decimal());
  }
  points.push_back(Scalar(0));
  points.push_back(Scalar(1));
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  std::vector<Knot> knots;
  knots.reserve(points.size());
  for (Scalar& p : points) {
    Scalar value = f(p);
    knots.push_back({std::move(p), std::move(value)});
  }
  return UtilityReport::from_knots(std::move(knots));
}

UtilityReport random_concave_utility(std::uint64_t seed, std::span<const Scalar> points,
                                     const Scalar& u_max) {
  if (u_max.sign() <= 0) throw DomainError("u_max must be positive");
  std::vector<Scalar> xs(points.begin(), points.end());
  for (const Scalar& p : xs) {
    if (p.sign() <= 0 || p > Scalar(1)) throw DomainError("points must lie in (0,1]");
  }
  xs.push_back(Scalar(1));
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  constexpr long long kSlopeSteps = 1000;
  Rng rng(seed);
  std::vector<long long> slopes(xs.size());
  for (auto& s : slopes) s = rng.between(0, kSlopeSteps);
  std::sort(slopes.begin(), slopes.end(), std::greater<>());

  std::vector<Knot> knots;
  knots.push_back({Scalar(0), Scalar(0)});
  Scalar prev_x(0);
  Scalar total(0);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    total += Scalar(slopes[i]) * (xs[i] - prev_x);
    knots.push_back({xs[i], total});
    prev_x = xs[i];
  }
  Scalar target = u_max * Scalar::ratio(rng.between(0, kSlopeSteps), kSlopeSteps);
  if (total.is_zero() || target.is_zero()) {
    for (Knot& k : knots) k.u = Scalar(0);
  } else {
    Scalar factor = target / total;
    for (Knot& k : knots) k.u *= factor;
  }
  return UtilityReport::from_knots(std::move(knots));
}

UtilityClassSpec UtilityClassSpec::power_family(const Scalar& k_min, const Scalar& k_max) {
  if (k_min.sign() < 0 || k_max < k_min || k_max > Scalar(1) || k_max.is_zero()) {
    throw ConstructionError("power family needs 0 <= k_min <= k_max <= 1 and k_max > 0");
  }
  return UtilityClassSpec(Kind::kPowerFamily, k_min, k_max);
}

std::string UtilityClassSpec::describe() const {
  if (is_full()) return "concave class";
  return "power family k in [" + k_min_.to_fraction() + ", " + k_max_.to_fraction() + "]";
}

Scalar evaluate(const ClassMember& u, const Scalar& x) {
  return std::visit([&](const auto& f) { return f(x); }, u);
}

std::string describe(const ClassMember& u) {
  return std::visit([](const auto& f) { return f.describe(); }, u);
}

}  // namespace monagg
