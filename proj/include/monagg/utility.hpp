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
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "monagg/scalar.hpp"

namespace monagg {

struct Knot {
  Scalar x;
  Scalar u;
  friend bool operator==(const Knot&, const Knot&) = default;
};

enum class ClassViolationKind {
  kEmpty,
  kFirstKnotNotAtZero,
  kNonZeroAtOrigin,
  kOutOfRange,
  kNotIncreasing,
  kDecreasing,
  kNotConcave,
  kLastKnotNotAtOne,
};

std::string_view to_string(ClassViolationKind kind);

struct ClassViolation {
  ClassViolationKind kind;
  std::size_t index;  // knot at which the check failed
  std::string message() const;
};

// Checks that the piecewise-linear function through `knots` is a member of
// the concave class: starts at (0,0), x strictly increasing up to x = 1,
// u non-decreasing, chord slopes non-increasing. Reports the first failure.
std::optional<ClassViolation> validate_class_c(std::span<const Knot> knots,
                                               const NumericPolicy& policy);
// Exact comparisons if every knot is exact, Approx(default eps) otherwise.
std::optional<ClassViolation> validate_class_c(std::span<const Knot> knots);

// A reported utility: piecewise-linear, concave, non-decreasing on [0,1]
// with U(0) = 0. Immutable once built.
class UtilityReport {
 public:
  // Throws InvalidReport when the knots fail validate_class_c.
  static UtilityReport from_knots(std::vector<Knot> knots);
  static UtilityReport from_knots(std::vector<Knot> knots, const NumericPolicy& policy);

  static UtilityReport zero();
  // slope * x
  static UtilityReport linear(const Scalar& slope);
  // slope * min(x, knee), 0 < knee <= 1
  static UtilityReport ramp(const Scalar& slope, const Scalar& knee);

  const std::vector<Knot>& knots() const { return knots_; }
  bool is_exact() const;
  Scalar at_one() const { return knots_.back().u; }

  Scalar operator()(const Scalar& x) const;
  UtilityReport scaled(const Scalar& factor) const;

  std::string describe() const;

  friend bool operator==(const UtilityReport&, const UtilityReport&) = default;

 private:
  UtilityReport() = default;
  std::vector<Knot> knots_;
};

// Linear interpolation between bracketing knots. Throws DomainError for x
// outside [0,1].
Scalar evaluate(const UtilityReport& u, const Scalar& x);

// c*x, c*x^k or c*ln(1+x). Used to generate reports, never as a report.
class ClosedFormUtility {
 public:
  enum class Kind { kLinear, kPower, kLog };

  static ClosedFormUtility linear(const Scalar& c);
  // Requires c >= 0 and 0 < k <= 1.
  static ClosedFormUtility power(const Scalar& c, const Scalar& k);
  static ClosedFormUtility log(const Scalar& c);

  Kind kind() const { return kind_; }
  const Scalar& c() const { return c_; }
  const Scalar& k() const { return k_; }

  Scalar operator()(const Scalar& x) const;
  std::string describe() const;

  friend bool operator==(const ClosedFormUtility&, const ClosedFormUtility&) = default;

 private:
  ClosedFormUtility(Kind kind, Scalar c, Scalar k) : kind_(kind), c_(std::move(c)), k_(std::move(k)) {}
  Kind kind_;
  Scalar c_;
  Scalar k_;
};

// Knots (p, f(p)) for every p in `points` plus 0 and 1. Points must lie in
// [0,1]; duplicates are dropped.
UtilityReport sample_report(const ClosedFormUtility& f, std::vector<Scalar> points);

// Random member of the class on {0} U points U {1}: integer slopes drawn,
// sorted non-increasing, integrated and rescaled so that U(1) <= u_max.
// Deterministic in `seed`. Exact whenever the points and u_max are.
UtilityReport random_concave_utility(std::uint64_t seed, std::span<const Scalar> points,
                                     const Scalar& u_max);

// The concave class itself, or its power subfamily {c*x^k : k in [k_min, k_max]}.
class UtilityClassSpec {
 public:
  enum class Kind { kFullClassC, kPowerFamily };

  static UtilityClassSpec full() { return UtilityClassSpec(Kind::kFullClassC, Scalar(0), Scalar(1)); }
  // 0 <= k_min <= k_max <= 1. k = 0 itself is never a member (it would
  // break U(0) = 0); k_min = 0 means "any k > 0".
  static UtilityClassSpec power_family(const Scalar& k_min, const Scalar& k_max);

  Kind kind() const { return kind_; }
  bool is_full() const { return kind_ == Kind::kFullClassC; }
  const Scalar& k_min() const { return k_min_; }
  const Scalar& k_max() const { return k_max_; }
  std::string describe() const;

 private:
  UtilityClassSpec(Kind kind, Scalar lo, Scalar hi) : kind_(kind), k_min_(std::move(lo)), k_max_(std::move(hi)) {}
  Kind kind_;
  Scalar k_min_;
  Scalar k_max_;
};

// A concrete class member produced as a witness by the validators.
using ClassMember = std::variant<ClosedFormUtility, UtilityReport>;

Scalar evaluate(const ClassMember& u, const Scalar& x);
std::string describe(const ClassMember& u);

}  // namespace monagg
