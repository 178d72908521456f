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

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>

#include "monagg/errors.hpp"

namespace monagg {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// A number that is either an exact rational or a binary double. Arithmetic
// stays exact while both operands are exact; as soon as an inexact operand
// or an irrational function (sqrt, pow, log) is involved the result is a
// double. How two Scalars are compared for equality is decided by a
// NumericPolicy, not by the Scalar itself.
class Scalar {
 public:
  Scalar() : value_(Rational(0)) {}
  Scalar(int v) : value_(Rational(v)) {}  // NOLINT: implicit by intent
  Scalar(long long v) : value_(Rational(v)) {}  // NOLINT
  Scalar(Rational v) : value_(std::move(v)) {}  // NOLINT

  static Scalar ratio(long long num, long long den);
  static Scalar approx(double v);

  // Accepts "p/q", plain decimals ("0.45", "-3", "1.5e-3"). Decimal and
  // rational strings are parsed exactly.
  static Scalar parse(std::string_view text);

  bool is_exact() const { return std::holds_alternative<Rational>(value_); }
  const Rational& rational() const;
  double to_double() const;

  int sign() const;
  bool is_zero() const { return sign() == 0; }

  // Decimal with at most `significant` significant digits, trailing zeros
  // trimmed ("0.2", "1", "0.863046217355343").
  std::string to_decimal(int significant = 15) const;
  // "p/q" or "p" for exact values; falls back to to_decimal() otherwise.
  std::string to_fraction() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  // Raw comparisons: exact when both sides are rational, double otherwise.
  // No tolerance is applied here.
  friend int compare(const Scalar& a, const Scalar& b);
  friend bool operator==(const Scalar& a, const Scalar& b) { return compare(a, b) == 0; }
  friend bool operator<(const Scalar& a, const Scalar& b) { return compare(a, b) < 0; }
  friend bool operator<=(const Scalar& a, const Scalar& b) { return compare(a, b) <= 0; }
  friend bool operator>(const Scalar& a, const Scalar& b) { return compare(a, b) > 0; }
  friend bool operator>=(const Scalar& a, const Scalar& b) { return compare(a, b) >= 0; }

 private:
  std::variant<Rational, double> value_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

Scalar abs(const Scalar& s);
const Scalar& min(const Scalar& a, const Scalar& b);
const Scalar& max(const Scalar& a, const Scalar& b);
// Exact when the argument is a rational perfect square.
Scalar sqrt(const Scalar& s);
// Exact for exponent 1, exponent 1/2 on perfect squares, and bases 0 or 1.
Scalar pow(const Scalar& base, const Scalar& exponent);
// ln(1 + x); exact only at x = 0.
Scalar log1p(const Scalar& x);

// How Scalars are compared. Exact: plain comparisons. Approx(eps): values
// within eps are equal, a < b means a < b - eps and a <= b means a <= b + eps.
class NumericPolicy {
 public:
  enum class Kind { kExact, kApprox };

  static constexpr double kDefaultEpsilon = 1e-9;

  static NumericPolicy exact() { return NumericPolicy(Kind::kExact, 0.0); }
  static NumericPolicy approx(double eps = kDefaultEpsilon);

  Kind kind() const { return kind_; }
  bool is_exact() const { return kind_ == Kind::kExact; }
  double epsilon() const { return eps_; }

  bool eq(const Scalar& a, const Scalar& b) const;
  bool lt(const Scalar& a, const Scalar& b) const;
  bool le(const Scalar& a, const Scalar& b) const;
  bool gt(const Scalar& a, const Scalar& b) const { return lt(b, a); }
  bool ge(const Scalar& a, const Scalar& b) const { return le(b, a); }
  // Equality with the tolerance widened to eps * max(1, |scale|).
  bool eq_scaled(const Scalar& a, const Scalar& b, const Scalar& scale) const;

  friend bool operator==(const NumericPolicy&, const NumericPolicy&) = default;

 private:
  NumericPolicy(Kind k, double eps) : kind_(k), eps_(eps) {}
  Kind kind_;
  double eps_;
};

}  // namespace monagg
