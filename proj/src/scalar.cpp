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

#include "monagg/scalar.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace monagg {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

Integer pow10(unsigned e) {
  Integer r = 1;
  for (unsigned i = 0; i < e; ++i) r *= 10;
  return r;
}

// Exact decimal parser: [+-]digits[.digits][(e|E)[+-]digits]
Rational parse_decimal(std::string_view s, std::string_view original) {
  auto fail = [&]() -> Rational {
    throw DomainError("not a number: \"" + std::string(original) + "\"");
  };
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  Integer mantissa = 0;
  long long scale = 0;
  bool any_digit = false;
  bool seen_point = false;
  while (!s.empty()) {
    char c = s.front();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mantissa = mantissa * 10 + (c - '0');
      if (seen_point) ++scale;
      any_digit = true;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
    s.remove_prefix(1);
  }
  if (!any_digit) return fail();
  long long exponent = 0;
  if (!s.empty() && (s.front() == 'e' || s.front() == 'E')) {
    s.remove_prefix(1);
    bool exp_negative = false;
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
      exp_negative = s.front() == '-';
      s.remove_prefix(1);
    }
    if (s.empty()) return fail();
    while (!s.empty() && std::isdigit(static_cast<unsigned char>(s.front()))) {
      exponent = exponent * 10 + (s.front() - '0');
      if (exponent > 4000) return fail();
      s.remove_prefix(1);
    }
    if (exp_negative) exponent = -exponent;
  }
  if (!s.empty()) return fail();
  long long shift = exponent - scale;
  Rational r;
  if (shift >= 0) {
    r = Rational(mantissa * pow10(static_cast<unsigned>(shift)));
  } else {
    r = Rational(mantissa, pow10(static_cast<unsigned>(-shift)));
  }
  return negative ? Rational(-r) : r;
}

bool exact_integer_sqrt(const Integer& v, Integer& root) {
  if (v < 0) return false;
  root = boost::multiprecision::sqrt(v);
  return root * root == v;
}

}  // namespace

Scalar Scalar::ratio(long long num, long long den) {
  if (den == 0) throw DomainError("zero denominator");
  return Scalar(Rational(num, den));
}

Scalar Scalar::approx(double v) {
  if (!std::isfinite(v)) throw DomainError("non-finite value");
  Scalar s;
  s.value_ = v;
  return s;
}

Scalar Scalar::parse(std::string_view text) {
  std::string_view s = trim(text);
  if (s.empty()) throw DomainError("empty number");
  auto slash = s.find('/');
  if (slash == std::string_view::npos) return Scalar(parse_decimal(s, text));
  Rational num = parse_decimal(trim(s.substr(0, slash)), text);
  Rational den = parse_decimal(trim(s.substr(slash + 1)), text);
  if (den == 0) throw DomainError("zero denominator in \"" + std::string(text) + "\"");
  return Scalar(Rational(num / den));
}

const Rational& Scalar::rational() const {
  if (const auto* r = std::get_if<Rational>(&value_)) return *r;
  throw DomainError("value is not exact");
}

double Scalar::to_double() const {
  if (const auto* r = std::get_if<Rational>(&value_)) return r->convert_to<double>();
  return std::get<double>(value_);
}

int Scalar::sign() const {
  if (const auto* r = std::get_if<Rational>(&value_)) return r->sign();
  double d = std::get<double>(value_);
  return (d > 0) - (d < 0);
}

std::string Scalar::to_decimal(int significant) const {
  double d = to_double();
  if (d == 0.0) return "0";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", significant, d);
  std::string out(buf);
  // %g already trims trailing zeros; normalise "-0".
  if (out == "-0") out = "0";
  return out;
}

std::string Scalar::to_fraction() const {
  if (!is_exact()) return to_decimal();
  const Rational& r = std::get<Rational>(value_);
  Integer num = boost::multiprecision::numerator(r);
  Integer den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Scalar Scalar::operator-() const {
  if (const auto* r = std::get_if<Rational>(&value_)) return Scalar(Rational(-*r));
  return approx(-std::get<double>(value_));
}

Scalar& Scalar::operator+=(const Scalar& o) {
  if (is_exact() && o.is_exact()) {
    std::get<Rational>(value_) += std::get<Rational>(o.value_);
  } else {
    value_ = to_double() + o.to_double();
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  if (is_exact() && o.is_exact()) {
    std::get<Rational>(value_) -= std::get<Rational>(o.value_);
  } else {
    value_ = to_double() - o.to_double();
  }
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  if (is_exact() && o.is_exact()) {
    std::get<Rational>(value_) *= std::get<Rational>(o.value_);
  } else {
    value_ = to_double() * o.to_double();
  }
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  if (o.is_zero()) throw DomainError("division by zero");
  if (is_exact() && o.is_exact()) {
    std::get<Rational>(value_) /= std::get<Rational>(o.value_);
  } else {
    value_ = to_double() / o.to_double();
  }
  return *this;
}

int compare(const Scalar& a, const Scalar& b) {
  if (a.is_exact() && b.is_exact()) {
    const auto& x = std::get<Rational>(a.value_);
    const auto& y = std::get<Rational>(b.value_);
    return (x > y) - (x < y);
  }
  double x = a.to_double();
  double y = b.to_double();
  return (x > y) - (x < y);
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_decimal(); }

Scalar abs(const Scalar& s) { return s.sign() < 0 ? -s : s; }
const Scalar& min(const Scalar& a, const Scalar& b) { return b < a ? b : a; }
const Scalar& max(const Scalar& a, const Scalar& b) { return a < b ? b : a; }

Scalar sqrt(const Scalar& s) {
  if (s.sign() < 0) throw DomainError("sqrt of a negative value");
  if (s.is_exact()) {
    const Rational& r = s.rational();
    Integer num_root;
    Integer den_root;
    if (exact_integer_sqrt(boost::multiprecision::numerator(r), num_root) &&
        exact_integer_sqrt(boost::multiprecision::denominator(r), den_root)) {
      return Scalar(Rational(num_root, den_root));
    }
  }
  return Scalar::approx(std::sqrt(s.to_double()));
}

Scalar pow(const Scalar& base, const Scalar& exponent) {
  if (base.sign() < 0) throw DomainError("pow of a negative base");
  if (exponent == Scalar(1)) return base;
  if (exponent.is_zero()) return Scalar(1);
  if (base.is_exact() && (base.is_zero() || base == Scalar(1))) {
    if (base.is_zero() && exponent.sign() < 0) throw DomainError("pow(0, negative)");
    return base;
  }
  if (exponent == Scalar::ratio(1, 2)) return sqrt(base);
  return Scalar::approx(std::pow(base.to_double(), exponent.to_double()));
}

Scalar log1p(const Scalar& x) {
  if (compare(x, Scalar(-1)) <= 0) throw DomainError("log1p argument must exceed -1");
  if (x.is_exact() && x.is_zero()) return Scalar(0);
  return Scalar::approx(std::log1p(x.to_double()));
}

NumericPolicy NumericPolicy::approx(double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) throw DomainError("epsilon must be positive and finite");
  return NumericPolicy(Kind::kApprox, eps);
}

bool NumericPolicy::eq(const Scalar& a, const Scalar& b) const {
  if (is_exact()) return a == b;
  return std::fabs(a.to_double() - b.to_double()) <= eps_;
}

bool NumericPolicy::lt(const Scalar& a, const Scalar& b) const {
  if (is_exact()) return a < b;
  return a.to_double() < b.to_double() - eps_;
}

bool NumericPolicy::le(const Scalar& a, const Scalar& b) const {
  if (is_exact()) return a <= b;
  return a.to_double() <= b.to_double() + eps_;
}

bool NumericPolicy::eq_scaled(const Scalar& a, const Scalar& b, const Scalar& scale) const {
  if (is_exact()) return a == b;
  double tol = eps_ * std::max(1.0, std::fabs(scale.to_double()));
  return std::fabs(a.to_double() - b.to_double()) <= tol;
}

}  // namespace monagg
