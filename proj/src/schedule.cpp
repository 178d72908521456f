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

#include "monagg/schedule.hpp"

#include <algorithm>
#include <numeric>

namespace monagg {

namespace {

bool all_exact(std::span<const Scalar> v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s.is_exact(); });
}

NumericPolicy policy_for(const ShareVectorPair& p) {
  return all_exact(p.x) && all_exact(p.y) ? NumericPolicy::exact() : NumericPolicy::approx();
}

void check_order_and_base(const std::vector<int>& order, const std::vector<Scalar>& base) {
  const int n = static_cast<int>(base.size());
  if (n == 0 || n > BuyerSet::kMaxBuyers) throw ScheduleError("ranked schedule needs 1..32 buyers");
  if (static_cast<int>(order.size()) != n) throw ScheduleError("rank order and base shares differ in length");
  std::vector<int> sorted = order;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < n; ++i) {
    if (sorted[i] != i) throw ScheduleError("rank order must be a permutation of 0..n-1");
  }
  Scalar total(0);
  for (const Scalar& b : base) {
    if (b.sign() < 0) throw ScheduleError("base shares must be non-negative");
    total += b;
  }
  NumericPolicy policy = all_exact(base) ? NumericPolicy::exact() : NumericPolicy::approx();
  if (!policy.eq(total, Scalar(1))) throw ScheduleError("base shares must sum to 1, got " + total.to_decimal());
}

void check_subset(BuyerSet subset, int n) {
  if (subset.empty()) throw DomainError("share vectors are undefined for the empty set");
  if (!subset.is_subset_of(BuyerSet::all(n))) {
    throw DomainError("subset " + subset.display() + " outside the " + std::to_string(n) + " buyers");
  }
}

}  // namespace

std::optional<std::string> check_share_pair(const ShareVectorPair& pair, BuyerSet subset, int n,
                                            const NumericPolicy& policy) {
  if (static_cast<int>(pair.x.size()) != n || static_cast<int>(pair.y.size()) != n) {
    return "share vectors must have " + std::to_string(n) + " entries";
  }
  Scalar sx(0);
  Scalar sy(0);
  for (int i = 0; i < n; ++i) {
    if (pair.x[i].sign() < 0 || pair.y[i].sign() < 0) return "negative share for buyer " + std::to_string(i);
    if (!subset.contains(i) && (pair.x[i].sign() > 0 || pair.y[i].sign() > 0)) {
      return "buyer " + std::to_string(i) + " outside the subset has a positive share";
    }
    sx += pair.x[i];
    sy += pair.y[i];
  }
  if (!policy.eq(sx, Scalar(1))) return "resource shares sum to " + sx.to_decimal() + ", not 1";
  if (!policy.eq(sy, Scalar(1))) return "payment shares sum to " + sy.to_decimal() + ", not 1";
  return std::nullopt;
}

WeightFunction WeightFunction::power(const Scalar& k) {
  if (k.sign() <= 0 || k > Scalar(1)) throw ConstructionError("weight exponent must lie in (0,1]");
  if (k == Scalar(1)) return identity();
  if (k == Scalar::ratio(1, 2)) return sqrt();
  return WeightFunction(Kind::kPower, k, {});
}

WeightFunction WeightFunction::explicit_concave(std::vector<Knot> knots) {
  if (knots.size() < 2) throw ConstructionError("weight function needs at least two knots");
  NumericPolicy policy = std::all_of(knots.begin(), knots.end(),
                                     [](const Knot& k) { return k.x.is_exact() && k.u.is_exact(); })
                             ? NumericPolicy::exact()
                             : NumericPolicy::approx();
  if (!knots.front().x.is_zero() || !policy.eq(knots.back().x, Scalar(1))) {
    throw ConstructionError("weight knots must span [0,1]");
  }
  for (std::size_t k = 0; k < knots.size(); ++k) {
    if (knots[k].u.sign() < 0) throw ConstructionError("weight function must be non-negative");
    if (k >= 1 && knots[k].x <= knots[k - 1].x) throw ConstructionError("weight knots must increase in x");
    if (k >= 2) {
      Scalar lhs = (knots[k].u - knots[k - 1].u) * (knots[k - 1].x - knots[k - 2].x);
      Scalar rhs = (knots[k - 1].u - knots[k - 2].u) * (knots[k].x - knots[k - 1].x);
      if (policy.gt(lhs, rhs)) throw ConstructionError("weight function not concave at knot " + std::to_string(k));
    }
  }
  knots.back().x = Scalar(1);
  return WeightFunction(Kind::kExplicitConcave, Scalar(0), std::move(knots));
}

std::optional<Scalar> WeightFunction::power_exponent() const {
  if (kind_ == Kind::kExplicitConcave) return std::nullopt;
  return exponent_;
}

Scalar WeightFunction::operator()(const Scalar& x) const {
  if (x.sign() < 0 || x > Scalar(1)) throw DomainError("weight evaluated outside [0,1]");
  switch (kind_) {
    case Kind::kIdentity: return x;
    case Kind::kSqrt: return monagg::sqrt(x);
    case Kind::kPower: return monagg::pow(x, exponent_);
    case Kind::kExplicitConcave: {
      auto it = std::lower_bound(knots_.begin(), knots_.end(), x,
                                 [](const Knot& k, const Scalar& v) { return k.x < v; });
      if (it->x == x) return it->u;
      const Knot& lo = *(it - 1);
      return lo.u + (it->u - lo.u) * (x - lo.x) / (it->x - lo.x);
    }
  }
  return Scalar(0);
}

std::string WeightFunction::describe() const {
  switch (kind_) {
    case Kind::kIdentity: return "identity";
    case Kind::kSqrt: return "sqrt";
    case Kind::kPower: return "power:" + exponent_.to_fraction();
    case Kind::kExplicitConcave: return "explicit(" + std::to_string(knots_.size()) + " knots)";
  }
  return "?";
}

std::vector<Scalar> rras_resource_shares(std::span<const int> order, std::span<const Scalar> base,
                                         BuyerSet subset) {
  if (subset.empty()) throw DomainError("share vectors are undefined for the empty set");
  const int n = static_cast<int>(base.size());
  std::vector<Scalar> x(n);
  int top = -1;
  for (int i : order) {
    if (subset.contains(i)) {
      top = i;
      break;
    }
  }
  if (top < 0) throw DomainError("subset " + subset.display() + " has no ranked member");
  for (int i = 0; i < n; ++i) {
    if (subset.contains(i)) {
      x[i] += base[i];
    } else {
      x[top] += base[i];
    }
  }
  return x;
}

std::vector<Scalar> rras_payment_shares(const WeightFunction& f, std::span<const Scalar> x,
                                        BuyerSet subset) {
  const int n = static_cast<int>(x.size());
  std::vector<Scalar> y(n);
  Scalar total(0);
  for (int i : subset) {
    y[i] = f(x[i]);
    total += y[i];
  }
  if (total.sign() <= 0) {
    throw ScheduleError("payment weights sum to zero on " + subset.display());
  }
  for (int i : subset) y[i] /= total;
  return y;
}

ShareSchedule ShareSchedule::equal_split(int n) {
  if (n < 1 || n > BuyerSet::kMaxBuyers) throw ScheduleError("equal split needs 1..32 buyers");
  return ShareSchedule(n, Kind::kEqualSplit, EqualSplitRule{});
}

ShareSchedule ShareSchedule::table(int n, Table entries) {
  if (n < 1 || n > kMaxTableBuyers) throw ScheduleError("explicit tables support 1..12 buyers");
  for (const auto& [subset, pair] : entries) {
    if (subset.empty() || !subset.is_subset_of(BuyerSet::all(n))) {
      throw ScheduleError("table entry for invalid subset " + subset.display());
    }
    if (auto problem = check_share_pair(pair, subset, n, policy_for(pair))) {
      throw ScheduleError("table entry " + subset.display() + ": " + *problem);
    }
  }
  return ShareSchedule(n, Kind::kTable, TableRule{std::move(entries)});
}

ShareSchedule ShareSchedule::cmss(int n, ResourceTable resource_shares) {
  if (n < 1 || n > kMaxTableBuyers) throw ScheduleError("explicit tables support 1..12 buyers");
  for (const auto& [subset, x] : resource_shares) {
    if (subset.empty() || !subset.is_subset_of(BuyerSet::all(n))) {
      throw ScheduleError("share entry for invalid subset " + subset.display());
    }
    ShareVectorPair pair{x, x};
    if (auto problem = check_share_pair(pair, subset, n, policy_for(pair))) {
      throw ScheduleError("share entry " + subset.display() + ": " + *problem);
    }
  }
  return ShareSchedule(n, Kind::kCmss, CmssTableRule{std::move(resource_shares)});
}

ShareSchedule ShareSchedule::cmss_ranked(std::vector<int> order, std::vector<Scalar> base) {
  check_order_and_base(order, base);
  const int n = static_cast<int>(base.size());
  return ShareSchedule(n, Kind::kCmss, RankedRule{std::move(order), std::move(base), std::nullopt});
}

ShareSchedule ShareSchedule::rras(std::vector<int> order, std::vector<Scalar> base, WeightFunction f) {
  check_order_and_base(order, base);
  const int n = static_cast<int>(base.size());
  return ShareSchedule(n, Kind::kRras, RankedRule{std::move(order), std::move(base), std::move(f)});
}

std::string ShareSchedule::describe() const {
  switch (kind_) {
    case Kind::kEqualSplit: return "equal-split";
    case Kind::kTable: return "table";
    case Kind::kCmss: return "cmss";
    case Kind::kRras: return "rras(" + std::get<RankedRule>(rule_).weight->describe() + ")";
  }
  return "?";
}

const WeightFunction* ShareSchedule::weight() const {
  if (const auto* r = std::get_if<RankedRule>(&rule_); r && r->weight) return &*r->weight;
  return nullptr;
}

ShareVectorPair ShareSchedule::shares_for(BuyerSet subset) const {
  check_subset(subset, n_);
  if (dense_) {
    if (const auto& hit = (*dense_)[subset.bits()]) return *hit;
  }
  return compute(subset);
}

ShareVectorPair ShareSchedule::compute(BuyerSet subset) const {
  struct Visitor {
    const ShareSchedule& self;
    BuyerSet subset;

    ShareVectorPair operator()(const EqualSplitRule&) const {
      std::vector<Scalar> x(self.n_);
      const Scalar share = Scalar::ratio(1, subset.size());
      for (int i : subset) x[i] = share;
      return {x, x};
    }
    ShareVectorPair operator()(const TableRule& t) const {
      auto it = t.entries.find(subset);
      if (it == t.entries.end()) throw ScheduleError("no share entry for subset " + subset.display());
      return it->second;
    }
    ShareVectorPair operator()(const CmssTableRule& t) const {
      auto it = t.shares.find(subset);
      if (it == t.shares.end()) throw ScheduleError("no share entry for subset " + subset.display());
      return {it->second, it->second};
    }
    ShareVectorPair operator()(const RankedRule& r) const {
      std::vector<Scalar> x = rras_resource_shares(r.order, r.base, subset);
      if (!r.weight) return {x, x};
      std::vector<Scalar> y = rras_payment_shares(*r.weight, x, subset);
      return {std::move(x), std::move(y)};
    }
  };
  return std::visit(Visitor{*this, subset}, rule_);
}

std::vector<Scalar> ShareSchedule::share_points(int buyer) const {
  if (buyer < 0 || buyer >= n_) throw DomainError("buyer index out of range");
  std::vector<Scalar> points;
  if (kind_ == Kind::kEqualSplit) {
    for (int k = 1; k <= n_; ++k) points.push_back(Scalar::ratio(1, k));
  } else {
    if (n_ > 16 && !dense_) throw DomainError("share point enumeration limited to 16 buyers");
    for_each_nonempty_subset(BuyerSet::all(n_), [&](BuyerSet s) {
      if (!s.contains(buyer)) return;
      Scalar x = shares_for(s).x[buyer];
      if (x.sign() > 0) points.push_back(std::move(x));
    });
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  return points;
}

UtilityClassSpec ShareSchedule::natural_class() const {
  if (const WeightFunction* f = weight()) {
    if (auto q = f->power_exponent(); q && *q < Scalar(1)) {
      return UtilityClassSpec::power_family(Scalar(0), *q);
    }
  }
  return UtilityClassSpec::full();
}

ShareSchedule ShareSchedule::materialized() const {
  if (dense_) return *this;
  if (n_ > kMaxTableBuyers) throw DomainError("materialization limited to 12 buyers");
  auto dense = std::make_shared<std::vector<std::optional<ShareVectorPair>>>(std::size_t{1} << n_);
  for_each_nonempty_subset(BuyerSet::all(n_), [&](BuyerSet s) {
    try {
      (*dense)[s.bits()] = compute(s);
    } catch (const ScheduleError&) {
      // left empty; querying it recomputes and raises the same error
    }
  });
  ShareSchedule copy = *this;
  copy.dense_ = std::move(dense);
  return copy;
}

}  // namespace monagg
