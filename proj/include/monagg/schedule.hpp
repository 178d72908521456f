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

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "monagg/buyer_set.hpp"
#include "monagg/scalar.hpp"
#include "monagg/utility.hpp"

namespace monagg {

// Resource shares x and payment shares y bound to one buyer subset.
struct ShareVectorPair {
  std::vector<Scalar> x;
  std::vector<Scalar> y;
  friend bool operator==(const ShareVectorPair&, const ShareVectorPair&) = default;
};

// Checks size n, non-negativity, support inside `subset` and unit sums.
// Returns a description of the first problem, if any.
std::optional<std::string> check_share_pair(const ShareVectorPair& pair, BuyerSet subset, int n,
                                            const NumericPolicy& policy);

// The concave weight f that turns RRAS resource shares into payment shares.
class WeightFunction {
 public:
  enum class Kind { kIdentity, kSqrt, kPower, kExplicitConcave };

  static WeightFunction identity() { return WeightFunction(Kind::kIdentity, Scalar(1), {}); }
  static WeightFunction sqrt() { return WeightFunction(Kind::kSqrt, Scalar::ratio(1, 2), {}); }
  // x^k, 0 < k <= 1.
  static WeightFunction power(const Scalar& k);
  // Piecewise-linear through knots spanning [0,1]; must be concave and
  // non-negative. f(0) may be positive.
  static WeightFunction explicit_concave(std::vector<Knot> knots);

  Kind kind() const { return kind_; }
  // The exponent q when f(x) = x^q.
  std::optional<Scalar> power_exponent() const;
  Scalar operator()(const Scalar& x) const;
  std::string describe() const;

 private:
  WeightFunction(Kind kind, Scalar q, std::vector<Knot> knots)
      : kind_(kind), exponent_(std::move(q)), knots_(std::move(knots)) {}
  Kind kind_;
  Scalar exponent_;
  std::vector<Knot> knots_;
};

// Resource shares when the buyers outside `subset` leave: the highest-ranked
// member of the subset collects their base shares, every other member keeps
// its own, non-members get 0. `order` lists buyers from highest rank down.
std::vector<Scalar> rras_resource_shares(std::span<const int> order, std::span<const Scalar> base,
                                         BuyerSet subset);

// y_i = f(x_i) / sum_{j in subset} f(x_j) for members, 0 otherwise. Throws
// ScheduleError when the denominator is zero.
std::vector<Scalar> rras_payment_shares(const WeightFunction& f, std::span<const Scalar> x,
                                        BuyerSet subset);

// The per-subset share vectors a mechanism announces before soliciting
// reports. Value type; all providers except kTable compute on demand.
class ShareSchedule {
 public:
  enum class Kind { kEqualSplit, kTable, kCmss, kRras };
  using Table = std::map<BuyerSet, ShareVectorPair>;
  using ResourceTable = std::map<BuyerSet, std::vector<Scalar>>;

  static constexpr int kMaxTableBuyers = 12;

  static ShareSchedule equal_split(int n);
  // Explicit (x, y) per subset; each entry is validated on construction.
  // Subsets without an entry raise ScheduleError when queried.
  static ShareSchedule table(int n, Table entries);
  // Cross-monotonic schedule with y = x, resource shares given per subset.
  static ShareSchedule cmss(int n, ResourceTable resource_shares);
  // Cross-monotonic schedule with y = x, resource shares from the ranked
  // reallocation rule.
  static ShareSchedule cmss_ranked(std::vector<int> order, std::vector<Scalar> base);
  static ShareSchedule rras(std::vector<int> order, std::vector<Scalar> base, WeightFunction f);

  int buyer_count() const { return n_; }
  Kind kind() const { return kind_; }
  std::string describe() const;
  const WeightFunction* weight() const;

  // Throws DomainError for an empty subset or one outside {0..n-1}.
  ShareVectorPair shares_for(BuyerSet subset) const;

  // Sorted distinct positive resource shares buyer `i` can receive.
  std::vector<Scalar> share_points(int buyer) const;

  // Largest utility class the construction targets: the full concave class,
  // except RRAS with f = x^q (q < 1), which targets {c x^k : k <= q}.
  UtilityClassSpec natural_class() const;

  // Same schedule with every subset precomputed (n <= 12). Shares are
  // identical; lookups become O(1).
  ShareSchedule materialized() const;

 private:
  struct EqualSplitRule {};
  struct TableRule {
    Table entries;
  };
  struct CmssTableRule {
    ResourceTable shares;
  };
  struct RankedRule {
    std::vector<int> order;
    std::vector<Scalar> base;
    std::optional<WeightFunction> weight;  // nullopt: y = x
  };
  using Rule = std::variant<EqualSplitRule, TableRule, CmssTableRule, RankedRule>;

  ShareSchedule(int n, Kind kind, Rule rule) : n_(n), kind_(kind), rule_(std::move(rule)) {}
  ShareVectorPair compute(BuyerSet subset) const;

  int n_;
  Kind kind_;
  Rule rule_;
  std::shared_ptr<const std::vector<std::optional<ShareVectorPair>>> dense_;
};

inline ShareVectorPair shares_for(const ShareSchedule& schedule, BuyerSet subset) {
  return schedule.shares_for(subset);
}

}  // namespace monagg
