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

#include "monagg/analysis.hpp"

#include <algorithm>
#include <string>

#include "monagg/random.hpp"

namespace monagg {

namespace {

int sign_of(int c) { return (c > 0) - (c < 0); }

int compare_with(const Scalar& a, const Scalar& b, const NumericPolicy& policy) {
  if (policy.eq(a, b)) return 0;
  return a < b ? -1 : 1;
}

int compare_reports(const UtilityReport& a, const UtilityReport& b) {
  const auto& ka = a.knots();
  const auto& kb = b.knots();
  for (std::size_t i = 0; i < std::min(ka.size(), kb.size()); ++i) {
    if (int c = compare(ka[i].x, kb[i].x)) return sign_of(c);
    if (int c = compare(ka[i].u, kb[i].u)) return sign_of(c);
  }
  return ka.size() < kb.size() ? -1 : (ka.size() > kb.size() ? 1 : 0);
}

// Evaluates one joint report profile against every config.
class DeviationRunner {
 public:
  DeviationRunner(std::span<const UtilityReport> truth, const ShareSchedule& schedule,
                  std::span<const AuctionConfig> configs, const NumericPolicy& policy)
      : truth_(truth), schedule_(schedule), configs_(configs), policy_(policy) {
    before_.reserve(configs.size());
    for (const AuctionConfig& cfg : configs) {
      before_.push_back(preferences(outcome(compute_beta(truth_, schedule_, policy_), cfg)));
    }
  }

  void run(BuyerSet coalition, const std::vector<UtilityReport>& deviant, std::vector<DeviationViolation>& out) const {
    const BetaTrace trace = compute_beta(deviant, schedule_, policy_);
    for (std::size_t c = 0; c < configs_.size(); ++c) {
      std::vector<PreferenceOutcome> after = preferences(outcome(trace, configs_[c]));
      if (!improves(coalition, before_[c], after, compare_lexicographic)) continue;
      DeviationViolation v;
      v.coalition = coalition;
      v.truthful_reports.assign(truth_.begin(), truth_.end());
      v.deviant_reports = deviant;
      v.outside = configs_[c];
      v.before = before_[c];
      v.depends_on_extension = !improves(coalition, before_[c], after, compare_stated);
      v.after = std::move(after);
      out.push_back(std::move(v));
    }
  }

 private:
  using Comparator = int (*)(const PreferenceOutcome&, const PreferenceOutcome&, const NumericPolicy&);

  AllocationOutcome outcome(const BetaTrace& trace, const AuctionConfig& cfg) const {
    AuctionResult a = run_second_price(trace.beta_star, cfg, policy_);
    if (!a.group_won) return AllocationOutcome::nothing(schedule_.buyer_count());
    return allocate(trace, schedule_, a.clearing_price, policy_);
  }

  std::vector<PreferenceOutcome> preferences(const AllocationOutcome& o) const {
    std::vector<PreferenceOutcome> p;
    p.reserve(truth_.size());
    for (std::size_t i = 0; i < truth_.size(); ++i) p.push_back(preference_outcome(truth_[i], o, static_cast<int>(i)));
    return p;
  }

  bool improves(BuyerSet coalition, const std::vector<PreferenceOutcome>& before,
                const std::vector<PreferenceOutcome>& after, Comparator cmp) const {
    bool strict = false;
    for (int i : coalition) {
      int c = cmp(after[i], before[i], policy_);
      if (c < 0) return false;
      strict = strict || c > 0;
    }
    return strict;
  }

  std::span<const UtilityReport> truth_;
  const ShareSchedule& schedule_;
  std::span<const AuctionConfig> configs_;
  NumericPolicy policy_;
  std::vector<std::vector<PreferenceOutcome>> before_;
};

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > UINT64_MAX / a) return UINT64_MAX;
  return a * b;
}

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) { return b > UINT64_MAX - a ? UINT64_MAX : a + b; }

}  // namespace

std::vector<UtilityReport> realize_reports(std::span<const ClassMember> buyers, const ShareSchedule& schedule) {
  if (static_cast<int>(buyers.size()) != schedule.buyer_count()) {
    throw DomainError("got " + std::to_string(buyers.size()) + " buyers for a schedule over " +
                      std::to_string(schedule.buyer_count()));
  }
  std::vector<Scalar> points;
  for (int i = 0; i < schedule.buyer_count(); ++i) {
    for (Scalar& p : schedule.share_points(i)) points.push_back(std::move(p));
  }
  std::vector<UtilityReport> out;
  out.reserve(buyers.size());
  for (const ClassMember& b : buyers) {
    if (const auto* f = std::get_if<ClosedFormUtility>(&b)) {
      out.push_back(sample_report(*f, points));
    } else {
      out.push_back(std::get<UtilityReport>(b));
    }
  }
  return out;
}

PreferenceOutcome preference_outcome(const UtilityReport& true_utility, const AllocationOutcome& outcome,
                                     int buyer) {
  const Scalar& x = outcome.fractions.at(buyer);
  return {true_utility(x) - outcome.payments.at(buyer), x.sign() > 0};
}

int compare_lexicographic(const PreferenceOutcome& a, const PreferenceOutcome& b, const NumericPolicy& policy) {
  if (int c = compare_with(a.net, b.net, policy)) return c;
  return static_cast<int>(a.wins_nonzero) - static_cast<int>(b.wins_nonzero);
}

int compare_stated(const PreferenceOutcome& a, const PreferenceOutcome& b, const NumericPolicy& policy) {
  if (int c = compare_with(a.net, b.net, policy)) return c;
  if (!policy.eq(a.net, Scalar(0))) return 0;
  return static_cast<int>(a.wins_nonzero) - static_cast<int>(b.wins_nonzero);
}

std::vector<Scalar> default_grid_values() {
  return {Scalar(0), Scalar::ratio(1, 4), Scalar::ratio(1, 2), Scalar::ratio(3, 4), Scalar(1)};
}

std::vector<UtilityReport> build_power_grid(const ShareSchedule& schedule, const Scalar& u_max,
                                            std::span<const Scalar> values, std::span<const Scalar> exponents) {
  if (values.empty() || exponents.empty()) throw DomainError("power grid needs values and exponents");
  std::vector<Scalar> points;
  for (int i = 0; i < schedule.buyer_count(); ++i) {
    for (const Scalar& p : schedule.share_points(i)) points.push_back(p);
  }
  std::vector<UtilityReport> out;
  for (const Scalar& v : values) {
    for (const Scalar& k : exponents) {
      out.push_back(sample_report(ClosedFormUtility::power(v * u_max, k), points));
      if (v.is_zero()) break;  // 0 x^k is the same report for every k
    }
  }
  return out;
}

std::vector<Scalar> default_power_exponents(const Scalar& k_max) {
  std::vector<Scalar> out;
  for (int k = 1; k <= 8; ++k) {
    Scalar e = Scalar::ratio(k, 8);
    if (e <= k_max) out.push_back(std::move(e));
  }
  if (out.empty()) out.push_back(k_max);
  return out;
}

std::vector<UtilityReport> build_report_grid(const ShareSchedule& schedule, int buyer, const Scalar& u_max,
                                             std::span<const Scalar> values) {
  if (values.empty()) throw DomainError("report grid needs at least one value");
  std::vector<Scalar> points = schedule.share_points(buyer);
  std::erase_if(points, [](const Scalar& p) { return p.sign() <= 0; });
  if (points.empty() || points.back() != Scalar(1)) points.push_back(Scalar(1));
  const std::size_t m = points.size();

  std::vector<UtilityReport> out;
  std::vector<std::size_t> idx(m, 0);
  for (;;) {
    std::vector<Knot> knots{{Scalar(0), Scalar(0)}};
    for (std::size_t j = 0; j < m; ++j) knots.push_back({points[j], values[idx[j]] * u_max});
    if (!validate_class_c(knots, NumericPolicy::exact())) out.push_back(UtilityReport::from_knots(std::move(knots)));
    std::size_t j = 0;
    while (j < m && ++idx[j] == values.size()) idx[j++] = 0;
    if (j == m) break;
  }
  return out;
}

FuzzReport enumerate_coalition_deviations(std::span<const UtilityReport> true_utilities,
                                          const ShareSchedule& schedule, std::span<const AuctionConfig> configs,
                                          std::span<const std::vector<UtilityReport>> report_grid,
                                          const FuzzOptions& options) {
  const int n = schedule.buyer_count();
  if (n > 3) throw DomainError("coalition fuzzing supports at most 3 buyers");
  if (static_cast<int>(true_utilities.size()) != n || static_cast<int>(report_grid.size()) != n) {
    throw DomainError("need one true utility and one report grid per buyer");
  }
  if (configs.empty()) throw DomainError("need at least one auction config");
  for (const AuctionConfig& cfg : configs) cfg.validate();

  // Plan: exhaustive coalitions of size <= 2, then the sampled triple.
  struct Part {
    BuyerSet coalition;
    std::uint64_t full;
    std::uint64_t planned;
    bool sampled;
  };
  std::vector<Part> plan;
  std::vector<BuyerSet> coalitions;
  for_each_nonempty_subset(BuyerSet::all(n), [&](BuyerSet c) {
    if (c.size() <= options.max_coalition_size) coalitions.push_back(c);
  });
  std::stable_sort(coalitions.begin(), coalitions.end(),
                   [](BuyerSet a, BuyerSet b) { return a.size() < b.size(); });
  std::uint64_t exhaustive = 0;
  for (BuyerSet c : coalitions) {
    std::uint64_t full = 1;
    for (int i : c) full = saturating_mul(full, report_grid[i].size());
    if (c.size() <= 2) {
      plan.push_back({c, full, full, false});
      exhaustive = saturating_add(exhaustive, full);
    } else {
      plan.push_back({c, full, 0, true});
    }
  }
  for (Part& p : plan) {
    if (!p.sampled) continue;
    std::uint64_t want = options.triple_samples != 0
                             ? options.triple_samples
                             : (options.budget > exhaustive ? options.budget - exhaustive : 0);
    p.planned = std::min(want, p.full);
    p.sampled = p.planned < p.full;
  }

  FuzzReport report;
  for (const Part& p : plan) report.required = saturating_add(report.required, p.planned);
  if (report.required > options.budget) {
    if (options.budget_mode == BudgetMode::kRefuse) {
      throw BudgetExceeded("coalition search needs " + std::to_string(report.required) +
                               " deviation profiles; budget is " + std::to_string(options.budget),
                           report.required);
    }
    report.complete = false;
  }

  const ShareSchedule sched = schedule.materialized();
  DeviationRunner runner(true_utilities, sched, configs, options.policy);
  Rng rng(options.seed);
  std::uint64_t left = options.budget;
  for (const Part& p : plan) {
    std::vector<int> members = p.coalition.members();
    std::vector<UtilityReport> deviant(true_utilities.begin(), true_utilities.end());
    std::uint64_t count = std::min(p.planned, left);
    if (p.sampled) {
      for (std::uint64_t s = 0; s < count; ++s) {
        for (int i : members) deviant[i] = report_grid[i][rng.below(report_grid[i].size())];
        runner.run(p.coalition, deviant, report.violations);
      }
    } else {
      std::vector<std::size_t> idx(members.size(), 0);
      for (std::uint64_t s = 0; s < count; ++s) {
        for (std::size_t k = 0; k < members.size(); ++k) deviant[members[k]] = report_grid[members[k]][idx[k]];
        runner.run(p.coalition, deviant, report.violations);
        std::size_t k = 0;
        while (k < members.size() && ++idx[k] == report_grid[members[k]].size()) idx[k++] = 0;
      }
    }
    report.profiles += count;
    left -= count;
  }

  std::stable_sort(report.violations.begin(), report.violations.end(),
                   [](const DeviationViolation& a, const DeviationViolation& b) {
                     if (a.coalition != b.coalition) return a.coalition < b.coalition;
                     for (std::size_t i = 0; i < a.deviant_reports.size(); ++i) {
                       if (int c = compare_reports(a.deviant_reports[i], b.deviant_reports[i])) return c < 0;
                     }
                     return false;
                   });
  return report;
}

FuzzReport check_unilateral_truthfulness(std::span<const UtilityReport> true_utilities,
                                         const ShareSchedule& schedule, std::span<const AuctionConfig> configs,
                                         std::span<const std::vector<UtilityReport>> report_grid,
                                         const FuzzOptions& options) {
  FuzzOptions single = options;
  single.max_coalition_size = 1;
  return enumerate_coalition_deviations(true_utilities, schedule, configs, report_grid, single);
}

std::optional<ConsistencyWitness> check_individual_consistency(std::span<const UtilityReport> reports,
                                                               const ShareSchedule& schedule, const Scalar& price,
                                                               const NumericPolicy& policy) {
  AllocationOutcome o = allocate(compute_beta(reports, schedule, policy), schedule, price, policy);
  for (std::size_t i = 0; i < reports.size(); ++i) {
    if (!policy.gt(reports[i].at_one(), price)) continue;
    if (!o.purchased || !o.winning_set.contains(static_cast<int>(i))) {
      return ConsistencyWitness{static_cast<int>(i), o};
    }
  }
  return std::nullopt;
}

WelfareReport optimal_welfare(std::span<const UtilityReport> utilities) {
  struct Segment {
    Scalar slope;
    Scalar length;
    int buyer;
  };
  std::vector<Segment> segments;
  for (std::size_t i = 0; i < utilities.size(); ++i) {
    const auto& k = utilities[i].knots();
    for (std::size_t j = 1; j < k.size(); ++j) {
      Scalar dx = k[j].x - k[j - 1].x;
      segments.push_back({(k[j].u - k[j - 1].u) / dx, dx, static_cast<int>(i)});
    }
  }
  // Per buyer the slopes already decrease, so a stable sort keeps each
  // buyer's segments in order.
  std::stable_sort(segments.begin(), segments.end(),
                   [](const Segment& a, const Segment& b) { return a.slope > b.slope; });

  WelfareReport r;
  r.optimal_division.assign(utilities.size(), Scalar(0));
  Scalar left(1);
  for (const Segment& s : segments) {
    if (left.sign() <= 0 || s.slope.sign() <= 0) break;
    Scalar take = min(left, s.length);
    r.optimal_division[s.buyer] += take;
    left -= take;
  }
  r.optimal_welfare = Scalar(0);
  for (std::size_t i = 0; i < utilities.size(); ++i) r.optimal_welfare += utilities[i](r.optimal_division[i]);
  return r;
}

WelfareReport efficiency_gap(std::span<const UtilityReport> reports, const ShareSchedule& schedule,
                             const Scalar& price, const NumericPolicy& policy) {
  WelfareReport r = optimal_welfare(reports);
  AllocationOutcome o = allocate(compute_beta(reports, schedule, policy), schedule, price, policy);
  r.purchased_by_mechanism = o.purchased;
  r.mechanism_welfare = Scalar(0);
  if (o.purchased) {
    for (std::size_t i = 0; i < reports.size(); ++i) r.mechanism_welfare += reports[i](o.fractions[i]);
  }
  r.purchasable_optimally = policy.gt(r.optimal_welfare, price);
  return r;
}

std::string_view to_string(Dominance d) {
  switch (d) {
    case Dominance::kEqual:
      return "equal";
    case Dominance::kDominates:
      return "dominates";
    case Dominance::kDominated:
      return "dominated";
    case Dominance::kIncomparable:
      return "incomparable";
  }
  return "?";
}

Dominance compare_beta_vectors(std::span<const Scalar> a, std::span<const Scalar> b, const NumericPolicy& policy) {
  bool greater = false, less = false;
  for (std::size_t j = 0; j < std::max(a.size(), b.size()); ++j) {
    int c;
    if (j >= a.size()) {
      c = -1;
    } else if (j >= b.size()) {
      c = 1;
    } else {
      c = compare_with(a[j], b[j], policy);
    }
    greater = greater || c > 0;
    less = less || c < 0;
  }
  if (greater && less) return Dominance::kIncomparable;
  if (greater) return Dominance::kDominates;
  if (less) return Dominance::kDominated;
  return Dominance::kEqual;
}

ScheduleComparison compare_schedules(std::span<const ClassMember> buyers, std::span<const NamedSchedule> schedules,
                                     std::span<const Scalar> prices, const NumericPolicy& policy) {
  ScheduleComparison out;
  out.prices.assign(prices.begin(), prices.end());
  std::vector<std::vector<Scalar>> betas;
  for (const NamedSchedule& ns : schedules) {
    if (ns.schedule.buyer_count() != static_cast<int>(buyers.size())) {
      throw DomainError("schedule '" + ns.name + "' is over " + std::to_string(ns.schedule.buyer_count()) +
                        " buyers, scenario has " + std::to_string(buyers.size()));
    }
    ScheduleComparison::Row row;
    row.name = ns.name;
    std::vector<UtilityReport> reports = realize_reports(buyers, ns.schedule);
    row.trace = compute_beta(reports, ns.schedule, policy);
    for (const Scalar& p : prices) row.outcomes.push_back(allocate(row.trace, ns.schedule, p, policy));
    std::vector<Scalar> b;
    for (const BetaStep& s : row.trace.steps) b.push_back(s.beta);
    betas.push_back(std::move(b));
    out.rows.push_back(std::move(row));
  }
  out.dominance.assign(betas.size(), std::vector<Dominance>(betas.size(), Dominance::kEqual));
  for (std::size_t a = 0; a < betas.size(); ++a) {
    for (std::size_t b = 0; b < betas.size(); ++b) out.dominance[a][b] = compare_beta_vectors(betas[a], betas[b], policy);
  }
  return out;
}

}  // namespace monagg
