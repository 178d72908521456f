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

// Acceptance checks. Prints one [PASS]/[FAIL] line per criterion and exits
// non-zero when any asserted criterion fails. AC8 is a report: it archives
// counterexamples instead of failing.

#include <nlohmann/json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "monagg/analysis.hpp"
#include "monagg/auction.hpp"
#include "monagg/mechanism.hpp"
#include "monagg/random.hpp"
#include "monagg/report_io.hpp"
#include "monagg/scenario.hpp"
#include "monagg/schedule_checks.hpp"
#include "test_support.hpp"

namespace monagg {
namespace {

using Clock = std::chrono::steady_clock;

const std::string kDir = MONAGG_SCENARIO_DIR;

// Tolerances pinned by the criteria.
constexpr double kValueTol = 1e-9;
constexpr double kMechanismBudgetMs = 1.0;
constexpr double kFuzzBudgetSeconds = 300.0;
constexpr std::uint64_t kTripleProfiles = 100'000;

struct Verdict {
  bool pass = true;
  std::string detail;
  bool asserted = true;
};

class Notes {
 public:
  void fail(const std::string& what) {
    ok_ = false;
    if (first_.empty()) first_ = what;
  }
  void check(bool cond, const std::string& what) {
    if (!cond) fail(what);
  }
  bool ok() const { return ok_; }
  std::string first() const { return first_; }

 private:
  bool ok_ = true;
  std::string first_;
};

bool near(const Scalar& a, double b, double tol = kValueTol) { return std::abs(a.to_double() - b) <= tol; }

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::vector<UtilityReport> scenario_reports(const Scenario& sc) { return realize_reports(sc.buyers, sc.schedule); }

AuctionConfig rival(const char* bid, const char* reserve = "0", TiePolicy tie = TiePolicy::kGroupWins) {
  AuctionConfig c;
  c.reserve = Scalar::parse(reserve);
  c.competing_bids.push_back(Scalar::parse(bid));
  c.tie_policy = tie;
  return c;
}

std::vector<int> shuffled_order(Rng& rng, int n) {
  std::vector<int> order(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
  for (int i = n - 1; i > 0; --i) std::swap(order[static_cast<std::size_t>(i)], order[rng.below(static_cast<std::uint64_t>(i) + 1)]);
  return order;
}

// --- AC1 ------------------------------------------------------------------

Verdict ac1() {
  const Scenario sc = load_scenario(kDir + "/example1.json");
  const std::vector<UtilityReport> reports = scenario_reports(sc);
  const Scalar price = *sc.fixed_price;
  Notes n;

  const AllocationOutcome o = allocate(compute_beta(reports, sc.schedule, sc.policy), sc.schedule, price, sc.policy);
  n.check(o.purchased && o.winning_set == (BuyerSet{0, 1}), "winners " + o.winning_set.display());
  const double pay[] = {0.45, 0.45, 0.0};
  const double frac[] = {0.5, 0.5, 0.0};
  for (std::size_t i = 0; i < 3; ++i) {
    n.check(near(o.payments[i], pay[i]), "payment " + std::to_string(i + 1) + " = " + o.payments[i].to_decimal());
    n.check(near(o.fractions[i], frac[i]), "fraction " + std::to_string(i + 1));
  }
  const AllocationOutcome fp = fixed_price_outcome(reports, sc.schedule, price, sc.policy);
  n.check(fp.winning_set == o.winning_set, "fixed-price removal disagrees");

  // Median of single runs: reports, trace and allocation.
  std::vector<double> ms;
  for (int k = 0; k < 201; ++k) {
    const auto t0 = Clock::now();
    const std::vector<UtilityReport> r = realize_reports(sc.buyers, sc.schedule);
    const AllocationOutcome x = allocate(compute_beta(r, sc.schedule, sc.policy), sc.schedule, price, sc.policy);
    ms.push_back(seconds_since(t0) * 1e3);
    n.check(x == o, "repeat run differs");
  }
  std::nth_element(ms.begin(), ms.begin() + 100, ms.end());
  const double median = ms[100];
  n.check(median < kMechanismBudgetMs, "runtime " + std::to_string(median) + " ms");

  std::ostringstream d;
  d << "winners " << o.winning_set.display() << ", payments " << o.payments[0].to_decimal() << "/"
    << o.payments[1].to_decimal() << "/" << o.payments[2].to_decimal() << ", median " << std::setprecision(3)
    << median << " ms";
  return {n.ok(), n.ok() ? d.str() : n.first() + "; " + d.str()};
}

// --- AC2 ------------------------------------------------------------------

Verdict ac2() {
  const Scenario sc = load_scenario(kDir + "/example2.json");
  const std::vector<UtilityReport> reports = scenario_reports(sc);
  Notes n;
  const BetaTrace t = compute_beta(reports, sc.schedule, sc.policy);
  const double b1 = 3 * std::log(4.0 / 3.0);
  n.check(t.steps.size() == 3, "trace length");
  if (t.steps.size() == 3) {
    n.check(near(t.steps[0].beta, b1), "beta_1 = " + t.steps[0].beta.to_decimal());
    n.check(near(t.steps[0].beta, 0.8630462173553426), "beta_1 digits");
    n.check(near(t.steps[1].beta, 1) && near(t.steps[2].beta, 1), "beta_2, beta_3");
  }
  n.check(near(t.beta_star, 1), "bid " + t.beta_star.to_decimal());

  const ParticipationResult p = run_group_participation(reports, sc.schedule, *sc.auction, sc.policy);
  n.check(p.auction.group_won && near(p.auction.clearing_price, 0.6), "auction at 0.6");
  for (std::size_t i = 0; i < 3; ++i) n.check(near(p.outcome.payments[i], 0.2), "payment at 0.6");
  n.check(p.outcome.winning_set == BuyerSet::all(3), "winners at 0.6");

  const AllocationOutcome o9 = allocate(t, sc.schedule, Scalar::parse("0.9"), sc.policy);
  n.check(o9.winning_set == (BuyerSet{0, 1}), "winners at 0.9 " + o9.winning_set.display());
  n.check(near(o9.payments[0], 0.45) && near(o9.payments[1], 0.45) && near(o9.payments[2], 0), "payments at 0.9");

  std::ostringstream d;
  d << "beta (" << t.steps[0].beta.to_decimal(10) << ", 1, 1), bid 1; 0.6 -> 0.2 each; 0.9 -> {1,2} 0.45 each";
  return {n.ok(), n.ok() ? d.str() : n.first()};
}

// --- AC3 ------------------------------------------------------------------

struct Printed {
  double value;
  int decimals;
};

Verdict ac3() {
  const Scenario sc = load_scenario(kDir + "/section6-table.json");
  const ScheduleComparison cmp = compare_schedules(sc.buyers, sc.named_schedules, sc.prices, sc.policy);
  Notes n;

  // Symbolic minima of the three ratios at each step:
  //   RRAS {1,2,3}: buyer 3 binds, (1/4)^(1/2) (sqrt(1/2) + 1) / (1/2) = 1 + sqrt(2)/2
  //   RRAS {1,2}:   buyer 1 binds, (3/4)^(1/4) * (1 + 1/sqrt(3))
  //   CMSS {1,2,3}: buyer 1 binds, (1/2)^(1/4) / (1/2) = 2^(3/4)
  //   CMSS {2,3}:   buyer 2 binds, (3/4)^(1/3) / (3/4) = (4/3)^(2/3)
  //   last buyer alone: U(1) / 1 = 1
  const std::vector<double> rras_sym{1 + std::sqrt(2.0) / 2, std::pow(0.75, 0.25) * (1 + 1 / std::sqrt(3.0)), 1.0};
  const std::vector<double> cmss_sym{std::pow(2.0, 0.75), std::pow(4.0 / 3.0, 2.0 / 3.0), 1.0};
  const std::vector<Printed> rras_paper{{1.707, 3}, {1.467, 3}, {1, 0}};
  const std::vector<Printed> cmss_paper{{1.68, 2}, {1.21, 2}, {1, 0}};

  // Independent check of the symbolic forms: recompute each step as the
  // minimum of the three member ratios from the share formulas.
  {
    const double r2 = std::sqrt(0.5), half = 0.5;
    const double y1 = r2 / (r2 + 1), y23 = half / (r2 + 1);
    const double step1 = std::min({std::pow(0.5, 0.25) / y1, std::pow(0.25, 1.0 / 3) / y23, std::pow(0.25, 0.5) / y23});
    const double s34 = std::sqrt(0.75);
    const double step2 = std::min(std::pow(0.75, 0.25) / (s34 / (s34 + half)), std::pow(0.25, 1.0 / 3) / (half / (s34 + half)));
    n.check(std::abs(step1 - rras_sym[0]) < kValueTol && std::abs(step2 - rras_sym[1]) < kValueTol,
            "symbolic RRAS forms disagree with the ratio minima");
    const double c1 = std::min({std::pow(0.5, 0.25) / 0.5, std::pow(0.25, 1.0 / 3) / 0.25, std::pow(0.25, 0.5) / 0.25});
    const double c2 = std::min(std::pow(0.75, 1.0 / 3) / 0.75, std::pow(0.25, 0.5) / 0.25);
    n.check(std::abs(c1 - cmss_sym[0]) < kValueTol && std::abs(c2 - cmss_sym[1]) < kValueTol,
            "symbolic CMSS forms disagree with the ratio minima");
  }

  std::ostringstream d;
  auto check_row = [&](const std::string& name, const std::vector<double>& sym, const std::vector<Printed>& paper) {
    auto it = std::find_if(cmp.rows.begin(), cmp.rows.end(), [&](const auto& r) { return r.name == name; });
    if (it == cmp.rows.end()) {
      n.fail("no schedule " + name);
      return;
    }
    const auto& steps = it->trace.steps;
    n.check(steps.size() == 3, name + " trace length");
    d << name << " (";
    for (std::size_t j = 0; j < std::min<std::size_t>(steps.size(), 3); ++j) {
      const double v = steps[j].beta.to_double();
      n.check(std::abs(v - sym[j]) < kValueTol, name + " beta_" + std::to_string(j + 1) + " vs symbolic");
      // The table truncates; a value matches when it lies within one unit
      // of the last printed digit.
      const double unit = std::pow(10.0, -paper[j].decimals);
      n.check(std::abs(v - paper[j].value) < unit, name + " beta_" + std::to_string(j + 1) + " vs printed");
      d << (j ? ", " : "") << std::fixed << std::setprecision(3) << v;
    }
    d << ") ";
  };
  check_row("rras", rras_sym, rras_paper);
  check_row("cmss", cmss_sym, cmss_paper);
  n.check(cmp.rows.size() == 2 && cmp.dominance[0][1] == Dominance::kDominates, "rras does not dominate cmss");
  d << "rras dominates cmss";
  return {n.ok(), n.ok() ? d.str() : n.first() + "; " + d.str()};
}

// --- AC4 ------------------------------------------------------------------

struct FuzzTarget {
  std::string name;
  ShareSchedule schedule;
  bool power_grid;
};

std::vector<std::vector<UtilityReport>> grids_for(const FuzzTarget& t) {
  const int n = t.schedule.buyer_count();
  const std::vector<Scalar> values = default_grid_values();
  std::vector<std::vector<UtilityReport>> g;
  if (t.power_grid) {
    const auto ks = default_power_exponents(t.schedule.natural_class().k_max());
    g.assign(static_cast<std::size_t>(n), build_power_grid(t.schedule, Scalar(1), values, ks));
  } else {
    for (int i = 0; i < n; ++i) g.push_back(build_report_grid(t.schedule, i, Scalar(1), values));
  }
  return g;
}

Verdict ac4() {
  const auto t0 = Clock::now();
  const std::vector<AuctionConfig> configs{rival("0.3"), rival("0.4", "0.5"),
                                           [] {
                                             AuctionConfig c = rival("0.9", "0", TiePolicy::kGroupLoses);
                                             c.competing_bids.push_back(Scalar::parse("0.2"));
                                             return c;
                                           }()};
  const std::vector<Scalar> base2{Scalar::ratio(2, 3), Scalar::ratio(1, 3)};
  const std::vector<Scalar> base3 = testing::ranked_base();
  const std::vector<FuzzTarget> pairs{
      {"equal-split", ShareSchedule::equal_split(2), false},
      {"cmss", ShareSchedule::cmss_ranked({0, 1}, base2), false},
      {"rras", ShareSchedule::rras({0, 1}, base2, WeightFunction::sqrt()), true}};
  const std::vector<FuzzTarget> triples{
      {"equal-split", ShareSchedule::equal_split(3), false},
      {"cmss", ShareSchedule::cmss_ranked({0, 1, 2}, base3), false},
      {"rras", ShareSchedule::rras({0, 1, 2}, base3, WeightFunction::sqrt()), true}};

  Notes n;
  std::ostringstream d;
  std::size_t violations = 0, extension_only = 0;
  FuzzOptions opt;
  opt.budget = 10'000'000;
  opt.seed = 11;

  // n = 2: every truthful profile on the grid, every joint deviation.
  for (const FuzzTarget& t : pairs) {
    const ShareSchedule s = t.schedule.materialized();
    const auto g = grids_for(t);
    std::uint64_t profiles = 0;
    for (const auto& u0 : g[0]) {
      for (const auto& u1 : g[1]) {
        const std::vector<UtilityReport> truth{u0, u1};
        FuzzReport r = enumerate_coalition_deviations(truth, s, configs, g, opt);
        n.check(r.complete, t.name + " n=2 incomplete");
        profiles += r.profiles;
        violations += r.violations.size();
        for (const auto& v : r.violations) extension_only += v.depends_on_extension;
      }
    }
    d << t.name << " n=2 " << profiles << ", ";
  }

  // n = 3: truthful profiles drawn from the grid until the deviation count
  // passes the floor; the grand coalition is enumerated in full.
  Rng rng(4);
  for (const FuzzTarget& t : triples) {
    const ShareSchedule s = t.schedule.materialized();
    const auto g = grids_for(t);
    std::uint64_t profiles = 0;
    int truths = 0;
    while (profiles < kTripleProfiles) {
      std::vector<UtilityReport> truth;
      for (const auto& gi : g) truth.push_back(gi[rng.below(gi.size())]);
      opt.seed = rng.next();
      FuzzReport r = enumerate_coalition_deviations(truth, s, configs, g, opt);
      n.check(r.complete, t.name + " n=3 incomplete");
      profiles += r.profiles;
      ++truths;
      violations += r.violations.size();
      for (const auto& v : r.violations) extension_only += v.depends_on_extension;
    }
    d << t.name << " n=3 " << profiles << " (" << truths << " truths), ";
  }
  const double secs = seconds_since(t0);
  n.check(violations == 0, std::to_string(violations) + " violations (" + std::to_string(extension_only) +
                               " relying on the tie rule)");
  n.check(secs < kFuzzBudgetSeconds, "runtime " + std::to_string(secs) + " s");
  d << configs.size() << " configs, " << violations << " violations, " << std::fixed << std::setprecision(1) << secs
    << " s";
  return {n.ok(), n.ok() ? d.str() : n.first() + "; " + d.str()};
}

// --- AC5 ------------------------------------------------------------------

struct Instance {
  ShareSchedule schedule;
  std::vector<UtilityReport> reports;
};

Instance random_monotone_instance(Rng& rng, int max_n) {
  const int n = static_cast<int>(rng.between(1, max_n));
  const std::vector<int> order = shuffled_order(rng, n);
  const std::vector<Scalar> base = testing::random_shares(rng, n, BuyerSet::all(n), 12, false);
  switch (rng.below(3)) {
    case 0: {
      ShareSchedule s = ShareSchedule::equal_split(n);
      return {s, testing::random_reports(rng, s, Scalar(2))};
    }
    case 1: {
      ShareSchedule s = ShareSchedule::cmss_ranked(order, base);
      return {s, testing::random_reports(rng, s, Scalar(2))};
    }
    default: {
      // Square-root weights: reports from the power family it targets.
      ShareSchedule s = ShareSchedule::rras(order, base, WeightFunction::sqrt());
      const std::vector<Scalar> pts = testing::share_points_union(s);
      std::vector<UtilityReport> r;
      for (int i = 0; i < n; ++i) {
        r.push_back(sample_report(
            ClosedFormUtility::power(Scalar::ratio(rng.between(0, 8), 4), Scalar::ratio(rng.between(1, 4), 8)), pts));
      }
      return {s, r};
    }
  }
}

Verdict ac5() {
  Rng rng(555);
  Notes n;
  int failures = 0, nonempty = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const Instance in = random_monotone_instance(rng, 4);
    Scalar top(0);
    for (const auto& u : in.reports) top = max(top, u.at_one());
    const Scalar price = top * Scalar::ratio(rng.between(0, 24), 20);
    bool any = false;
    for (const auto& u : in.reports) any = any || u.at_one() > price;
    nonempty += any;
    if (auto w = check_individual_consistency(in.reports, in.schedule, price)) {
      ++failures;
      n.fail("buyer " + std::to_string(w->buyer + 1) + " under " + in.schedule.describe());
    }
  }
  std::ostringstream d;
  d << "1000 instances (" << nonempty << " with some U_i(1) > price), " << failures << " failures";
  return {n.ok(), n.ok() ? d.str() : n.first() + "; " + d.str()};
}

// --- AC6 ------------------------------------------------------------------

ShareSchedule tabulate(const ShareSchedule& s) {
  ShareSchedule::Table t;
  for_each_nonempty_subset(BuyerSet::all(s.buyer_count()), [&](BuyerSet a) { t[a] = s.shares_for(a); });
  return ShareSchedule::table(s.buyer_count(), std::move(t));
}

ShareSchedule random_table(Rng& rng, int n) {
  ShareSchedule::Table t;
  for_each_nonempty_subset(BuyerSet::all(n), [&](BuyerSet a) {
    t[a] = {testing::random_shares(rng, n, a, 12, true), testing::random_shares(rng, n, a, 12, true)};
  });
  return ShareSchedule::table(n, std::move(t));
}

// A cross-monotonic table with one payment share cut so that
// y_i(A) / y_i(B) < x_i(A) / x_i(B) for some A = B \ {j}; linear utilities
// then break the implication.
ShareSchedule constructed_violator(Rng& rng, int n) {
  const ShareSchedule good = ShareSchedule::cmss_ranked(shuffled_order(rng, n),
                                                        testing::random_shares(rng, n, BuyerSet::all(n), 12, false));
  ShareSchedule::Table t;
  for_each_nonempty_subset(BuyerSet::all(n), [&](BuyerSet a) { t[a] = good.shares_for(a); });
  // A has at least two members so another member can absorb the cut.
  BuyerSet a;
  do {
    a = BuyerSet(static_cast<std::uint32_t>(rng.between(1, BuyerSet::all(n).bits())));
  } while (a.size() < 2 || a.size() == n);
  const std::vector<int> members = a.members();
  const int i = members[rng.below(members.size())];
  const int k = members[(std::find(members.begin(), members.end(), i) - members.begin() + 1) % members.size()];
  const std::vector<int> outside = (BuyerSet::all(n) - a).members();
  const BuyerSet b = a.with(outside[rng.below(outside.size())]);
  const std::size_t ui = static_cast<std::size_t>(i), uk = static_cast<std::size_t>(k);
  const Scalar xa = t[a].x[ui], xb = t[b].x[ui], yb = t[b].y[ui];
  const Scalar cut = yb * xa / xb / Scalar(2);
  t[a].y[uk] += t[a].y[ui] - cut;
  t[a].y[ui] = cut;
  return ShareSchedule::table(n, std::move(t));
}

Verdict ac6() {
  Rng rng(6060);
  const NumericPolicy exact = NumericPolicy::exact();
  Notes n;
  int disagreements = 0, violators = 0, constructed = 0;
  for (int trial = 0; trial < 100; ++trial) {
    ShareSchedule s = ShareSchedule::equal_split(1);
    switch (trial % 4) {
      case 0: {
        const int m = static_cast<int>(rng.between(2, 4));
        s = tabulate(ShareSchedule::cmss_ranked(shuffled_order(rng, m),
                                                testing::random_shares(rng, m, BuyerSet::all(m), 12, false)));
        break;
      }
      case 3:
        s = constructed_violator(rng, static_cast<int>(rng.between(3, 4)));
        ++constructed;
        break;
      default:
        s = random_table(rng, static_cast<int>(rng.between(2, 4)));
        break;
    }
    const auto closed = validate_monotonicity_class_c(s, exact);
    const auto sampled = brute_force_monotonicity_check(s, 10'000, rng.next(), UtilityClassSpec::full(), exact);
    if (closed.has_value() != sampled.has_value()) {
      ++disagreements;
      n.fail("trial " + std::to_string(trial) + ": closed form " + (closed ? "fails" : "passes") + ", sampling " +
             (sampled ? "fails" : "passes"));
    }
    if (closed) {
      ++violators;
      n.check(closed->verify(s, exact), "closed-form witness does not verify: " + closed->describe());
    }
    if (trial % 4 == 3) n.check(closed.has_value(), "constructed violator passed: trial " + std::to_string(trial));
  }
  n.check(constructed >= 10, "too few constructed violators");
  std::ostringstream d;
  d << "100 tables, " << violators << " violators (" << constructed << " constructed), " << disagreements
    << " disagreements";
  return {n.ok(), n.ok() ? d.str() : n.first() + "; " + d.str()};
}

// --- AC7 ------------------------------------------------------------------

Verdict ac7() {
  Rng rng(777);
  Notes n;
  int failures = 0, checks = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const Instance in = random_monotone_instance(rng, 5);
    const int m = in.schedule.buyer_count();
    const BetaTrace t = compute_beta(in.reports, in.schedule);
    const Scalar price = rng.coin() ? t.steps[rng.below(t.steps.size())].beta : Scalar::ratio(rng.between(0, 40), 10);
    const AllocationOutcome base = allocate(t, in.schedule, price);
    const BuyerSet w = base.winning_set;
    for_each_nonempty_subset(BuyerSet::all(m) - w, [&](BuyerSet drop) {
      const BuyerSet start = BuyerSet::all(m) - drop;
      if (start.empty()) return;
      const AllocationOutcome o = rerun_from(in.reports, in.schedule, start, price);
      ++checks;
      if (o.winning_set != w) {
        ++failures;
        n.fail("dropping " + drop.display() + " changed " + w.display() + " to " + o.winning_set.display());
      }
    });
    for (int i : w) {
      const BuyerSet start = BuyerSet::all(m).without(i);
      if (start.empty()) continue;
      const AllocationOutcome o = rerun_from(in.reports, in.schedule, start, price);
      ++checks;
      if (!o.winning_set.is_subset_of(w.without(i))) {
        ++failures;
        n.fail("dropping winner " + std::to_string(i + 1) + " gave " + o.winning_set.display());
      }
    }
  }
  std::ostringstream d;
  d << "200 instances, " << checks << " removals, " << failures << " failures";
  return {n.ok(), n.ok() ? d.str() : n.first() + "; " + d.str()};
}

// --- AC8 ------------------------------------------------------------------

Verdict ac8(const std::string& archive) {
  const std::vector<Scalar> values{Scalar(0), Scalar::ratio(1, 3), Scalar::ratio(2, 3), Scalar(1)};
  const std::vector<Scalar> prices{Scalar::ratio(1, 5), Scalar::ratio(2, 5), Scalar::ratio(3, 5), Scalar::ratio(4, 5),
                                   Scalar(1)};
  const std::vector<FuzzTarget> targets{
      {"equal-split", ShareSchedule::equal_split(3), false},
      {"rras", ShareSchedule::rras({0, 1, 2}, testing::ranked_base(), WeightFunction::sqrt()), true}};

  nlohmann::json found = nlohmann::json::array();
  std::uint64_t cases = 0;
  std::ostringstream d;
  for (const FuzzTarget& t : targets) {
    const ShareSchedule s = t.schedule.materialized();
    const NumericPolicy policy = t.power_grid ? NumericPolicy::approx() : NumericPolicy::exact();
    std::vector<std::vector<UtilityReport>> g;
    if (t.power_grid) {
      const auto ks = default_power_exponents(s.natural_class().k_max());
      g.assign(3, build_power_grid(s, Scalar(1), values, ks));
    } else {
      for (int i = 0; i < 3; ++i) g.push_back(build_report_grid(s, i, Scalar(1), values));
    }
    std::uint64_t here = 0, differ = 0;
    for (const auto& u0 : g[0]) {
      for (const auto& u1 : g[1]) {
        for (const auto& u2 : g[2]) {
          const std::vector<UtilityReport> r{u0, u1, u2};
          const BetaTrace trace = compute_beta(r, s, policy);
          for (const Scalar& p : prices) {
            ++here;
            const AllocationOutcome path = allocate(trace, s, p, policy);
            const AllocationOutcome fixed = fixed_price_outcome(r, s, p, policy);
            if (path.winning_set == fixed.winning_set) continue;
            ++differ;
            found.push_back({{"schedule", t.name},
                             {"reports", nlohmann::json::array({to_json(u0), to_json(u1), to_json(u2)})},
                             {"price", to_json(p)},
                             {"beta_path_winners", to_json(path.winning_set)},
                             {"fixed_price_winners", to_json(fixed.winning_set)}});
          }
        }
      }
    }
    cases += here;
    d << t.name << " " << here << " cases " << differ << " differ; ";
  }
  std::ofstream(archive) << found.dump(2) << '\n';
  d << "archived to " << archive;
  // Reported, not asserted.
  return {found.empty(), d.str(), false};
}

}  // namespace
}  // namespace monagg

int main(int argc, char** argv) {
  using monagg::Verdict;
  const std::string archive = argc > 1 ? argv[1] : "ac8_counterexamples.json";
  struct Criterion {
    const char* id;
    const char* title;
    std::function<Verdict()> run;
  };
  const std::vector<Criterion> criteria{
      {"AC1", "Example 1 reproduction", monagg::ac1},
      {"AC2", "Example 2 reproduction", monagg::ac2},
      {"AC3", "ranked schedule table reproduction", monagg::ac3},
      {"AC4", "coalition-strategyproofness at desk scale", monagg::ac4},
      {"AC5", "individual consistency at desk scale", monagg::ac5},
      {"AC6", "validator cross-check", monagg::ac6},
      {"AC7", "removal lemma regression", monagg::ac7},
      {"AC8", "fixed-price / beta-path equivalence (reported)", [&] { return monagg::ac8(archive); }},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const char* tag = v.pass ? "[PASS]" : v.asserted ? "[FAIL]" : "[NOTE]";
    std::cout << tag << ' ' << c.id << ' ' << c.title << ": " << v.detail << std::endl;
    if (!v.pass && v.asserted) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
