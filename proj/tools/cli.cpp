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

#include "cli.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "monagg/analysis.hpp"
#include "monagg/auction.hpp"
#include "monagg/mechanism.hpp"
#include "monagg/report_io.hpp"
#include "monagg/scenario.hpp"
#include "monagg/schedule_checks.hpp"

namespace monagg::cli {
namespace {

using nlohmann::json;

constexpr std::size_t kSamplingChecks = 10000;
constexpr int kSamplingMaxBuyers = 8;

struct Options {
  std::string scenario;
  std::string out;
  std::string format = "text";
  std::optional<std::uint64_t> seed;
  std::uint64_t budget = 1'000'000;
  std::optional<double> epsilon;
  bool exact = false;
  std::vector<std::string> schedules;
};

// Input problems detected after parsing (too many buyers, unknown names).
class UsageError : public Error {
 public:
  using Error::Error;
};

NumericPolicy resolve_policy(const Options& o, const Scenario& sc) {
  if (o.exact) return NumericPolicy::exact();
  if (o.epsilon) {
    if (!(*o.epsilon > 0)) throw UsageError("--epsilon must be positive");
    return NumericPolicy::approx(*o.epsilon);
  }
  return sc.policy;
}

std::string policy_text(const NumericPolicy& p) {
  if (p.is_exact()) return "exact";
  std::ostringstream os;
  os << "approx (eps " << p.epsilon() << ")";
  return os.str();
}

json policy_json(const NumericPolicy& p) {
  json j{{"kind", p.is_exact() ? "exact" : "approx"}};
  if (!p.is_exact()) j["epsilon"] = p.epsilon();
  return j;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot write " + path);
  f << text;
  if (text.empty() || text.back() != '\n') f << '\n';
}

std::string slash_joined(const std::vector<Scalar>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += '/';
    out += human(v[i]);
  }
  return out;
}

// "winners {1,2}, 0.45 each" or "winners {1,2}, payments 0.3/0.6".
std::string winners_line(const AllocationOutcome& o) {
  if (!o.purchased) return "no purchase";
  std::vector<Scalar> paid;
  for (int i : o.winning_set) paid.push_back(o.payments[static_cast<std::size_t>(i)]);
  const bool equal = std::all_of(paid.begin(), paid.end(), [&](const Scalar& p) { return p == paid.front(); });
  std::string line = "winners " + o.winning_set.display() + ", ";
  if (equal && !paid.empty()) return line + human(paid.front()) + " each";
  return line + "payments " + slash_joined(paid);
}

class Table {
 public:
  void row(std::vector<std::string> cells) { rows_.push_back(std::move(cells)); }

  void print(std::ostream& os) const {
    std::vector<std::size_t> width;
    for (const auto& r : rows_) {
      if (width.size() < r.size()) width.resize(r.size(), 0);
      for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());
    }
    for (const auto& r : rows_) {
      std::string line;
      for (std::size_t c = 0; c < r.size(); ++c) {
        line += r[c];
        if (c + 1 < r.size()) line += std::string(width[c] - r[c].size() + 2, ' ');
      }
      os << line << '\n';
    }
  }

 private:
  std::vector<std::vector<std::string>> rows_;
};

void print_trace(std::ostream& os, const BetaTrace& trace) {
  Table t;
  t.row({"step", "subset", "beta", "removed"});
  for (std::size_t j = 0; j < trace.steps.size(); ++j) {
    const BetaStep& s = trace.steps[j];
    t.row({std::to_string(j + 1), s.subset.display(), human(s.beta), s.removed.display()});
  }
  t.print(os);
}

// --- run ------------------------------------------------------------------

int cmd_run(const Options& o, std::ostream& out) {
  const Scenario sc = load_scenario(o.scenario);
  const NumericPolicy policy = resolve_policy(o, sc);
  const std::vector<UtilityReport> reports = realize_reports(sc.buyers, sc.schedule);

  BetaTrace trace;
  AllocationOutcome outcome;
  json report{{"scenario", sc.source}, {"schedule", sc.schedule.describe()}, {"policy", policy_json(policy)}};
  std::string summary;
  if (sc.auction) {
    ParticipationResult r = run_group_participation(reports, sc.schedule, *sc.auction, policy);
    trace = std::move(r.trace);
    outcome = std::move(r.outcome);
    report["auction"] = json{{"config", to_json(*sc.auction)}, {"result", to_json(r.auction)}};
    summary = "bid " + human(trace.beta_star) + "; ";
    if (r.auction.group_won) {
      summary += "win at " + human(r.auction.clearing_price) + "; payments " + slash_joined(outcome.payments);
    } else {
      summary += "lose to " + human(sc.auction->threshold());
    }
  } else {
    trace = compute_beta(reports, sc.schedule, policy);
    outcome = allocate(trace, sc.schedule, *sc.fixed_price, policy);
    report["fixed_price"] = to_json(*sc.fixed_price);
    summary = "bid " + human(trace.beta_star) + "; fixed price " + human(*sc.fixed_price);
  }
  report["trace"] = to_json(trace);
  report["bid"] = to_json(trace.beta_star);
  report["outcome"] = to_json(outcome);

  if (o.format == "json") {
    out << report.dump(2) << '\n';
  } else if (o.format == "csv") {
    out << trace_csv(trace) << "\nbuyer,fraction,payment\n";
    for (std::size_t i = 0; i < outcome.fractions.size(); ++i) {
      out << i + 1 << ',' << outcome.fractions[i].to_decimal() << ',' << outcome.payments[i].to_decimal() << '\n';
    }
  } else {
    out << sc.source << ": " << sc.buyer_count() << " buyers, " << sc.schedule.describe() << ", "
        << policy_text(policy) << '\n';
    print_trace(out, trace);
    out << summary << '\n' << winners_line(outcome) << '\n';
  }
  if (!o.out.empty()) write_file(o.out, report.dump(2));
  return kExitOk;
}

// --- validate-schedule ----------------------------------------------------

json witness_json(const MonotonicityWitness& w) {
  return json{{"buyer", w.buyer},
              {"smaller", to_json(w.smaller)},
              {"larger", to_json(w.larger)},
              {"utility", describe(w.utility)},
              {"price_level", to_json(w.price_level)},
              {"text", w.describe()}};
}

int cmd_validate(const Options& o, std::ostream& out) {
  const Scenario sc = load_scenario(o.scenario);
  const NumericPolicy policy = resolve_policy(o, sc);
  const ShareSchedule& s = sc.schedule;
  const int n = s.buyer_count();
  if (n > ShareSchedule::kMaxTableBuyers) {
    throw UsageError("validate-schedule supports at most " + std::to_string(ShareSchedule::kMaxTableBuyers) +
                     " buyers");
  }
  const UtilityClassSpec cls = sc.utility_class ? *sc.utility_class : s.natural_class();
  const std::uint64_t seed = o.seed.value_or(sc.seed);

  std::ostringstream text;
  json report{{"scenario", sc.source}, {"schedule", s.describe()}, {"class", cls.describe()},
              {"policy", policy_json(policy)}};

  text << sc.source << ": " << s.describe() << ", " << n << " buyers\n";
  const auto cross = validate_cross_monotonic(s, policy);
  text << "cross-monotonic resource shares: " << (cross ? "no, " + cross->describe() : std::string("yes")) << '\n';
  report["cross_monotonic"] = !cross.has_value();

  const auto mono = validate_monotonicity(s, cls, policy);
  text << "monotonicity over " << cls.describe() << ": " << (mono ? "FAIL" : "PASS") << '\n';
  if (mono) text << "  witness: " << mono->describe() << '\n';
  report["monotonic"] = !mono.has_value();
  if (mono) report["witness"] = witness_json(*mono);

  std::optional<MonotonicityWitness> sampled;
  if (n <= kSamplingMaxBuyers) {
    sampled = brute_force_monotonicity_check(s, kSamplingChecks, seed, cls, policy);
    text << "sampling check (" << kSamplingChecks << " draws, seed " << seed << "): " << (sampled ? "FAIL" : "PASS")
         << '\n';
    if (sampled) text << "  witness: " << sampled->describe() << '\n';
    report["sampling"] = json{{"draws", kSamplingChecks}, {"seed", seed}, {"pass", !sampled.has_value()}};
    if (sampled) report["sampling"]["witness"] = witness_json(*sampled);
  } else {
    text << "sampling check: skipped above " << kSamplingMaxBuyers << " buyers\n";
  }

  std::vector<std::string> notes;
  for_each_nonempty_subset(BuyerSet::all(n), [&](BuyerSet a) {
    const ShareVectorPair p = s.shares_for(a);
    for (int i : a) {
      if (p.x[static_cast<std::size_t>(i)].is_zero()) {
        notes.push_back("buyer " + std::to_string(i + 1) + " has a zero resource share in " + a.display());
      }
    }
  });
  for (const auto& note : notes) text << "note: " << note << '\n';
  report["notes"] = notes;

  const bool pass = !mono && !sampled;
  text << (pass ? "PASS" : "FAIL") << '\n';
  report["pass"] = pass;

  if (o.format == "json") {
    out << report.dump(2) << '\n';
  } else {
    out << text.str();
  }
  if (!o.out.empty()) write_file(o.out, report.dump(2));
  return pass ? kExitOk : kExitViolation;
}

// --- fuzz -----------------------------------------------------------------

AuctionConfig outside_option(const Scenario& sc) {
  if (sc.auction) return *sc.auction;
  AuctionConfig cfg;
  cfg.reserve = *sc.fixed_price;
  return cfg;
}

int cmd_fuzz(const Options& o, std::ostream& out, std::ostream& err) {
  const Scenario sc = load_scenario(o.scenario);
  const NumericPolicy policy = resolve_policy(o, sc);
  const ShareSchedule schedule = sc.schedule.materialized();
  const int n = schedule.buyer_count();
  if (n > 3) throw UsageError("fuzz supports at most 3 buyers, scenario has " + std::to_string(n));

  if (o.budget == 0) {
    err << "warning: budget 0, no deviations evaluated\n";
    out << "fuzz: nothing evaluated (budget 0)\n";
    return kExitOk;
  }

  const std::vector<UtilityReport> truth = realize_reports(sc.buyers, schedule);
  std::vector<AuctionConfig> configs = sc.fuzz.configs;
  if (configs.empty()) configs.push_back(outside_option(sc));

  Scalar u_max(1);
  if (sc.fuzz.u_max) {
    u_max = *sc.fuzz.u_max;
  } else {
    for (const auto& u : truth) u_max = max(u_max, u.at_one());
  }
  const std::vector<Scalar> values = sc.fuzz.values.empty() ? default_grid_values() : sc.fuzz.values;
  const UtilityClassSpec cls = sc.utility_class ? *sc.utility_class : schedule.natural_class();
  const std::string grid_kind = sc.fuzz.grid.value_or(cls.is_full() ? "values" : "power");

  std::vector<std::vector<UtilityReport>> grid;
  if (grid_kind == "power") {
    const std::vector<Scalar> exponents = default_power_exponents(cls.k_max());
    grid.assign(static_cast<std::size_t>(n), build_power_grid(schedule, u_max, values, exponents));
  } else {
    for (int i = 0; i < n; ++i) grid.push_back(build_report_grid(schedule, i, u_max, values));
  }

  FuzzOptions fo;
  fo.budget = o.budget;
  fo.budget_mode = BudgetMode::kPartial;
  fo.seed = o.seed.value_or(sc.seed);
  fo.triple_samples = sc.fuzz.triple_samples;
  fo.policy = policy;

  const FuzzReport unilateral = check_unilateral_truthfulness(truth, schedule, configs, grid, fo);
  const FuzzReport coalition = enumerate_coalition_deviations(truth, schedule, configs, grid, fo);

  const bool complete = unilateral.complete && coalition.complete;
  const bool violated = !unilateral.violations.empty() || !coalition.violations.empty();
  std::size_t extension_only = 0;
  for (const auto& v : coalition.violations) extension_only += v.depends_on_extension ? 1 : 0;

  json report{{"scenario", sc.source},
              {"schedule", schedule.describe()},
              {"policy", policy_json(policy)},
              {"seed", fo.seed},
              {"budget", fo.budget},
              {"grid", grid_kind},
              {"configs", configs.size()},
              {"unilateral", to_json(unilateral)},
              {"coalition", to_json(coalition)}};

  if (o.format == "json") {
    out << report.dump(2) << '\n';
  } else if (o.format == "csv") {
    out << violations_csv(coalition);
  } else {
    std::size_t sizes = 0;
    for (const auto& g : grid) sizes += g.size();
    out << sc.source << ": " << schedule.describe() << ", " << n << " buyers, " << grid_kind << " grid ("
        << sizes / static_cast<std::size_t>(n) << " reports per buyer), " << configs.size() << " auction config"
        << (configs.size() == 1 ? "" : "s") << '\n';
    out << "unilateral: " << unilateral.profiles << " profiles, " << unilateral.violations.size()
        << " violations\n";
    out << "coalition:  " << coalition.profiles << " profiles, " << coalition.violations.size() << " violations ("
        << extension_only << " relying on the tie rule)\n";
    for (std::size_t k = 0; k < std::min<std::size_t>(coalition.violations.size(), 3); ++k) {
      const auto& v = coalition.violations[k];
      out << "  coalition " << v.coalition.display() << ":";
      for (int i : v.coalition) out << " buyer " << i + 1 << " reports " << v.deviant_reports[i].describe() << ";";
      out << '\n';
    }
  }
  if (!complete) {
    err << "warning: budget " << fo.budget << " covers " << coalition.profiles << " of " << coalition.required
        << " profiles; partial report\n";
  }

  if (violated) {
    std::string path = o.out;
    if (path.empty()) path = std::filesystem::path(sc.source).stem().string() + ".violations.json";
    write_file(path, report.dump(2));
    if (o.format == "text") out << "violations written to " << path << '\n';
  } else if (!o.out.empty()) {
    write_file(o.out, report.dump(2));
  }
  if (o.format == "text") out << (violated ? "FAIL" : complete ? "PASS" : "PARTIAL") << '\n';
  if (violated) return kExitViolation;
  return complete ? kExitOk : kExitBudgetPartial;
}

// --- compare --------------------------------------------------------------

int cmd_compare(const Options& o, std::ostream& out) {
  const Scenario sc = load_scenario(o.scenario);
  const NumericPolicy policy = resolve_policy(o, sc);

  std::vector<NamedSchedule> chosen;
  if (o.schedules.empty()) {
    chosen = sc.named_schedules;
    if (chosen.empty()) chosen.push_back(NamedSchedule{"schedule", sc.schedule});
  } else {
    for (const auto& name : o.schedules) {
      auto it = std::find_if(sc.named_schedules.begin(), sc.named_schedules.end(),
                             [&](const NamedSchedule& s) { return s.name == name; });
      if (it != sc.named_schedules.end()) {
        chosen.push_back(*it);
      } else if (name == "schedule") {
        chosen.push_back(NamedSchedule{"schedule", sc.schedule});
      } else {
        throw UsageError("no schedule named \"" + name + "\" in " + sc.source);
      }
    }
  }
  std::vector<Scalar> prices = sc.prices;
  if (prices.empty()) prices.push_back(sc.price_level());

  const ScheduleComparison cmp = compare_schedules(sc.buyers, chosen, prices, policy);
  json report = to_json(cmp);
  report["scenario"] = sc.source;
  report["policy"] = policy_json(policy);

  if (o.format == "json") {
    out << report.dump(2) << '\n';
  } else if (o.format == "csv") {
    out << comparison_csv(cmp);
  } else {
    Table t;
    std::vector<std::string> header{"step"};
    std::size_t steps = 0;
    for (const auto& row : cmp.rows) {
      header.push_back(row.name);
      steps = std::max(steps, row.trace.steps.size());
    }
    t.row(header);
    for (std::size_t j = 0; j < steps; ++j) {
      std::vector<std::string> cells{std::to_string(j + 1)};
      for (const auto& row : cmp.rows) {
        cells.push_back(j < row.trace.steps.size() ? human(row.trace.steps[j].beta) : "-");
      }
      t.row(cells);
    }
    std::vector<std::string> bids{"bid"};
    for (const auto& row : cmp.rows) bids.push_back(human(row.trace.beta_star));
    t.row(bids);
    for (std::size_t p = 0; p < cmp.prices.size(); ++p) {
      std::vector<std::string> winners{"winners @ " + human(cmp.prices[p])};
      std::vector<std::string> paid{"payments @ " + human(cmp.prices[p])};
      for (const auto& row : cmp.rows) {
        const AllocationOutcome& oc = row.outcomes[p];
        winners.push_back(oc.purchased ? oc.winning_set.display() : "none");
        paid.push_back(oc.purchased ? slash_joined(oc.payments) : "-");
      }
      t.row(winners);
      t.row(paid);
    }
    t.print(out);
    for (std::size_t a = 0; a < cmp.rows.size(); ++a) {
      for (std::size_t b = a + 1; b < cmp.rows.size(); ++b) {
        out << cmp.rows[a].name << " vs " << cmp.rows[b].name << ": " << to_string(cmp.dominance[a][b]) << '\n';
      }
    }
  }
  if (!o.out.empty()) write_file(o.out, report.dump(2));
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Monotonic aggregation mechanism: run scenarios, validate schedules, fuzz and compare."};
  app.name("monagg");
  app.require_subcommand(1);
  app.fallthrough();

  Options o;
  app.add_option("--out", o.out, "Write the JSON report to this path");
  app.add_option("--format", o.format, "Output format on stdout")
      ->check(CLI::IsMember({"text", "json", "csv"}));
  app.add_option("--seed", o.seed, "Seed for sampled checks (overrides the scenario)");
  app.add_option("--budget", o.budget, "Maximum deviation profiles for fuzz");
  app.add_option("--epsilon", o.epsilon, "Approximate arithmetic with this tolerance");
  app.add_flag("--exact", o.exact, "Exact rational arithmetic");
  app.add_option("--schedules", o.schedules, "Comma-separated schedule names for compare")->delimiter(',');

  auto* run = app.add_subcommand("run", "Compute the beta trace, bid and allocation");
  auto* validate = app.add_subcommand("validate-schedule", "Check the schedule's monotonicity");
  auto* fuzz = app.add_subcommand("fuzz", "Search for profitable unilateral and coalition deviations");
  auto* compare = app.add_subcommand("compare", "Compare beta vectors and outcomes of several schedules");
  for (auto* sub : {run, validate, fuzz, compare}) {
    sub->add_option("scenario", o.scenario, "Scenario JSON file")->required();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidInput;
  }
  if (o.exact && o.epsilon) {
    err << "error: --exact and --epsilon are mutually exclusive\n";
    return kExitInvalidInput;
  }

  try {
    if (*run) return cmd_run(o, out);
    if (*validate) return cmd_validate(o, out);
    if (*fuzz) return cmd_fuzz(o, out, err);
    if (*compare) return cmd_compare(o, out);
  } catch (const ScenarioError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidInput;
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kExitBudgetPartial;
  } catch (const Error& e) {
    err << "error: " << o.scenario << ": " << e.what() << '\n';
    return kExitInvalidInput;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitInternal;
}

}  // namespace monagg::cli
