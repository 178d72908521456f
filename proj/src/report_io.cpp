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

#include "monagg/report_io.hpp"

#include <sstream>

namespace monagg {

using nlohmann::json;

namespace {

template <typename T, typename Fn>
json array_of(const std::vector<T>& items, Fn&& fn) {
  json out = json::array();
  for (const auto& item : items) out.push_back(fn(item));
  return out;
}

json scalars_json(const std::vector<Scalar>& v) {
  return array_of(v, [](const Scalar& s) { return to_json(s); });
}

std::vector<Scalar> scalars_from(const json& j) {
  std::vector<Scalar> out;
  for (const auto& item : j) out.push_back(scalar_from_json(item));
  return out;
}

json preference_json(const PreferenceOutcome& p) {
  return json{{"net", to_json(p.net)}, {"wins_nonzero", p.wins_nonzero}};
}

std::string fraction_or_decimal(const Scalar& s) { return s.is_exact() ? s.to_fraction() : s.to_decimal(); }

// Quotes a CSV field when it holds a separator.
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string joined(const std::vector<Scalar>& v, char sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += v[i].to_decimal();
  }
  return out;
}

std::string reports_text(const std::vector<UtilityReport>& reports) {
  std::string out;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    if (i) out += " | ";
    out += reports[i].describe();
  }
  return out;
}

}  // namespace

json to_json(const Scalar& s) {
  json out{{"decimal", s.to_decimal(15)}};
  if (s.is_exact()) out["exact"] = s.to_fraction();
  return out;
}

Scalar scalar_from_json(const json& j) {
  if (j.is_object()) {
    if (j.contains("exact")) return Scalar::parse(j.at("exact").get<std::string>());
    return Scalar::approx(Scalar::parse(j.at("decimal").get<std::string>()).to_double());
  }
  if (j.is_string()) return Scalar::parse(j.get<std::string>());
  if (j.is_number()) return Scalar::approx(j.get<double>());
  throw DomainError("expected a number");
}

json to_json(BuyerSet s) { return json(s.members()); }

BuyerSet buyer_set_from_json(const json& j) {
  BuyerSet s;
  for (const auto& i : j) s.insert(i.get<int>());
  return s;
}

json to_json(const UtilityReport& u) {
  json out = json::array();
  for (const Knot& k : u.knots()) out.push_back(json::array({fraction_or_decimal(k.x), fraction_or_decimal(k.u)}));
  return out;
}

UtilityReport utility_report_from_json(const json& j) {
  std::vector<Knot> knots;
  for (const auto& k : j) knots.push_back(Knot{Scalar::parse(k.at(0).get<std::string>()),
                                                Scalar::parse(k.at(1).get<std::string>())});
  return UtilityReport::from_knots(std::move(knots));
}

json to_json(const BetaTrace& trace) {
  json steps = json::array();
  for (std::size_t j = 0; j < trace.steps.size(); ++j) {
    const BetaStep& s = trace.steps[j];
    steps.push_back(json{{"step", j + 1}, {"subset", to_json(s.subset)}, {"beta", to_json(s.beta)},
                         {"removed", to_json(s.removed)}});
  }
  return json{{"buyer_count", trace.buyer_count}, {"steps", steps}, {"beta_star", to_json(trace.beta_star)}};
}

BetaTrace beta_trace_from_json(const json& j) {
  BetaTrace t;
  t.buyer_count = j.at("buyer_count").get<int>();
  for (const auto& s : j.at("steps")) {
    t.steps.push_back(BetaStep{buyer_set_from_json(s.at("subset")), scalar_from_json(s.at("beta")),
                               buyer_set_from_json(s.at("removed"))});
  }
  t.beta_star = scalar_from_json(j.at("beta_star"));
  return t;
}

json to_json(const AllocationOutcome& o) {
  return json{{"purchased", o.purchased},
              {"winning_set", to_json(o.winning_set)},
              {"fractions", scalars_json(o.fractions)},
              {"payments", scalars_json(o.payments)},
              {"price", to_json(o.price)}};
}

AllocationOutcome allocation_outcome_from_json(const json& j) {
  AllocationOutcome o;
  o.purchased = j.at("purchased").get<bool>();
  o.winning_set = buyer_set_from_json(j.at("winning_set"));
  o.fractions = scalars_from(j.at("fractions"));
  o.payments = scalars_from(j.at("payments"));
  o.price = scalar_from_json(j.at("price"));
  return o;
}

json to_json(const AuctionConfig& cfg) {
  return json{{"reserve", to_json(cfg.reserve)},
              {"competing_bids", scalars_json(cfg.competing_bids)},
              {"tie_policy", cfg.tie_policy == TiePolicy::kGroupWins ? "group_wins" : "group_loses"}};
}

json to_json(const AuctionResult& r) {
  json out{{"group_won", r.group_won}};
  if (r.group_won) out["clearing_price"] = to_json(r.clearing_price);
  return out;
}

json to_json(const DeviationViolation& v) {
  auto reports = [](const std::vector<UtilityReport>& rs) {
    return array_of(rs, [](const UtilityReport& u) { return to_json(u); });
  };
  auto prefs = [](const std::vector<PreferenceOutcome>& ps) { return array_of(ps, preference_json); };
  return json{{"coalition", to_json(v.coalition)},
              {"truthful_reports", reports(v.truthful_reports)},
              {"deviant_reports", reports(v.deviant_reports)},
              {"outside", to_json(v.outside)},
              {"before", prefs(v.before)},
              {"after", prefs(v.after)},
              {"depends_on_extension", v.depends_on_extension}};
}

json to_json(const FuzzReport& report) {
  return json{{"profiles", report.profiles},
              {"required", report.required},
              {"complete", report.complete},
              {"violations", array_of(report.violations, [](const DeviationViolation& v) { return to_json(v); })}};
}

json to_json(const WelfareReport& r) {
  return json{{"mechanism_welfare", to_json(r.mechanism_welfare)},
              {"optimal_welfare", to_json(r.optimal_welfare)},
              {"optimal_division", scalars_json(r.optimal_division)},
              {"purchased_by_mechanism", r.purchased_by_mechanism},
              {"purchasable_optimally", r.purchasable_optimally},
              {"inefficient", r.inefficient()}};
}

json to_json(const ScheduleComparison& cmp) {
  json rows = json::array();
  for (const auto& row : cmp.rows) {
    json betas = json::array();
    for (const BetaStep& s : row.trace.steps) betas.push_back(to_json(s.beta));
    rows.push_back(json{{"name", row.name},
                        {"betas", betas},
                        {"bid", to_json(row.trace.beta_star)},
                        {"trace", to_json(row.trace)},
                        {"outcomes", array_of(row.outcomes, [](const AllocationOutcome& o) { return to_json(o); })}});
  }
  json dominance = json::object();
  for (std::size_t a = 0; a < cmp.rows.size(); ++a) {
    for (std::size_t b = 0; b < cmp.rows.size(); ++b) {
      if (a == b) continue;
      dominance[cmp.rows[a].name][cmp.rows[b].name] = std::string(to_string(cmp.dominance[a][b]));
    }
  }
  return json{{"prices", scalars_json(cmp.prices)}, {"schedules", rows}, {"dominance", dominance}};
}

std::string trace_csv(const BetaTrace& trace) {
  std::ostringstream os;
  os << "step,subset,beta,removed\n";
  for (std::size_t j = 0; j < trace.steps.size(); ++j) {
    const BetaStep& s = trace.steps[j];
    os << j + 1 << ',' << csv_field(s.subset.key()) << ',' << s.beta.to_decimal() << ','
       << csv_field(s.removed.key()) << '\n';
  }
  return os.str();
}

std::string violations_csv(const FuzzReport& report) {
  std::ostringstream os;
  os << "coalition,reserve,competing_bids,depends_on_extension,truthful_reports,deviant_reports\n";
  for (const auto& v : report.violations) {
    os << csv_field(v.coalition.key()) << ',' << v.outside.reserve.to_decimal() << ','
       << csv_field(joined(v.outside.competing_bids, ' ')) << ',' << (v.depends_on_extension ? "true" : "false")
       << ',' << csv_field(reports_text(v.truthful_reports)) << ',' << csv_field(reports_text(v.deviant_reports))
       << '\n';
  }
  return os.str();
}

std::string comparison_csv(const ScheduleComparison& cmp) {
  std::ostringstream os;
  os << "schedule,row,step,subset,beta,price,winners,payments\n";
  for (const auto& row : cmp.rows) {
    for (std::size_t j = 0; j < row.trace.steps.size(); ++j) {
      const BetaStep& s = row.trace.steps[j];
      os << csv_field(row.name) << ",beta," << j + 1 << ',' << csv_field(s.subset.key()) << ','
         << s.beta.to_decimal() << ",,,\n";
    }
    os << csv_field(row.name) << ",bid,,," << row.trace.beta_star.to_decimal() << ",,,\n";
    for (std::size_t p = 0; p < cmp.prices.size(); ++p) {
      const AllocationOutcome& o = row.outcomes[p];
      os << csv_field(row.name) << ",outcome,,,," << cmp.prices[p].to_decimal() << ','
         << csv_field(o.winning_set.key()) << ',' << csv_field(joined(o.payments, ' ')) << '\n';
    }
  }
  return os.str();
}

std::string human(const Scalar& s, int significant) {
  std::string out = s.to_decimal(significant);
  if (out.find_first_of(".e") == std::string::npos) out += ".0";
  return out;
}

}  // namespace monagg
