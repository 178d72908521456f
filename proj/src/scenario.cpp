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

#include "monagg/scenario.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <initializer_list>
#include <sstream>

namespace monagg {

using json = nlohmann::ordered_json;

ScenarioError::ScenarioError(std::string file, int line, std::string path, std::string message)
    : Error(file + ":" + std::to_string(line) + ": " + (path.empty() ? "/" : path) + ": " + message),
      file_(std::move(file)),
      line_(line),
      path_(std::move(path)),
      message_(std::move(message)) {}

Scalar Scenario::price_level() const {
  if (fixed_price) return *fixed_price;
  if (auction) return auction->threshold();
  return Scalar(0);
}

// ---------------------------------------------------------------------------
// Line map: a small scanner over already-validated JSON.

namespace {

std::string escape_pointer_token(std::string_view token) {
  std::string out;
  for (char c : token) {
    if (c == '~') {
      out += "~0";
    } else if (c == '/') {
      out += "~1";
    } else {
      out += c;
    }
  }
  return out;
}

class LineScanner {
 public:
  LineScanner(std::string_view text, std::map<std::string, int, std::less<>>& out) : text_(text), out_(out) {}

  void run() {
    skip_ws();
    value("");
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '\n') {
        ++line_;
      } else if (c != ' ' && c != '\t' && c != '\r') {
        break;
      }
      ++pos_;
    }
  }

  std::string string_token() {
    std::string out;
    ++pos_;  // opening quote
    while (pos_ < text_.size() && text_[pos_] != '"') {
      if (text_[pos_] == '\\' && pos_ + 1 < text_.size()) {
        ++pos_;
        switch (text_[pos_]) {
          case 'n': out += '\n'; break;
          case 't': out += '\t'; break;
          case 'u': out += "\\u"; break;
          default: out += text_[pos_]; break;
        }
      } else {
        out += text_[pos_];
      }
      ++pos_;
    }
    ++pos_;  // closing quote
    return out;
  }

  void value(const std::string& pointer) {
    if (pos_ >= text_.size()) return;
    out_.emplace(pointer, line_);
    const char c = text_[pos_];
    if (c == '{') {
      ++pos_;
      skip_ws();
      while (pos_ < text_.size() && text_[pos_] != '}') {
        if (text_[pos_] != '"') return;
        std::string key = string_token();
        skip_ws();
        ++pos_;  // ':'
        skip_ws();
        value(pointer + "/" + escape_pointer_token(key));
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == ',') {
          ++pos_;
          skip_ws();
        }
      }
      ++pos_;
    } else if (c == '[') {
      ++pos_;
      skip_ws();
      int index = 0;
      while (pos_ < text_.size() && text_[pos_] != ']') {
        value(pointer + "/" + std::to_string(index++));
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == ',') {
          ++pos_;
          skip_ws();
        }
      }
      ++pos_;
    } else if (c == '"') {
      string_token();
    } else {
      while (pos_ < text_.size() && std::string_view(",]} \t\r\n").find(text_[pos_]) == std::string_view::npos) {
        ++pos_;
      }
    }
  }

  std::string_view text_;
  std::map<std::string, int, std::less<>>& out_;
  std::size_t pos_ = 0;
  int line_ = 1;
};

}  // namespace

JsonLineMap::JsonLineMap(std::string_view text) { LineScanner(text, lines_).run(); }

int JsonLineMap::line_of(std::string_view pointer) const {
  std::string p(pointer);
  while (true) {
    auto it = lines_.find(p);
    if (it != lines_.end()) return it->second;
    if (p.empty()) return 1;
    p.erase(p.rfind('/'));
  }
}

int JsonLineMap::line_at_offset(std::string_view text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

// ---------------------------------------------------------------------------
// Scenario reader.

namespace {

class Reader {
 public:
  Reader(std::string_view text, std::string source) : lines_(text), source_(std::move(source)) {}

  [[noreturn]] void fail(const std::string& pointer, const std::string& message) const {
    throw ScenarioError(source_, lines_.line_of(pointer), pointer, message);
  }

  const json& require(const json& obj, const std::string& pointer, const char* key) const {
    auto it = obj.find(key);
    if (it == obj.end()) fail(pointer, std::string("missing \"") + key + "\"");
    return *it;
  }

  void expect_object(const json& j, const std::string& pointer) const {
    if (!j.is_object()) fail(pointer, "expected an object");
  }

  void expect_array(const json& j, const std::string& pointer) const {
    if (!j.is_array()) fail(pointer, "expected an array");
  }

  void allow_keys(const json& obj, const std::string& pointer, std::initializer_list<std::string_view> keys) const {
    for (const auto& [key, value] : obj.items()) {
      if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
        fail(pointer + "/" + escape_pointer_token(key), "unknown key \"" + key + "\"");
      }
    }
  }

  std::string string(const json& j, const std::string& pointer) const {
    if (!j.is_string()) fail(pointer, "expected a string");
    return j.get<std::string>();
  }

  Scalar scalar(const json& j, const std::string& pointer) const {
    try {
      if (j.is_string()) return Scalar::parse(j.get<std::string>());
      if (j.is_number_integer()) return Scalar(j.get<long long>());
      if (j.is_number_unsigned()) return Scalar::parse(std::to_string(j.get<unsigned long long>()));
      if (j.is_number_float()) {
        // Shortest text that reads back as the same double: 0.6 means 3/5.
        char buf[64];
        auto res = std::to_chars(buf, buf + sizeof buf, j.get<double>());
        return Scalar::parse(std::string_view(buf, static_cast<std::size_t>(res.ptr - buf)));
      }
    } catch (const DomainError& e) {
      fail(pointer, e.what());
    }
    fail(pointer, "expected a number");
  }

  std::vector<Scalar> scalars(const json& j, const std::string& pointer) const {
    expect_array(j, pointer);
    std::vector<Scalar> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(scalar(j[i], pointer + "/" + std::to_string(i)));
    return out;
  }

  std::vector<int> indices(const json& j, const std::string& pointer, int n) const {
    expect_array(j, pointer);
    std::vector<int> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
      const std::string p = pointer + "/" + std::to_string(i);
      if (!j[i].is_number_integer()) fail(p, "expected a buyer index");
      const int v = j[i].get<int>();
      if (v < 0 || v >= n) fail(p, "buyer index " + std::to_string(v) + " outside 0.." + std::to_string(n - 1));
      out.push_back(v);
    }
    return out;
  }

  std::vector<Knot> knots(const json& j, const std::string& pointer) const {
    expect_array(j, pointer);
    std::vector<Knot> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
      const std::string p = pointer + "/" + std::to_string(i);
      if (!j[i].is_array() || j[i].size() != 2) fail(p, "expected a knot [x, u]");
      out.push_back(Knot{scalar(j[i][0], p + "/0"), scalar(j[i][1], p + "/1")});
    }
    return out;
  }

  ClassMember buyer(const json& j, const std::string& pointer, const NumericPolicy& policy) const {
    expect_object(j, pointer);
    const std::string kind = string(require(j, pointer, "kind"), pointer + "/kind");
    try {
      if (kind == "knots") {
        allow_keys(j, pointer, {"kind", "points", "name"});
        const std::string p = pointer + "/points";
        std::vector<Knot> pts = knots(require(j, pointer, "points"), p);
        if (auto v = validate_class_c(pts, policy)) {
          fail(p + (v->index < pts.size() ? "/" + std::to_string(v->index) : ""), v->message());
        }
        return UtilityReport::from_knots(std::move(pts), policy);
      }
      allow_keys(j, pointer, {"kind", "c", "k", "name"});
      const Scalar c = j.contains("c") ? scalar(j["c"], pointer + "/c") : Scalar(1);
      if (kind == "linear") return ClosedFormUtility::linear(c);
      if (kind == "log") return ClosedFormUtility::log(c);
      if (kind == "power" || kind == "sqrt") {
        const Scalar k = kind == "sqrt" ? Scalar::ratio(1, 2) : scalar(require(j, pointer, "k"), pointer + "/k");
        return ClosedFormUtility::power(c, k);
      }
    } catch (const ScenarioError&) {
      throw;
    } catch (const Error& e) {
      fail(pointer, e.what());
    }
    fail(pointer + "/kind", "unknown utility kind \"" + kind + "\" (linear, power, sqrt, log, knots)");
  }

  WeightFunction weight(const json& j, const std::string& pointer) const {
    if (j.is_object()) {
      allow_keys(j, pointer, {"knots"});
      return WeightFunction::explicit_concave(knots(require(j, pointer, "knots"), pointer + "/knots"));
    }
    const std::string name = string(j, pointer);
    if (name == "identity") return WeightFunction::identity();
    if (name == "sqrt") return WeightFunction::sqrt();
    if (name.rfind("power:", 0) == 0) {
      try {
        return WeightFunction::power(Scalar::parse(std::string_view(name).substr(6)));
      } catch (const DomainError& e) {
        fail(pointer, e.what());
      }
    }
    fail(pointer, "unknown weight \"" + name + "\" (identity, sqrt, power:k, {\"knots\": ...})");
  }

  ShareSchedule schedule(const json& j, const std::string& pointer, int n) const {
    expect_object(j, pointer);
    const std::string kind = string(require(j, pointer, "kind"), pointer + "/kind");
    try {
      if (kind == "equal-split") {
        allow_keys(j, pointer, {"kind", "n"});
        return ShareSchedule::equal_split(dimension(j, pointer, n));
      }
      if (kind == "cmss") {
        allow_keys(j, pointer, {"kind", "n", "shares", "order", "base"});
        const int dim = dimension(j, pointer, n);
        if (j.contains("shares")) return ShareSchedule::cmss(dim, resource_table(j["shares"], pointer + "/shares", dim));
        const json& base = require(j, pointer, "base");
        if (base.is_string()) {
          if (base.get<std::string>() != "equal") fail(pointer + "/base", "expected \"equal\" or an array of shares");
          return ShareSchedule::cmss(dim, equal_table(dim));
        }
        const std::vector<int> order = indices(require(j, pointer, "order"), pointer + "/order", dim);
        return ShareSchedule::cmss_ranked(order, scalars(base, pointer + "/base"));
      }
      if (kind == "rras") {
        allow_keys(j, pointer, {"kind", "n", "order", "base", "f"});
        const int dim = dimension(j, pointer, n);
        const std::vector<int> order = indices(require(j, pointer, "order"), pointer + "/order", dim);
        const std::vector<Scalar> base = scalars(require(j, pointer, "base"), pointer + "/base");
        WeightFunction f = j.contains("f") ? weight(j["f"], pointer + "/f") : WeightFunction::identity();
        return ShareSchedule::rras(order, base, std::move(f));
      }
      if (kind == "table") {
        allow_keys(j, pointer, {"kind", "n", "entries"});
        const int dim = dimension(j, pointer, n);
        return ShareSchedule::table(dim, share_table(require(j, pointer, "entries"), pointer + "/entries", dim));
      }
    } catch (const ScenarioError&) {
      throw;
    } catch (const Error& e) {
      fail(pointer, e.what());
    }
    fail(pointer + "/kind", "unknown schedule kind \"" + kind + "\" (equal-split, cmss, rras, table)");
  }

  AuctionConfig auction(const json& j, const std::string& pointer) const {
    expect_object(j, pointer);
    allow_keys(j, pointer, {"reserve", "competing_bids", "tie_policy"});
    AuctionConfig cfg;
    if (j.contains("reserve")) cfg.reserve = scalar(j["reserve"], pointer + "/reserve");
    if (j.contains("competing_bids")) cfg.competing_bids = scalars(j["competing_bids"], pointer + "/competing_bids");
    if (j.contains("tie_policy")) {
      const std::string t = string(j["tie_policy"], pointer + "/tie_policy");
      if (t == "group_wins") {
        cfg.tie_policy = TiePolicy::kGroupWins;
      } else if (t == "group_loses") {
        cfg.tie_policy = TiePolicy::kGroupLoses;
      } else {
        fail(pointer + "/tie_policy", "expected \"group_wins\" or \"group_loses\"");
      }
    }
    try {
      cfg.validate();
    } catch (const DomainError& e) {
      fail(pointer, e.what());
    }
    return cfg;
  }

  UtilityClassSpec utility_class(const json& j, const std::string& pointer) const {
    if (j.is_string()) {
      if (j.get<std::string>() == "full") return UtilityClassSpec::full();
      fail(pointer, "expected \"full\" or {\"kind\": \"power\", ...}");
    }
    expect_object(j, pointer);
    allow_keys(j, pointer, {"kind", "k_min", "k_max"});
    if (string(require(j, pointer, "kind"), pointer + "/kind") != "power") fail(pointer + "/kind", "expected \"power\"");
    try {
      return UtilityClassSpec::power_family(scalar(require(j, pointer, "k_min"), pointer + "/k_min"),
                                            scalar(require(j, pointer, "k_max"), pointer + "/k_max"));
    } catch (const ScenarioError&) {
      throw;
    } catch (const Error& e) {
      fail(pointer, e.what());
    }
  }

  FuzzSettings fuzz(const json& j, const std::string& pointer) const {
    expect_object(j, pointer);
    allow_keys(j, pointer, {"u_max", "grid", "values", "configs", "triple_samples"});
    FuzzSettings out;
    if (j.contains("u_max")) out.u_max = scalar(j["u_max"], pointer + "/u_max");
    if (j.contains("grid")) {
      out.grid = string(j["grid"], pointer + "/grid");
      if (*out.grid != "values" && *out.grid != "power") fail(pointer + "/grid", "expected \"values\" or \"power\"");
    }
    if (j.contains("values")) out.values = scalars(j["values"], pointer + "/values");
    if (j.contains("configs")) {
      const std::string p = pointer + "/configs";
      expect_array(j["configs"], p);
      for (std::size_t i = 0; i < j["configs"].size(); ++i) {
        out.configs.push_back(auction(j["configs"][i], p + "/" + std::to_string(i)));
      }
    }
    if (j.contains("triple_samples")) {
      if (!j["triple_samples"].is_number_unsigned()) fail(pointer + "/triple_samples", "expected a count");
      out.triple_samples = j["triple_samples"].get<std::uint64_t>();
    }
    return out;
  }

 private:
  int dimension(const json& j, const std::string& pointer, int n) const {
    if (!j.contains("n")) return n;
    if (!j["n"].is_number_integer()) fail(pointer + "/n", "expected a buyer count");
    return j["n"].get<int>();
  }

  static ShareSchedule::ResourceTable equal_table(int n) {
    if (n < 1 || n > ShareSchedule::kMaxTableBuyers) throw DomainError("buyer count out of range");
    ShareSchedule::ResourceTable out;
    for_each_nonempty_subset(BuyerSet::all(n), [&](BuyerSet s) {
      std::vector<Scalar> x(static_cast<std::size_t>(n), Scalar(0));
      for (int i : s) x[static_cast<std::size_t>(i)] = Scalar::ratio(1, s.size());
      out.emplace(s, std::move(x));
    });
    return out;
  }

  BuyerSet subset_key(const std::string& key, const std::string& pointer, int n) const {
    BuyerSet s;
    try {
      s = BuyerSet::from_key(key);
    } catch (const DomainError& e) {
      fail(pointer, e.what());
    }
    if (s.empty() || !s.is_subset_of(BuyerSet::all(n))) fail(pointer, "subset \"" + key + "\" outside the buyers");
    return s;
  }

  std::vector<Scalar> share_vector(const json& j, const std::string& pointer, int n) const {
    std::vector<Scalar> v = scalars(j, pointer);
    if (static_cast<int>(v.size()) != n) {
      fail(pointer, "expected " + std::to_string(n) + " shares, got " + std::to_string(v.size()));
    }
    return v;
  }

  ShareSchedule::ResourceTable resource_table(const json& j, const std::string& pointer, int n) const {
    expect_object(j, pointer);
    ShareSchedule::ResourceTable out;
    for (const auto& [key, value] : j.items()) {
      const std::string p = pointer + "/" + escape_pointer_token(key);
      out.emplace(subset_key(key, p, n), share_vector(value, p, n));
    }
    return out;
  }

  ShareSchedule::Table share_table(const json& j, const std::string& pointer, int n) const {
    expect_object(j, pointer);
    ShareSchedule::Table out;
    for (const auto& [key, value] : j.items()) {
      const std::string p = pointer + "/" + escape_pointer_token(key);
      expect_object(value, p);
      allow_keys(value, p, {"x", "y"});
      const BuyerSet s = subset_key(key, p, n);
      ShareVectorPair pair{share_vector(require(value, p, "x"), p + "/x", n),
                           share_vector(require(value, p, "y"), p + "/y", n)};
      if (auto problem = check_share_pair(pair, s, n, NumericPolicy::approx())) fail(p, *problem);
      out.emplace(s, std::move(pair));
    }
    return out;
  }

  JsonLineMap lines_;
  std::string source_;
};

}  // namespace

Scenario parse_scenario(std::string_view text, const std::string& source_name) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ScenarioError(source_name, JsonLineMap::line_at_offset(text, e.byte == 0 ? 0 : e.byte - 1), "",
                        "malformed JSON");
  }
  const Reader r(text, source_name);
  r.expect_object(root, "");
  r.allow_keys(root, "", {"name", "description", "buyers", "schedule", "schedules", "auction", "fixed_price",
                          "prices", "policy", "epsilon", "seed", "utility_class", "fuzz"});

  Scenario sc;
  sc.source = source_name;

  if (root.contains("policy") || root.contains("epsilon")) sc.policy_given = true;
  const std::string kind = root.contains("policy") ? r.string(root["policy"], "/policy") : "approx";
  if (kind == "exact") {
    sc.policy = NumericPolicy::exact();
  } else if (kind == "approx") {
    double eps = NumericPolicy::kDefaultEpsilon;
    if (root.contains("epsilon")) {
      eps = r.scalar(root["epsilon"], "/epsilon").to_double();
      if (!(eps > 0)) r.fail("/epsilon", "epsilon must be positive");
    }
    sc.policy = NumericPolicy::approx(eps);
  } else {
    r.fail("/policy", "expected \"exact\" or \"approx\"");
  }

  const json& buyers = r.require(root, "", "buyers");
  r.expect_array(buyers, "/buyers");
  if (buyers.empty()) r.fail("/buyers", "at least one buyer is required");
  if (buyers.size() > static_cast<std::size_t>(ShareSchedule::kMaxTableBuyers)) {
    r.fail("/buyers", "at most " + std::to_string(ShareSchedule::kMaxTableBuyers) + " buyers are supported");
  }
  for (std::size_t i = 0; i < buyers.size(); ++i) {
    sc.buyers.push_back(r.buyer(buyers[i], "/buyers/" + std::to_string(i), sc.policy));
  }
  const int n = sc.buyer_count();

  auto check_dimension = [&](const ShareSchedule& s, const std::string& pointer) {
    if (s.buyer_count() != n) {
      r.fail(pointer, "schedule is for " + std::to_string(s.buyer_count()) + " buyers but the scenario has " +
                          std::to_string(n));
    }
  };

  if (root.contains("schedules")) {
    const json& all = root["schedules"];
    r.expect_object(all, "/schedules");
    for (const auto& [name, stanza] : all.items()) {
      const std::string p = "/schedules/" + escape_pointer_token(name);
      ShareSchedule s = r.schedule(stanza, p, n);
      check_dimension(s, p);
      sc.named_schedules.push_back(NamedSchedule{name, std::move(s)});
    }
  }
  if (root.contains("schedule")) {
    sc.schedule = r.schedule(root["schedule"], "/schedule", n);
    check_dimension(sc.schedule, "/schedule");
  } else if (!sc.named_schedules.empty()) {
    sc.schedule = sc.named_schedules.front().schedule;
  } else {
    r.fail("", "missing \"schedule\"");
  }

  const bool has_auction = root.contains("auction");
  const bool has_fixed = root.contains("fixed_price");
  if (has_auction == has_fixed) r.fail("", "exactly one of \"auction\" and \"fixed_price\" is required");
  if (has_auction) sc.auction = r.auction(root["auction"], "/auction");
  if (has_fixed) {
    sc.fixed_price = r.scalar(root["fixed_price"], "/fixed_price");
    if (sc.fixed_price->sign() < 0) r.fail("/fixed_price", "price must be non-negative");
  }

  if (root.contains("prices")) {
    sc.prices = r.scalars(root["prices"], "/prices");
    for (std::size_t i = 0; i < sc.prices.size(); ++i) {
      if (sc.prices[i].sign() < 0) r.fail("/prices/" + std::to_string(i), "price must be non-negative");
    }
  }
  if (root.contains("utility_class")) sc.utility_class = r.utility_class(root["utility_class"], "/utility_class");
  if (root.contains("seed")) {
    if (!root["seed"].is_number_unsigned()) r.fail("/seed", "expected a non-negative integer");
    sc.seed = root["seed"].get<std::uint64_t>();
  }
  if (root.contains("fuzz")) sc.fuzz = r.fuzz(root["fuzz"], "/fuzz");
  return sc;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ScenarioError(path, 0, "", "cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str(), path);
}

}  // namespace monagg
