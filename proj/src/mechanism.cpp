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

#include "monagg/mechanism.hpp"

#include <optional>
#include <string>

namespace monagg {

namespace {

void check_inputs(std::span<const UtilityReport> reports, const ShareSchedule& schedule) {
  if (static_cast<int>(reports.size()) != schedule.buyer_count()) {
    throw DomainError("got " + std::to_string(reports.size()) + " reports for a schedule over " +
                      std::to_string(schedule.buyer_count()) + " buyers");
  }
}

void check_price(const Scalar& price) {
  if (price.sign() < 0) throw DomainError("price must be non-negative");
}

AllocationOutcome divide(const ShareVectorPair& shares, BuyerSet winners, const Scalar& price) {
  AllocationOutcome out;
  out.purchased = true;
  out.winning_set = winners;
  out.fractions = shares.x;
  out.payments.reserve(shares.y.size());
  for (const Scalar& y : shares.y) out.payments.push_back(price * y);
  out.price = price;
  return out;
}

}  // namespace

AllocationOutcome AllocationOutcome::nothing(int n) {
  AllocationOutcome out;
  out.fractions.assign(n, Scalar(0));
  out.payments.assign(n, Scalar(0));
  return out;
}

BetaTrace compute_beta_from(std::span<const UtilityReport> reports, const ShareSchedule& schedule,
                            BuyerSet start, const NumericPolicy& policy) {
  check_inputs(reports, schedule);
  const int n = schedule.buyer_count();
  if (start.empty()) throw DomainError("start set must be non-empty");
  if (!start.is_subset_of(BuyerSet::all(n))) throw DomainError("start set outside the buyers");

  BetaTrace trace;
  trace.buyer_count = n;
  BuyerSet active = start;
  std::vector<Scalar> value(n);
  while (!active.empty()) {
    const ShareVectorPair shares = schedule.shares_for(active);
    std::optional<Scalar> beta;
    for (int i : active) {
      if (shares.y[i].sign() <= 0) continue;
      value[i] = reports[i](shares.x[i]);
      Scalar ratio = value[i] / shares.y[i];
      if (!beta || ratio < *beta) beta = std::move(ratio);
    }
    if (!beta) {
      throw ScheduleError("no buyer in " + active.display() + " has a positive payment share");
    }
    BuyerSet removed;
    for (int i : active) {
      if (shares.y[i].sign() <= 0) continue;
      if (policy.eq_scaled(*beta * shares.y[i], value[i], *beta)) removed.insert(i);
    }
    trace.steps.push_back({active, *beta, removed});
    active = active - removed;
  }
  trace.beta_star = trace.steps.front().beta;
  for (const BetaStep& step : trace.steps) trace.beta_star = max(trace.beta_star, step.beta);
  return trace;
}

BetaTrace compute_beta(std::span<const UtilityReport> reports, const ShareSchedule& schedule,
                       const NumericPolicy& policy) {
  return compute_beta_from(reports, schedule, BuyerSet::all(schedule.buyer_count()), policy);
}

AllocationOutcome allocate(const BetaTrace& trace, const ShareSchedule& schedule, const Scalar& price,
                           const NumericPolicy& policy) {
  check_price(price);
  if (trace.buyer_count != schedule.buyer_count()) throw DomainError("trace and schedule disagree on n");
  for (const BetaStep& step : trace.steps) {
    if (policy.ge(step.beta, price)) {
      return divide(schedule.shares_for(step.subset), step.subset, price);
    }
  }
  return AllocationOutcome::nothing(trace.buyer_count);
}

AllocationOutcome fixed_price_outcome(std::span<const UtilityReport> reports, const ShareSchedule& schedule,
                                      const Scalar& price, const NumericPolicy& policy) {
  check_inputs(reports, schedule);
  check_price(price);
  const int n = schedule.buyer_count();
  BuyerSet active = BuyerSet::all(n);
  while (!active.empty()) {
    const ShareVectorPair shares = schedule.shares_for(active);
    BuyerSet failing;
    for (int i : active) {
      if (shares.y[i].sign() <= 0) continue;
      if (policy.lt(reports[i](shares.x[i]), price * shares.y[i])) failing.insert(i);
    }
    if (failing.empty()) return divide(shares, active, price);
    active = active - failing;
  }
  return AllocationOutcome::nothing(n);
}

AllocationOutcome rerun_from(std::span<const UtilityReport> reports, const ShareSchedule& schedule,
                             BuyerSet start, const Scalar& price, const NumericPolicy& policy) {
  return allocate(compute_beta_from(reports, schedule, start, policy), schedule, price, policy);
}

}  // namespace monagg
