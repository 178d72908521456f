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

#include "monagg/auction.hpp"

namespace monagg {

void AuctionConfig::validate() const {
  if (reserve.sign() < 0) throw DomainError("reserve price must be non-negative");
  for (const Scalar& b : competing_bids) {
    if (b.sign() < 0) throw DomainError("competing bids must be non-negative");
  }
}

Scalar AuctionConfig::threshold() const {
  Scalar t = reserve;
  for (const Scalar& b : competing_bids) t = max(t, b);
  return t;
}

AuctionResult run_second_price(const Scalar& group_bid, const AuctionConfig& cfg, const NumericPolicy& policy) {
  if (group_bid.sign() < 0) throw DomainError("group bid must be non-negative");
  cfg.validate();
  const Scalar threshold = cfg.threshold();
  bool won = policy.gt(group_bid, threshold);
  if (!won && policy.eq(group_bid, threshold)) {
    won = cfg.tie_policy == TiePolicy::kGroupWins && policy.ge(group_bid, cfg.reserve);
  }
  AuctionResult result;
  result.group_won = won;
  if (won) result.clearing_price = threshold;
  return result;
}

ParticipationResult run_group_participation(std::span<const UtilityReport> reports,
                                            const ShareSchedule& schedule, const AuctionConfig& cfg,
                                            const NumericPolicy& policy) {
  ParticipationResult r;
  r.trace = compute_beta(reports, schedule, policy);
  r.auction = run_second_price(r.trace.beta_star, cfg, policy);
  r.outcome = r.auction.group_won ? allocate(r.trace, schedule, r.auction.clearing_price, policy)
                                  : AllocationOutcome::nothing(schedule.buyer_count());
  return r;
}

}  // namespace monagg
