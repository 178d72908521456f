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

#include <span>
#include <vector>

#include "monagg/mechanism.hpp"

namespace monagg {

enum class TiePolicy { kGroupWins, kGroupLoses };

// Sealed-bid second-price auction with reserve; rival bids are exogenous.
struct AuctionConfig {
  Scalar reserve;
  std::vector<Scalar> competing_bids;
  TiePolicy tie_policy = TiePolicy::kGroupWins;

  // Throws DomainError on negative reserve or bids.
  void validate() const;
  // max(reserve, highest competing bid)
  Scalar threshold() const;
};

struct AuctionResult {
  bool group_won = false;
  Scalar clearing_price;  // meaningful only when group_won
  friend bool operator==(const AuctionResult&, const AuctionResult&) = default;
};

AuctionResult run_second_price(const Scalar& group_bid, const AuctionConfig& cfg,
                               const NumericPolicy& policy = NumericPolicy::approx());

struct ParticipationResult {
  BetaTrace trace;
  AuctionResult auction;
  AllocationOutcome outcome;
};

// Bid beta*, then divide at the clearing price if the group wins.
ParticipationResult run_group_participation(std::span<const UtilityReport> reports,
                                            const ShareSchedule& schedule, const AuctionConfig& cfg,
                                            const NumericPolicy& policy = NumericPolicy::approx());

}  // namespace monagg
