// Copyright 2026 The bnlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BNLAB_ITEM_AUCTION_HPP_
#define BNLAB_ITEM_AUCTION_HPP_

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bnlab/game.hpp"
#include "bnlab/smoothness.hpp"
#include "bnlab/valuations.hpp"

namespace bnlab {

// Sorted bid levels starting at 0.
class BidGrid {
 public:
  BidGrid() = default;
  explicit BidGrid(std::vector<double> points);
  // {0, step, 2 step, ...} up to max (inclusive within 1e-9).
  static BidGrid Uniform(double step, double max);

  int size() const { return static_cast<int>(points_.size()); }
  double point(int k) const { return points_[k]; }
  const std::vector<double>& points() const { return points_; }
  double max() const { return points_.back(); }
  // Largest gap between consecutive levels.
  double step() const { return step_; }
  // Index of the largest level <= x (0 for x below every level).
  int SnapDown(double x) const;
  // Index of `x` when it is a level (within 1e-12), else -1.
  int IndexOf(double x) const;

 private:
  std::vector<double> points_;
  double step_ = 0.0;
};

enum class Pricing { kFirstPrice, kSecondPrice };

const char* PricingName(Pricing pricing);
Pricing ParsePricing(const std::string& name);

struct ItemAuctionSpec {
  Pricing pricing = Pricing::kFirstPrice;
  int items = 1;
  BidGrid grid;
  std::vector<TypeDistribution> types;             // per bidder
  std::vector<std::vector<Valuation>> valuations;  // [bidder][type]
  // Bids b_ij <= v_i({j}). Defaults to on for second price, off otherwise.
  std::optional<bool> no_overbidding;
};

struct AuctionOutcome {
  std::vector<int> winner;     // per item
  std::vector<double> price;   // per item
};

struct Allocation {
  std::vector<int> owner;      // per item
  std::vector<ItemSet> sets;   // per bidder
  double welfare = 0.0;
};

// Simultaneous single-item auctions. Players 0..n-1 are bidders, player n is
// the seller (one type, one action, utility = revenue). A bidder action is a
// bid vector with one grid level per item, encoded in mixed radix with item 0
// most significant.
class ItemAuction final : public BayesianGame {
 public:
  explicit ItemAuction(ItemAuctionSpec spec);

  std::string family() const override { return "item-auction"; }
  int num_players() const override { return num_bidders_ + 1; }
  Objective objective() const override { return Objective::kUtility; }
  const TypeDistribution& type_distribution(PlayerId i) const override;
  int num_actions(PlayerId i) const override;
  std::span<const ActionId> actions(PlayerId i, TypeId t) const override;
  double utility(PlayerId i, TypeId ti,
                 std::span<const ActionId> profile) const override;
  void utilities(std::span<const TypeId> types,
                 std::span<const ActionId> profile,
                 std::span<double> out) const override;
  double welfare(std::span<const TypeId> types,
                 std::span<const ActionId> profile) const override;
  std::optional<double> optimal_welfare_shortcut(
      std::span<const TypeId> types) const override;
  std::string action_label(PlayerId i, ActionId a) const override;

  const ItemAuctionSpec& spec() const { return spec_; }
  int num_bidders() const { return num_bidders_; }
  int items() const { return spec_.items; }
  PlayerId seller() const { return num_bidders_; }
  Pricing pricing() const { return spec_.pricing; }
  const BidGrid& grid() const { return spec_.grid; }
  bool no_overbidding() const { return *spec_.no_overbidding; }
  const Valuation& valuation(PlayerId i, TypeId t) const {
    return spec_.valuations[i][t];
  }

  // Grid indices of a bid action.
  std::span<const int> BidIndices(ActionId a) const {
    return {bid_indices_.data() + static_cast<std::size_t>(a) * spec_.items,
            static_cast<std::size_t>(spec_.items)};
  }
  double Bid(ActionId a, int item) const {
    return spec_.grid.point(BidIndices(a)[item]);
  }
  ActionId EncodeBid(std::span<const int> indices) const;
  std::vector<double> BidValues(ActionId a) const;

  // Highest bidder wins each item (ties to the lowest index) and pays the
  // winning bid (first price) or the highest other bid (second price).
  AuctionOutcome AllocateAndPrice(std::span<const ActionId> profile) const;

  // Welfare-maximizing assignment of items to bidders under true types;
  // ties go to the lexicographically first owner vector.
  Allocation OptimalAllocation(std::span<const TypeId> types) const;

 private:
  ItemAuctionSpec spec_;
  int num_bidders_;
  int bid_actions_;
  std::vector<int> bid_indices_;
  std::vector<std::vector<std::vector<ActionId>>> available_;  // [i][t]
  std::vector<ActionId> seller_actions_{0};
  TypeDistribution seller_types_ = TypeDistribution::Singleton("seller");
};

// max(n, m) * grid step: covers the rounding of deviation bids onto the grid.
double AuctionSlack(const ItemAuction& auction);

// Per-item bids of the half-bid deviation for bidder i: half the supporting
// additive value on its optimal bundle, snapped down to the grid.
std::vector<double> HalfBidDeviation(const ItemAuction& auction,
                                     std::span<const TypeId> types, PlayerId i);

// Expected utility of bidding on item j with density 1/(a - x) on
// [0, a (1 - 1/e)] against the highest competing bid `threshold`.
double RandomizedBidUtility(double a, double threshold);

// Sum of RandomizedBidUtility over bidder i's optimal bundle, with thresholds
// read from the other bidders' bids in `profile`.
double RandomizedDeviationUtility(const ItemAuction& auction,
                                  std::span<const TypeId> types, PlayerId i,
                                  std::span<const ActionId> profile);

enum class AuctionDeviation { kHalfBid, kRandomized };

const char* AuctionDeviationName(AuctionDeviation kind);

// Deviation objects for the generic checks.
std::unique_ptr<Deviation> MakeHalfBidDeviation(const ItemAuction& auction);
std::unique_ptr<Deviation> MakeRandomizedDeviation(const ItemAuction& auction);

// Semi-smoothness with mu = 0 under the chosen deviation, slack
// AuctionSlack(auction). Throws InputError for second-price auctions.
SmoothnessVerdict CheckFirstPriceSemiSmoothness(const ItemAuction& auction,
                                                double lambda,
                                                AuctionDeviation kind,
                                                CheckOptions options = {});

}  // namespace bnlab

#endif  // BNLAB_ITEM_AUCTION_HPP_
