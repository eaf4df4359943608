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

#ifndef BNLAB_GREEDY_AUCTION_HPP_
#define BNLAB_GREEDY_AUCTION_HPP_

#include <map>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bnlab/game.hpp"
#include "bnlab/item_auction.hpp"
#include "bnlab/smoothness.hpp"
#include "bnlab/valuations.hpp"

namespace bnlab {

enum class Priority { kValue, kValuePerItem, kValuePerSqrtSize };

const char* PriorityName(Priority priority);
Priority ParsePriority(const std::string& name);
// r(S, v); every built-in is nondecreasing in v.
double PriorityScore(Priority priority, ItemSet s, double value);

enum class BidLanguage { kSingleMinded, kAdditive, kBoth };

const char* BidLanguageName(BidLanguage language);
BidLanguage ParseBidLanguage(const std::string& name);

// Allowed allocation vectors (one set per player, empty = unallocated).
// Explicit families are closed under emptying any subset of players.
class Feasibility {
 public:
  enum class Kind { kDisjointSets, kUnrestricted, kExplicit };

  static Feasibility DisjointSets() { return Feasibility(Kind::kDisjointSets); }
  static Feasibility Unrestricted() { return Feasibility(Kind::kUnrestricted); }
  static Feasibility Explicit(int players, int items,
                              std::vector<std::vector<ItemSet>> allocations);

  Kind kind() const { return kind_; }
  std::string name() const;
  // The listed allocations before closure (explicit families).
  const std::vector<std::vector<ItemSet>>& listed() const { return listed_; }

  bool Allows(std::span<const ItemSet> allocation) const;
  // Every feasible allocation, in lexicographic order of the set vectors.
  std::vector<std::vector<ItemSet>> Enumerate(int players, int items) const;

 private:
  explicit Feasibility(Kind kind) : kind_(kind) {}

  Kind kind_;
  std::vector<std::vector<ItemSet>> listed_;
  std::set<std::vector<ItemSet>> closure_;
};

// b(S) for every bundle S (index = bitmask, b(empty) = 0).
using BidFunction = std::vector<double>;

struct GreedyOutcome {
  std::vector<ItemSet> allocation;
  std::vector<double> payments;
};

struct CriticalValue {
  double value = 0.0;     // kInfinity when no grid level wins
  int index = -1;         // grid index, -1 when infinite
  bool flagged = false;   // win indicator was not monotone on the grid
};

// Greedy first-price mechanism: repeatedly allocate the feasible pair
// (i, S) of highest priority r(S, b_i(S)) among unallocated players, with
// ties to the lowest player and then the lexicographically smallest set.
// Winners pay their bid on the allocated set.
class GreedyMechanism {
 public:
  GreedyMechanism(int players, int items, Priority priority,
                  Feasibility feasibility, BidGrid grid, BidLanguage language);

  int players() const { return players_; }
  int items() const { return items_; }
  Priority priority() const { return priority_; }
  const Feasibility& feasibility() const { return feasibility_; }
  const BidGrid& grid() const { return grid_; }
  BidLanguage language() const { return language_; }
  bool has_single_minded() const { return language_ != BidLanguage::kAdditive; }

  // Bid functions available to every player; index = action id.
  const std::vector<BidFunction>& bids() const { return bids_; }
  const std::vector<std::string>& bid_labels() const { return labels_; }
  // Action bidding grid level `level` on exactly `s` (and 0 elsewhere);
  // -1 when the language lacks it.
  ActionId SingleMindedAction(ItemSet s, int level) const;
  BidFunction SingleMinded(ItemSet s, double value) const;

  GreedyOutcome Run(std::span<const BidFunction* const> bids) const;
  GreedyOutcome RunActions(std::span<const ActionId> profile) const;

 private:
  int players_;
  int items_;
  Priority priority_;
  Feasibility feasibility_;
  BidGrid grid_;
  BidLanguage language_;
  std::vector<ItemSet> lex_sets_;
  std::vector<BidFunction> bids_;
  std::vector<std::string> labels_;
  std::map<std::pair<ItemSet, int>, ActionId> single_minded_;
};

// theta_i(S, b_-i): smallest grid level v such that bidding v single-mindedly
// on S wins exactly S. Binary search with a boundary check; falls back to a
// linear scan (and flags) when the boundary check fails. theta(empty) = 0.
CriticalValue ComputeCriticalValue(const GreedyMechanism& mech, PlayerId i,
                                   ItemSet s,
                                   std::span<const BidFunction* const> bids);

// Threshold over real bids: inf{x >= 0 : bidding x single-mindedly on S wins
// exactly S}, with the grid lifted. Candidates are the competing priorities
// mapped onto S; kInfinity when even the top candidate loses.
double ContinuousThreshold(const GreedyMechanism& mech, PlayerId i, ItemSet s,
                           std::span<const BidFunction* const> bids);

// (optimal feasible bid value) / (greedy bid value) at one bid profile;
// kInfinity if greedy gets 0 while the optimum is positive, 1 if both are 0.
double ApproximationRatio(const GreedyMechanism& mech,
                          std::span<const BidFunction* const> bids);

// Maximum of (optimal feasible bid value) / (greedy bid value) over every
// action profile of the mechanism; kInfinity if greedy gets 0 while the
// optimum is positive.
double ApproximationFactor(const GreedyMechanism& mech);

struct PaymentFactVerdict {
  bool pass = false;
  double thresholds = 0.0;  // sum_i of ContinuousThreshold on A'_i
  double payments = 0.0;    // sum_i b_i(A_i)
  double margin = 0.0;      // c * payments - thresholds
};

// sum_i theta_i(A'_i, b_-i) <= c * sum_i b_i(A_i).
PaymentFactVerdict CheckPaymentFact(const GreedyMechanism& mech,
                                    std::span<const ActionId> profile,
                                    std::span<const ItemSet> alternative,
                                    double c);

struct PaymentFactSweep {
  bool pass = true;
  std::int64_t checked = 0;
  double worst_margin = kInfinity;
  std::vector<ActionId> worst_profile;
  std::vector<ItemSet> worst_alternative;
};

// CheckPaymentFact over every action profile and feasible allocation.
PaymentFactSweep CheckPaymentFactAll(const GreedyMechanism& mech, double c,
                                     int threads = 1);

struct GreedyAuctionSpec {
  int items = 1;
  Priority priority = Priority::kValue;
  Feasibility feasibility = Feasibility::DisjointSets();
  BidLanguage language = BidLanguage::kBoth;
  BidGrid grid;
  std::vector<TypeDistribution> types;             // per bidder
  std::vector<std::vector<Valuation>> valuations;  // [bidder][type]
};

// Bayesian game over a greedy mechanism: bidders 0..n-1 pick bid functions,
// player n is the seller collecting the payments.
class GreedyAuction final : public BayesianGame {
 public:
  explicit GreedyAuction(GreedyAuctionSpec spec);

  std::string family() const override { return "greedy-auction"; }
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
  std::optional<double> optimal_welfare_shortcut(
      std::span<const TypeId> types) const override;
  std::string action_label(PlayerId i, ActionId a) const override;

  const GreedyAuctionSpec& spec() const { return spec_; }
  const GreedyMechanism& mechanism() const { return mechanism_; }
  int num_bidders() const { return num_bidders_; }
  PlayerId seller() const { return num_bidders_; }
  const Valuation& valuation(PlayerId i, TypeId t) const {
    return spec_.valuations[i][t];
  }

  // Welfare-maximizing feasible allocation under true values; ties go to the
  // first allocation in Feasibility::Enumerate order.
  std::pair<std::vector<ItemSet>, double> OptimalAllocation(
      std::span<const TypeId> types) const;

 private:
  GreedyAuctionSpec spec_;
  int num_bidders_;
  GreedyMechanism mechanism_;
  std::vector<std::vector<ItemSet>> feasible_;
  std::vector<ActionId> bid_actions_;
  std::vector<ActionId> seller_actions_{0};
  TypeDistribution seller_types_ = TypeDistribution::Singleton("seller");
};

// n * grid step.
double GreedySlack(const GreedyAuction& auction);

// Bid v_i(Opt_i)/2, snapped down, single-mindedly on Opt_i.
std::unique_ptr<Deviation> MakeSingleMindedHalfDeviation(
    const GreedyAuction& auction);
// Expected utility max(0, (1 - 1/e) v_i(Opt_i) - theta_i(Opt_i, b_-i)) of a
// random single-minded bid with density 1/(v - x).
std::unique_ptr<Deviation> MakeRandomizedGreedyDeviation(
    const GreedyAuction& auction);

// Relaxed smoothness with K = {seller}, mu = c - 1, lambda = 1/2 (or
// 1 - 1/e when randomized), slack GreedySlack(auction). Throws InputError
// when the bid language has no single-minded bids.
SmoothnessVerdict CheckGreedySmoothness(const GreedyAuction& auction, double c,
                                        bool randomized = false,
                                        CheckOptions options = {});

}  // namespace bnlab

#endif  // BNLAB_GREEDY_AUCTION_HPP_
