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

#include "bnlab/greedy_auction.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "bnlab/parallel.hpp"

namespace bnlab {
namespace {

std::string FormatNumber(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.10g", x);
  return buf;
}

double OneMinusInvE() { return 1.0 - std::exp(-1.0); }

}  // namespace

const char* PriorityName(Priority priority) {
  switch (priority) {
    case Priority::kValue:
      return "value";
    case Priority::kValuePerItem:
      return "value-per-item";
    case Priority::kValuePerSqrtSize:
      return "value-per-sqrt-size";
  }
  return "unknown";
}

Priority ParsePriority(const std::string& name) {
  for (auto p : {Priority::kValue, Priority::kValuePerItem,
                 Priority::kValuePerSqrtSize}) {
    if (name == PriorityName(p)) return p;
  }
  throw InputError("unknown priority '" + name + "'");
}

double PriorityScore(Priority priority, ItemSet s, double value) {
  switch (priority) {
    case Priority::kValue:
      return value;
    case Priority::kValuePerItem:
      return value / SetSize(s);
    case Priority::kValuePerSqrtSize:
      return value / std::sqrt(static_cast<double>(SetSize(s)));
  }
  return value;
}

const char* BidLanguageName(BidLanguage language) {
  switch (language) {
    case BidLanguage::kSingleMinded:
      return "single-minded";
    case BidLanguage::kAdditive:
      return "additive";
    case BidLanguage::kBoth:
      return "both";
  }
  return "unknown";
}

BidLanguage ParseBidLanguage(const std::string& name) {
  for (auto l : {BidLanguage::kSingleMinded, BidLanguage::kAdditive,
                 BidLanguage::kBoth}) {
    if (name == BidLanguageName(l)) return l;
  }
  throw InputError("unknown bid language '" + name + "'");
}

// ---------------------------------------------------------------------------

Feasibility Feasibility::Explicit(int players, int items,
                                  std::vector<std::vector<ItemSet>> allocations) {
  Feasibility f(Kind::kExplicit);
  if (allocations.empty()) throw InputError("explicit feasibility is empty");
  for (const auto& alloc : allocations) {
    if (static_cast<int>(alloc.size()) != players) {
      throw InputError("feasible allocation has the wrong number of players");
    }
    for (ItemSet s : alloc) {
      if (!IsSubset(s, FullSet(items))) {
        throw InputError("feasible allocation names an unknown item");
      }
    }
    for (std::uint32_t drop = 0; drop < (1U << players); ++drop) {
      std::vector<ItemSet> reduced = alloc;
      for (int i = 0; i < players; ++i) {
        if ((drop >> i) & 1U) reduced[i] = 0;
      }
      f.closure_.insert(std::move(reduced));
    }
  }
  f.listed_ = std::move(allocations);
  return f;
}

std::string Feasibility::name() const {
  switch (kind_) {
    case Kind::kDisjointSets:
      return "disjoint-sets";
    case Kind::kUnrestricted:
      return "unrestricted";
    case Kind::kExplicit:
      return "explicit";
  }
  return "unknown";
}

bool Feasibility::Allows(std::span<const ItemSet> allocation) const {
  switch (kind_) {
    case Kind::kDisjointSets: {
      ItemSet used = 0;
      for (ItemSet s : allocation) {
        if (used & s) return false;
        used |= s;
      }
      return true;
    }
    case Kind::kUnrestricted:
      return true;
    case Kind::kExplicit:
      return closure_.count(
                 std::vector<ItemSet>(allocation.begin(), allocation.end())) > 0;
  }
  return false;
}

std::vector<std::vector<ItemSet>> Feasibility::Enumerate(int players,
                                                         int items) const {
  std::vector<std::vector<ItemSet>> out;
  if (kind_ == Kind::kExplicit) {
    out.assign(closure_.begin(), closure_.end());
    return out;
  }
  MixedRadixCounter counter(
      std::vector<int>(players, static_cast<int>(FullSet(items)) + 1));
  std::vector<ItemSet> alloc(players);
  do {
    for (int i = 0; i < players; ++i) alloc[i] = counter.digits()[i];
    if (Allows(alloc)) out.push_back(alloc);
  } while (counter.Next());
  return out;
}

// ---------------------------------------------------------------------------

GreedyMechanism::GreedyMechanism(int players, int items, Priority priority,
                                 Feasibility feasibility, BidGrid grid,
                                 BidLanguage language)
    : players_(players),
      items_(items),
      priority_(priority),
      feasibility_(std::move(feasibility)),
      grid_(std::move(grid)),
      language_(language) {
  if (players < 1) throw InputError("greedy mechanism needs a player");
  if (items < 1 || items > 10) {
    throw InputError("greedy mechanism supports 1 to 10 items");
  }
  if (grid_.size() < 2) throw InputError("greedy mechanism needs a bid grid");
  lex_sets_ = LexicographicSets(items);
  const std::size_t bundles = std::size_t{1} << items;
  std::map<BidFunction, ActionId> seen;
  auto add = [&](BidFunction b, std::string label) {
    auto [it, inserted] = seen.emplace(b, static_cast<ActionId>(bids_.size()));
    if (inserted) {
      bids_.push_back(std::move(b));
      labels_.push_back(std::move(label));
    }
    return it->second;
  };
  add(BidFunction(bundles, 0.0), "zero");
  if (language_ != BidLanguage::kSingleMinded) {
    MixedRadixCounter counter(std::vector<int>(items, grid_.size()));
    do {
      const auto& idx = counter.digits();
      BidFunction b(bundles, 0.0);
      for (ItemSet s = 1; s < bundles; ++s) {
        for (int j = 0; j < items; ++j) {
          if (Contains(s, j)) b[s] += grid_.point(idx[j]);
        }
      }
      std::string label = "add(";
      for (int j = 0; j < items; ++j) {
        label += (j ? "," : "") + FormatNumber(grid_.point(idx[j]));
      }
      add(std::move(b), label + ")");
    } while (counter.Next());
  }
  if (language_ != BidLanguage::kAdditive) {
    for (ItemSet s : lex_sets_) {
      single_minded_[{s, 0}] = 0;
      for (int k = 1; k < grid_.size(); ++k) {
        const ActionId id = add(SingleMinded(s, grid_.point(k)),
                                "sm" + SetToString(s) + ":" +
                                    FormatNumber(grid_.point(k)));
        single_minded_[{s, k}] = id;
      }
    }
  }
}

ActionId GreedyMechanism::SingleMindedAction(ItemSet s, int level) const {
  if (s == 0) return 0;
  auto it = single_minded_.find({s, level});
  return it == single_minded_.end() ? -1 : it->second;
}

BidFunction GreedyMechanism::SingleMinded(ItemSet s, double value) const {
  BidFunction b(std::size_t{1} << items_, 0.0);
  if (s != 0) b[s] = value;
  return b;
}

GreedyOutcome GreedyMechanism::Run(
    std::span<const BidFunction* const> bids) const {
  GreedyOutcome out;
  out.allocation.assign(players_, 0);
  out.payments.assign(players_, 0.0);
  std::vector<char> done(players_, 0);
  const bool disjoint =
      feasibility_.kind() == Feasibility::Kind::kDisjointSets;
  for (;;) {
    ItemSet used = 0;
    if (disjoint) {
      for (ItemSet s : out.allocation) used |= s;
    }
    int best_player = -1;
    ItemSet best_set = 0;
    double best_score = 0.0;
    for (PlayerId i = 0; i < players_; ++i) {
      if (done[i]) continue;
      for (ItemSet s : lex_sets_) {
        if (disjoint) {
          if (used & s) continue;
        } else {
          out.allocation[i] = s;
          const bool ok = feasibility_.Allows(out.allocation);
          out.allocation[i] = 0;
          if (!ok) continue;
        }
        const double score = PriorityScore(priority_, s, (*bids[i])[s]);
        if (best_player < 0 || score > best_score) {
          best_player = i;
          best_set = s;
          best_score = score;
        }
      }
    }
    if (best_player < 0) break;
    out.allocation[best_player] = best_set;
    out.payments[best_player] = (*bids[best_player])[best_set];
    done[best_player] = 1;
  }
  return out;
}

GreedyOutcome GreedyMechanism::RunActions(
    std::span<const ActionId> profile) const {
  std::vector<const BidFunction*> ptrs(players_);
  for (PlayerId i = 0; i < players_; ++i) ptrs[i] = &bids_[profile[i]];
  return Run(ptrs);
}

CriticalValue ComputeCriticalValue(const GreedyMechanism& mech, PlayerId i,
                                   ItemSet s,
                                   std::span<const BidFunction* const> bids) {
  CriticalValue out;
  if (s == 0) {
    out.index = 0;
    return out;
  }
  const BidGrid& grid = mech.grid();
  std::vector<const BidFunction*> ptrs(bids.begin(), bids.end());
  BidFunction mine;
  auto wins = [&](int k) {
    mine = mech.SingleMinded(s, grid.point(k));
    ptrs[i] = &mine;
    return mech.Run(ptrs).allocation[i] == s;
  };
  auto linear = [&]() {
    for (int k = 0; k < grid.size(); ++k) {
      if (wins(k)) {
        out.index = k;
        out.value = grid.point(k);
        return;
      }
    }
    out.index = -1;
    out.value = kInfinity;
  };
  const int top = grid.size() - 1;
  if (!wins(top)) {
    linear();
    out.flagged = out.index >= 0;
    return out;
  }
  int lo = 0;
  int hi = top;
  while (lo < hi) {
    const int mid = lo + (hi - lo) / 2;
    if (wins(mid)) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  if (hi > 0 && wins(hi - 1)) {
    linear();
    out.flagged = true;
    return out;
  }
  out.index = hi;
  out.value = grid.point(hi);
  return out;
}

double ContinuousThreshold(const GreedyMechanism& mech, PlayerId i, ItemSet s,
                           std::span<const BidFunction* const> bids) {
  if (s == 0) return 0.0;
  const double unit = PriorityScore(mech.priority(), s, 1.0);
  std::vector<double> candidates = {0.0};
  for (int j = 0; j < mech.players(); ++j) {
    if (j == i) continue;
    const BidFunction& b = *bids[j];
    for (ItemSet t = 1; t < static_cast<ItemSet>(b.size()); ++t) {
      if (b[t] > 0.0) {
        candidates.push_back(PriorityScore(mech.priority(), t, b[t]) / unit);
      }
    }
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()),
                   candidates.end());
  std::vector<const BidFunction*> ptrs(bids.begin(), bids.end());
  BidFunction mine;
  auto wins = [&](double x) {
    mine = mech.SingleMinded(s, x);
    ptrs[i] = &mine;
    return mech.Run(ptrs).allocation[i] == s;
  };
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    const double above = k + 1 < candidates.size()
                             ? 0.5 * (candidates[k] + candidates[k + 1])
                             : candidates[k] + 1.0;
    if (wins(above)) return candidates[k];
  }
  return kInfinity;
}

namespace {

double BidValue(std::span<const BidFunction* const> bids,
                std::span<const ItemSet> alloc) {
  double total = 0.0;
  for (std::size_t i = 0; i < alloc.size(); ++i) total += (*bids[i])[alloc[i]];
  return total;
}

double RatioAt(const GreedyMechanism& mech,
               const std::vector<std::vector<ItemSet>>& feasible,
               std::span<const BidFunction* const> bids) {
  const double greedy = BidValue(bids, mech.Run(bids).allocation);
  double best = 0.0;
  for (const auto& alloc : feasible) best = std::max(best, BidValue(bids, alloc));
  if (greedy <= 0.0) return best > 0.0 ? kInfinity : 1.0;
  return best / greedy;
}

}  // namespace

double ApproximationRatio(const GreedyMechanism& mech,
                          std::span<const BidFunction* const> bids) {
  return RatioAt(mech, mech.feasibility().Enumerate(mech.players(), mech.items()),
                 bids);
}

double ApproximationFactor(const GreedyMechanism& mech) {
  const auto feasible =
      mech.feasibility().Enumerate(mech.players(), mech.items());
  const int count = static_cast<int>(mech.bids().size());
  MixedRadixCounter counter(std::vector<int>(mech.players(), count));
  if (counter.count() > 10'000'000) {
    throw GuardExceededError("approximation factor",
                             static_cast<double>(counter.count()), 1e7);
  }
  std::vector<const BidFunction*> ptrs(mech.players());
  double factor = 1.0;
  do {
    for (int i = 0; i < mech.players(); ++i) {
      ptrs[i] = &mech.bids()[counter.digits()[i]];
    }
    factor = std::max(factor, RatioAt(mech, feasible, ptrs));
  } while (counter.Next());
  return factor;
}

PaymentFactVerdict CheckPaymentFact(const GreedyMechanism& mech,
                                    std::span<const ActionId> profile,
                                    std::span<const ItemSet> alternative,
                                    double c) {
  std::vector<const BidFunction*> ptrs(mech.players());
  for (int i = 0; i < mech.players(); ++i) ptrs[i] = &mech.bids()[profile[i]];
  PaymentFactVerdict v;
  const GreedyOutcome outcome = mech.Run(ptrs);
  for (double p : outcome.payments) v.payments += p;
  for (int i = 0; i < mech.players(); ++i) {
    v.thresholds += ContinuousThreshold(mech, i, alternative[i], ptrs);
  }
  v.margin = c * v.payments - v.thresholds;
  v.pass = v.margin >= -kNumericTolerance;
  return v;
}

PaymentFactSweep CheckPaymentFactAll(const GreedyMechanism& mech, double c,
                                     int threads) {
  const auto feasible =
      mech.feasibility().Enumerate(mech.players(), mech.items());
  const int count = static_cast<int>(mech.bids().size());
  MixedRadixCounter probe(std::vector<int>(mech.players(), count));
  const std::int64_t profiles = probe.count();
  const auto alternatives = static_cast<std::int64_t>(feasible.size());
  if (static_cast<double>(profiles) * alternatives > 1e7) {
    throw GuardExceededError("payment fact sweep",
                             static_cast<double>(profiles) * alternatives, 1e7);
  }
  struct Worst {
    double margin = kInfinity;
    std::int64_t index = -1;
    std::int64_t checked = 0;
  };
  const int chunks = NumChunks(profiles, threads);
  std::vector<Worst> partial(chunks);
  ParallelChunks(profiles, threads, [&](std::int64_t begin, std::int64_t end,
                                        int chunk) {
    MixedRadixCounter counter(std::vector<int>(mech.players(), count));
    counter.Seek(begin);
    Worst& w = partial[chunk];
    for (std::int64_t p = begin; p < end; ++p) {
      for (std::int64_t q = 0; q < alternatives; ++q) {
        const PaymentFactVerdict v =
            CheckPaymentFact(mech, counter.digits(), feasible[q], c);
        ++w.checked;
        if (v.margin < w.margin) {
          w.margin = v.margin;
          w.index = p * alternatives + q;
        }
      }
      counter.Next();
    }
  });
  PaymentFactSweep out;
  Worst total;
  for (const Worst& w : partial) {
    total.checked += w.checked;
    if (w.index >= 0 && (w.margin < total.margin ||
                         (w.margin == total.margin && w.index < total.index))) {
      total.margin = w.margin;
      total.index = w.index;
    }
  }
  out.checked = total.checked;
  out.worst_margin = total.margin;
  out.pass = !(total.margin < -kNumericTolerance);
  if (total.index >= 0) {
    probe.Seek(total.index / alternatives);
    out.worst_profile = probe.digits();
    out.worst_alternative = feasible[total.index % alternatives];
  }
  return out;
}

// ---------------------------------------------------------------------------

GreedyAuction::GreedyAuction(GreedyAuctionSpec spec)
    : spec_(std::move(spec)),
      num_bidders_(static_cast<int>(spec_.types.size())),
      mechanism_(num_bidders_, spec_.items, spec_.priority, spec_.feasibility,
                 spec_.grid, spec_.language) {
  if (static_cast<int>(spec_.valuations.size()) != num_bidders_) {
    throw InputError("one valuation list per bidder required");
  }
  for (PlayerId i = 0; i < num_bidders_; ++i) {
    if (static_cast<int>(spec_.valuations[i].size()) != spec_.types[i].size()) {
      throw InputError("bidder " + std::to_string(i) +
                       " needs one valuation per type");
    }
    for (const Valuation& v : spec_.valuations[i]) {
      if (v.items() != spec_.items) {
        throw InputError("valuation of bidder " + std::to_string(i) +
                         " has the wrong item count");
      }
    }
  }
  feasible_ = spec_.feasibility.Enumerate(num_bidders_, spec_.items);
  for (ActionId a = 0; a < static_cast<ActionId>(mechanism_.bids().size());
       ++a) {
    bid_actions_.push_back(a);
  }
}

const TypeDistribution& GreedyAuction::type_distribution(PlayerId i) const {
  return i == seller() ? seller_types_ : spec_.types[i];
}

int GreedyAuction::num_actions(PlayerId i) const {
  return i == seller() ? 1 : static_cast<int>(bid_actions_.size());
}

std::span<const ActionId> GreedyAuction::actions(PlayerId i, TypeId) const {
  return i == seller() ? std::span<const ActionId>(seller_actions_)
                       : std::span<const ActionId>(bid_actions_);
}

double GreedyAuction::utility(PlayerId i, TypeId ti,
                              std::span<const ActionId> profile) const {
  const GreedyOutcome o = mechanism_.RunActions(profile.first(num_bidders_));
  if (i == seller()) {
    double revenue = 0.0;
    for (double p : o.payments) revenue += p;
    return revenue;
  }
  return spec_.valuations[i][ti].Value(o.allocation[i]) - o.payments[i];
}

void GreedyAuction::utilities(std::span<const TypeId> types,
                              std::span<const ActionId> profile,
                              std::span<double> out) const {
  const GreedyOutcome o = mechanism_.RunActions(profile.first(num_bidders_));
  double revenue = 0.0;
  for (PlayerId i = 0; i < num_bidders_; ++i) {
    out[i] = spec_.valuations[i][types[i]].Value(o.allocation[i]) -
             o.payments[i];
    revenue += o.payments[i];
  }
  out[seller()] = revenue;
}

std::pair<std::vector<ItemSet>, double> GreedyAuction::OptimalAllocation(
    std::span<const TypeId> types) const {
  std::pair<std::vector<ItemSet>, double> best{{}, -kInfinity};
  for (const auto& alloc : feasible_) {
    double w = 0.0;
    for (PlayerId i = 0; i < num_bidders_; ++i) {
      w += spec_.valuations[i][types[i]].Value(alloc[i]);
    }
    if (w > best.second) best = {alloc, w};
  }
  return best;
}

std::optional<double> GreedyAuction::optimal_welfare_shortcut(
    std::span<const TypeId> types) const {
  if (!mechanism_.has_single_minded()) return std::nullopt;
  return OptimalAllocation(types).second;
}

std::string GreedyAuction::action_label(PlayerId i, ActionId a) const {
  if (i == seller()) return "sell";
  return mechanism_.bid_labels()[a];
}

// ---------------------------------------------------------------------------

double GreedySlack(const GreedyAuction& auction) {
  return auction.num_bidders() * auction.mechanism().grid().step();
}

namespace {

void RequireSingleMinded(const GreedyAuction& auction) {
  if (!auction.mechanism().has_single_minded()) {
    throw InputError(
        "greedy certificates need single-minded bids in the bid language");
  }
}

class BoundRandomizedGreedy final : public BoundDeviation {
 public:
  BoundRandomizedGreedy(const GreedyAuction& auction,
                        std::span<const TypeId> types)
      : auction_(auction) {
    bundles_ = auction.OptimalAllocation(types).first;
    const double top = auction.mechanism().grid().max();
    for (PlayerId i = 0; i < auction.num_bidders(); ++i) {
      values_.push_back(auction.valuation(i, types[i]).Value(bundles_[i]));
      if (values_.back() * OneMinusInvE() > top + 1e-9) {
        throw InputError("bid grid does not cover the randomized deviation");
      }
    }
  }

  double Utility(std::span<ActionId> profile, PlayerId i) const override {
    if (i == auction_.seller()) return auction_.utility(i, 0, profile);
    if (bundles_[i] == 0) return 0.0;
    const GreedyMechanism& mech = auction_.mechanism();
    std::vector<const BidFunction*> ptrs(auction_.num_bidders());
    for (PlayerId k = 0; k < auction_.num_bidders(); ++k) {
      ptrs[k] = &mech.bids()[profile[k]];
    }
    const CriticalValue theta =
        ComputeCriticalValue(mech, i, bundles_[i], ptrs);
    if (theta.index < 0) return 0.0;
    return std::max(0.0, OneMinusInvE() * values_[i] - theta.value);
  }

 private:
  const GreedyAuction& auction_;
  std::vector<ItemSet> bundles_;
  std::vector<double> values_;
};

class RandomizedGreedyDeviation final : public Deviation {
 public:
  explicit RandomizedGreedyDeviation(const GreedyAuction& auction)
      : auction_(auction) {}
  std::string name() const override { return "randomized-greedy"; }
  std::unique_ptr<BoundDeviation> Bind(
      const BayesianGame& game, std::span<const TypeId> types) const override {
    if (&game != &auction_) {
      throw InputError("randomized deviation bound to a different game");
    }
    return std::make_unique<BoundRandomizedGreedy>(auction_, types);
  }

 private:
  const GreedyAuction& auction_;
};

}  // namespace

std::unique_ptr<Deviation> MakeSingleMindedHalfDeviation(
    const GreedyAuction& auction) {
  RequireSingleMinded(auction);
  return std::make_unique<ProfileDeviation>(
      "single-minded-half",
      [&auction](const BayesianGame&, std::span<const TypeId> types) {
        const auto opt = auction.OptimalAllocation(types).first;
        const GreedyMechanism& mech = auction.mechanism();
        std::vector<ActionId> out(auction.num_players(), 0);
        for (PlayerId i = 0; i < auction.num_bidders(); ++i) {
          const double half = auction.valuation(i, types[i]).Value(opt[i]) / 2;
          if (half > mech.grid().max() + 1e-9) {
            throw InputError("bid grid does not cover the half-value bid");
          }
          out[i] = mech.SingleMindedAction(opt[i], mech.grid().SnapDown(half));
        }
        return out;
      });
}

std::unique_ptr<Deviation> MakeRandomizedGreedyDeviation(
    const GreedyAuction& auction) {
  RequireSingleMinded(auction);
  return std::make_unique<RandomizedGreedyDeviation>(auction);
}

SmoothnessVerdict CheckGreedySmoothness(const GreedyAuction& auction, double c,
                                        bool randomized, CheckOptions options) {
  RequireSingleMinded(auction);
  options.slack = GreedySlack(auction);
  const auto deviation = randomized ? MakeRandomizedGreedyDeviation(auction)
                                    : MakeSingleMindedHalfDeviation(auction);
  const double lambda = randomized ? OneMinusInvE() : 0.5;
  const PlayerId seller = auction.seller();
  return CheckRelaxed(auction, lambda, c - 1.0, *deviation,
                      std::span<const PlayerId>(&seller, 1), options);
}

}  // namespace bnlab
