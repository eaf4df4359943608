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

#include "bnlab/item_auction.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace bnlab {
namespace {

constexpr double kGridTolerance = 1e-12;

std::string FormatNumber(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.10g", x);
  return buf;
}

}  // namespace

BidGrid::BidGrid(std::vector<double> points) : points_(std::move(points)) {
  if (points_.size() < 2) throw InputError("bid grid needs at least two levels");
  if (points_[0] != 0.0) throw InputError("bid grid must start at 0");
  for (std::size_t k = 1; k < points_.size(); ++k) {
    if (!std::isfinite(points_[k]) || !(points_[k] > points_[k - 1])) {
      throw InputError("bid grid must be strictly increasing and finite");
    }
    step_ = std::max(step_, points_[k] - points_[k - 1]);
  }
}

BidGrid BidGrid::Uniform(double step, double max) {
  if (!(step > 0.0) || !(max >= step)) {
    throw InputError("uniform grid needs 0 < step <= max");
  }
  const int levels = static_cast<int>(std::floor(max / step + 1e-9));
  std::vector<double> points;
  for (int k = 0; k <= levels; ++k) points.push_back(k * step);
  return BidGrid(std::move(points));
}

int BidGrid::SnapDown(double x) const {
  auto it = std::upper_bound(points_.begin(), points_.end(), x + kGridTolerance);
  if (it == points_.begin()) return 0;
  return static_cast<int>(it - points_.begin()) - 1;
}

int BidGrid::IndexOf(double x) const {
  const int k = SnapDown(x);
  return std::abs(points_[k] - x) <= kGridTolerance ? k : -1;
}

const char* PricingName(Pricing pricing) {
  return pricing == Pricing::kFirstPrice ? "first-price" : "second-price";
}

Pricing ParsePricing(const std::string& name) {
  if (name == "first-price") return Pricing::kFirstPrice;
  if (name == "second-price") return Pricing::kSecondPrice;
  throw InputError("unknown pricing '" + name + "'");
}

// ---------------------------------------------------------------------------

ItemAuction::ItemAuction(ItemAuctionSpec spec) : spec_(std::move(spec)) {
  num_bidders_ = static_cast<int>(spec_.types.size());
  const int m = spec_.items;
  if (num_bidders_ < 1) throw InputError("auction needs a bidder");
  if (m < 1 || m > kMaxItems) throw InputError("item count must be in [1, 16]");
  if (spec_.grid.size() < 2) throw InputError("auction needs a bid grid");
  if (static_cast<int>(spec_.valuations.size()) != num_bidders_) {
    throw InputError("one valuation list per bidder required");
  }
  if (!spec_.no_overbidding) {
    spec_.no_overbidding = spec_.pricing == Pricing::kSecondPrice;
  }
  const int g = spec_.grid.size();
  double count = 1.0;
  for (int j = 0; j < m; ++j) count *= g;
  if (count > 1e7) throw InputError("bid space per bidder exceeds 1e7 actions");
  bid_actions_ = static_cast<int>(count);
  bid_indices_.resize(static_cast<std::size_t>(bid_actions_) * m);
  for (int a = 0; a < bid_actions_; ++a) {
    int rest = a;
    for (int j = m - 1; j >= 0; --j) {
      bid_indices_[static_cast<std::size_t>(a) * m + j] = rest % g;
      rest /= g;
    }
  }

  available_.resize(num_bidders_);
  for (PlayerId i = 0; i < num_bidders_; ++i) {
    const int types = spec_.types[i].size();
    if (static_cast<int>(spec_.valuations[i].size()) != types) {
      throw InputError("bidder " + std::to_string(i) +
                       " needs one valuation per type");
    }
    available_[i].resize(types);
    for (TypeId t = 0; t < types; ++t) {
      const Valuation& v = spec_.valuations[i][t];
      if (v.items() != m) {
        throw InputError("valuation of bidder " + std::to_string(i) +
                         " has the wrong item count");
      }
      std::vector<double> cap(m);
      for (int j = 0; j < m; ++j) {
        cap[j] = v.Value(ItemSet{1} << j);
        if (cap[j] > spec_.grid.max() + 1e-9) {
          throw InputError("value of item " + std::to_string(j) +
                           " for bidder " + std::to_string(i) +
                           " exceeds the grid maximum");
        }
      }
      auto& list = available_[i][t];
      for (ActionId a = 0; a < bid_actions_; ++a) {
        bool ok = true;
        if (*spec_.no_overbidding) {
          for (int j = 0; j < m && ok; ++j) {
            ok = Bid(a, j) <= cap[j] + kGridTolerance;
          }
        }
        if (ok) list.push_back(a);
      }
    }
  }
}

const TypeDistribution& ItemAuction::type_distribution(PlayerId i) const {
  return i == seller() ? seller_types_ : spec_.types[i];
}

int ItemAuction::num_actions(PlayerId i) const {
  return i == seller() ? 1 : bid_actions_;
}

std::span<const ActionId> ItemAuction::actions(PlayerId i, TypeId t) const {
  if (i == seller()) return seller_actions_;
  return available_[i][t];
}

ActionId ItemAuction::EncodeBid(std::span<const int> indices) const {
  ActionId a = 0;
  for (int j = 0; j < spec_.items; ++j) a = a * spec_.grid.size() + indices[j];
  return a;
}

std::vector<double> ItemAuction::BidValues(ActionId a) const {
  std::vector<double> out(spec_.items);
  for (int j = 0; j < spec_.items; ++j) out[j] = Bid(a, j);
  return out;
}

AuctionOutcome ItemAuction::AllocateAndPrice(
    std::span<const ActionId> profile) const {
  AuctionOutcome out;
  out.winner.assign(spec_.items, 0);
  out.price.assign(spec_.items, 0.0);
  for (int j = 0; j < spec_.items; ++j) {
    int best = 0;
    double high = Bid(profile[0], j);
    double second = 0.0;
    for (PlayerId i = 1; i < num_bidders_; ++i) {
      const double b = Bid(profile[i], j);
      if (b > high) {
        second = high;
        high = b;
        best = i;
      } else {
        second = std::max(second, b);
      }
    }
    out.winner[j] = best;
    out.price[j] = spec_.pricing == Pricing::kFirstPrice ? high : second;
  }
  return out;
}

double ItemAuction::utility(PlayerId i, TypeId ti,
                            std::span<const ActionId> profile) const {
  const AuctionOutcome o = AllocateAndPrice(profile);
  double paid = 0.0;
  if (i == seller()) {
    for (double p : o.price) paid += p;
    return paid;
  }
  ItemSet won = 0;
  for (int j = 0; j < spec_.items; ++j) {
    if (o.winner[j] == i) {
      won |= ItemSet{1} << j;
      paid += o.price[j];
    }
  }
  return spec_.valuations[i][ti].Value(won) - paid;
}

void ItemAuction::utilities(std::span<const TypeId> types,
                            std::span<const ActionId> profile,
                            std::span<double> out) const {
  const AuctionOutcome o = AllocateAndPrice(profile);
  std::vector<ItemSet> won(num_bidders_, 0);
  std::vector<double> paid(num_bidders_, 0.0);
  double revenue = 0.0;
  for (int j = 0; j < spec_.items; ++j) {
    won[o.winner[j]] |= ItemSet{1} << j;
    paid[o.winner[j]] += o.price[j];
    revenue += o.price[j];
  }
  for (PlayerId i = 0; i < num_bidders_; ++i) {
    out[i] = spec_.valuations[i][types[i]].Value(won[i]) - paid[i];
  }
  out[seller()] = revenue;
}

double ItemAuction::welfare(std::span<const TypeId> types,
                            std::span<const ActionId> profile) const {
  std::vector<double> u(num_players());
  utilities(types, profile, u);
  double total = 0.0;
  for (double x : u) total += x;
  return total;
}

Allocation ItemAuction::OptimalAllocation(std::span<const TypeId> types) const {
  const int m = spec_.items;
  MixedRadixCounter counter(std::vector<int>(m, num_bidders_));
  Allocation best;
  bool have = false;
  std::vector<ItemSet> sets(num_bidders_);
  do {
    std::fill(sets.begin(), sets.end(), 0);
    for (int j = 0; j < m; ++j) sets[counter.digits()[j]] |= ItemSet{1} << j;
    double w = 0.0;
    for (PlayerId i = 0; i < num_bidders_; ++i) {
      w += spec_.valuations[i][types[i]].Value(sets[i]);
    }
    if (!have || w > best.welfare) {
      best.owner = counter.digits();
      best.sets = sets;
      best.welfare = w;
      have = true;
    }
  } while (counter.Next());
  return best;
}

std::optional<double> ItemAuction::optimal_welfare_shortcut(
    std::span<const TypeId> types) const {
  if (*spec_.no_overbidding) return std::nullopt;
  return OptimalAllocation(types).welfare;
}

std::string ItemAuction::action_label(PlayerId i, ActionId a) const {
  if (i == seller()) return "sell";
  std::string out = "(";
  for (int j = 0; j < spec_.items; ++j) {
    if (j > 0) out += ",";
    out += FormatNumber(Bid(a, j));
  }
  return out + ")";
}

// ---------------------------------------------------------------------------

double AuctionSlack(const ItemAuction& auction) {
  return std::max(auction.num_bidders(), auction.items()) *
         auction.grid().step();
}

namespace {

std::vector<int> HalfBidIndices(const ItemAuction& auction, ItemSet bundle,
                                const Valuation& v) {
  std::vector<int> idx(auction.items(), 0);
  if (bundle == 0) return idx;
  const std::vector<double> a = v.SupportingVector(bundle);
  for (int j = 0; j < auction.items(); ++j) {
    if (Contains(bundle, j)) idx[j] = auction.grid().SnapDown(a[j] / 2.0);
  }
  return idx;
}

class BoundRandomized final : public BoundDeviation {
 public:
  BoundRandomized(const ItemAuction& auction, std::span<const TypeId> types)
      : auction_(auction), types_(types.begin(), types.end()) {
    const Allocation opt = auction.OptimalAllocation(types);
    bundles_ = opt.sets;
    for (PlayerId i = 0; i < auction.num_bidders(); ++i) {
      support_.push_back(
          bundles_[i] == 0
              ? std::vector<double>(auction.items(), 0.0)
              : auction.valuation(i, types_[i]).SupportingVector(bundles_[i]));
    }
  }

  double Utility(std::span<ActionId> profile, PlayerId i) const override {
    if (i == auction_.seller()) {
      return auction_.utility(i, 0, profile);
    }
    double total = 0.0;
    for (int j = 0; j < auction_.items(); ++j) {
      if (!Contains(bundles_[i], j)) continue;
      double threshold = 0.0;
      for (PlayerId k = 0; k < auction_.num_bidders(); ++k) {
        if (k != i) threshold = std::max(threshold, auction_.Bid(profile[k], j));
      }
      total += RandomizedBidUtility(support_[i][j], threshold);
    }
    return total;
  }

 private:
  const ItemAuction& auction_;
  std::vector<TypeId> types_;
  std::vector<ItemSet> bundles_;
  std::vector<std::vector<double>> support_;
};

class RandomizedDeviation final : public Deviation {
 public:
  explicit RandomizedDeviation(const ItemAuction& auction)
      : auction_(auction) {}
  std::string name() const override { return "randomized"; }
  std::unique_ptr<BoundDeviation> Bind(
      const BayesianGame& game, std::span<const TypeId> types) const override {
    if (&game != &auction_) {
      throw InputError("randomized deviation bound to a different game");
    }
    if (auction_.pricing() != Pricing::kFirstPrice) {
      throw InputError("randomized deviation needs first-price pricing");
    }
    return std::make_unique<BoundRandomized>(auction_, types);
  }

 private:
  const ItemAuction& auction_;
};

}  // namespace

std::vector<double> HalfBidDeviation(const ItemAuction& auction,
                                     std::span<const TypeId> types,
                                     PlayerId i) {
  const Allocation opt = auction.OptimalAllocation(types);
  const std::vector<int> idx =
      HalfBidIndices(auction, opt.sets[i], auction.valuation(i, types[i]));
  std::vector<double> out(auction.items());
  for (int j = 0; j < auction.items(); ++j) out[j] = auction.grid().point(idx[j]);
  return out;
}

double RandomizedBidUtility(double a, double threshold) {
  return std::max(0.0, a * (1.0 - std::exp(-1.0)) - threshold);
}

double RandomizedDeviationUtility(const ItemAuction& auction,
                                  std::span<const TypeId> types, PlayerId i,
                                  std::span<const ActionId> profile) {
  std::vector<TypeId> full(types.begin(), types.end());
  if (static_cast<int>(full.size()) == auction.num_bidders()) full.push_back(0);
  BoundRandomized bound(auction, full);
  std::vector<ActionId> scratch(profile.begin(), profile.end());
  if (static_cast<int>(scratch.size()) == auction.num_bidders()) {
    scratch.push_back(0);
  }
  return bound.Utility(scratch, i);
}

const char* AuctionDeviationName(AuctionDeviation kind) {
  return kind == AuctionDeviation::kHalfBid ? "half-bid" : "randomized";
}

std::unique_ptr<Deviation> MakeHalfBidDeviation(const ItemAuction& auction) {
  return std::make_unique<ProfileDeviation>(
      "half-bid",
      [&auction](const BayesianGame&, std::span<const TypeId> types) {
        const Allocation opt = auction.OptimalAllocation(types);
        std::vector<ActionId> out(auction.num_players(), 0);
        for (PlayerId i = 0; i < auction.num_bidders(); ++i) {
          out[i] = auction.EncodeBid(HalfBidIndices(
              auction, opt.sets[i], auction.valuation(i, types[i])));
        }
        return out;
      });
}

std::unique_ptr<Deviation> MakeRandomizedDeviation(const ItemAuction& auction) {
  return std::make_unique<RandomizedDeviation>(auction);
}

SmoothnessVerdict CheckFirstPriceSemiSmoothness(const ItemAuction& auction,
                                                double lambda,
                                                AuctionDeviation kind,
                                                CheckOptions options) {
  if (auction.pricing() != Pricing::kFirstPrice) {
    throw InputError("semi-smoothness certificates need first-price pricing");
  }
  options.slack = AuctionSlack(auction);
  const auto deviation = kind == AuctionDeviation::kHalfBid
                             ? MakeHalfBidDeviation(auction)
                             : MakeRandomizedDeviation(auction);
  return CheckSemi(auction, lambda, 0.0, *deviation, options);
}

}  // namespace bnlab
