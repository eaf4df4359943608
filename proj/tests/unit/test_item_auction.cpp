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


#include <cmath>
#include <vector>

#include "bnlab/item_auction.hpp"
#include "bnlab/rng.hpp"
#include "bnlab/smoothness.hpp"
#include "doctest.h"
#include "generators.hpp"

namespace bnlab {
namespace {

using testing::Gen;

ItemAuction Make(std::vector<XosValuation> bidders, int items, double step,
                 double max, Pricing pricing = Pricing::kFirstPrice) {
  ItemAuctionSpec spec;
  spec.pricing = pricing;
  spec.items = items;
  spec.grid = BidGrid::Uniform(step, max);
  for (auto& v : bidders) {
    spec.types.push_back(TypeDistribution::Singleton());
    spec.valuations.push_back({v});
  }
  return ItemAuction(spec);
}

ActionId Bid(const ItemAuction& a, std::vector<double> bids) {
  std::vector<int> idx;
  for (double b : bids) idx.push_back(a.grid().IndexOf(b));
  return a.EncodeBid(idx);
}

TEST_CASE("ties go to the lowest bidder") {
  const ItemAuction a = Make({XosValuation::Additive({1, 1}),
                              XosValuation::Additive({1, 1})}, 2, 0.5, 1.0);
  const std::vector<ActionId> zero = {Bid(a, {0, 0}), Bid(a, {0, 0}), 0};
  const AuctionOutcome o = a.AllocateAndPrice(zero);
  CHECK(o.winner == std::vector<int>{0, 0});
  CHECK(o.price == std::vector<double>{0, 0});
}

TEST_CASE("first and second price payments") {
  for (Pricing pricing : {Pricing::kFirstPrice, Pricing::kSecondPrice}) {
    const ItemAuction a = Make({XosValuation::Additive({2}),
                                XosValuation::Additive({2})}, 1, 0.5, 2.0, pricing);
    const std::vector<ActionId> p = {Bid(a, {1.0}), Bid(a, {0.5}), 0};
    const AuctionOutcome o = a.AllocateAndPrice(p);
    CHECK(o.winner[0] == 0);
    CHECK(o.price[0] == (pricing == Pricing::kFirstPrice ? 1.0 : 0.5));
  }
}

TEST_CASE("unit-demand utilities match hand enumeration") {
  const ItemAuction a = Make({XosValuation::UnitDemand({1, 1}),
                              XosValuation::UnitDemand({1, 1})}, 2, 0.5, 1.0);
  // Bidder 0 wins both items at 0.5 each but values the pair at 1.
  const std::vector<ActionId> p = {Bid(a, {0.5, 0.5}), Bid(a, {0, 0}), 0};
  CHECK(a.utility(0, 0, p) == doctest::Approx(0.0));
  CHECK(a.utility(1, 0, p) == 0.0);
  CHECK(a.utility(2, 0, p) == doctest::Approx(1.0));
  // Split: each wins one item.
  const std::vector<ActionId> q = {Bid(a, {0.5, 0}), Bid(a, {0, 0.5}), 0};
  CHECK(a.utility(0, 0, q) == doctest::Approx(0.5));
  CHECK(a.utility(1, 0, q) == doctest::Approx(0.5));
}

TEST_CASE("half-bid deviation") {
  const ItemAuction a = Make({XosValuation::Additive({4, 6})}, 2, 1.0, 6.0);
  const std::vector<TypeId> t = {0, 0};
  CHECK(HalfBidDeviation(a, t, 0) == std::vector<double>{2, 3});
  const ItemAuction z = Make({XosValuation::Additive({4, 6}),
                              XosValuation::Additive({0, 0})}, 2, 1.0, 6.0);
  const std::vector<TypeId> tz = {0, 0, 0};
  CHECK(HalfBidDeviation(z, tz, 1) == std::vector<double>{0, 0});
  const ItemAuction s = Make({XosValuation::Additive({1.1})}, 1, 0.25, 2.0);
  CHECK(HalfBidDeviation(s, t, 0) == std::vector<double>{0.5});
}

TEST_CASE("randomized bid closed form") {
  const double e = std::exp(1.0);
  CHECK(RandomizedBidUtility(1.0, 0.0) == doctest::Approx(1.0 - 1.0 / e));
  CHECK(RandomizedBidUtility(1.0, 0.8) == 0.0);
  CHECK(RandomizedBidUtility(e, 1.0) == doctest::Approx(e - 2.0));
}

// Inverse-CDF sampling of the density 1/(a - x) on [0, a (1 - 1/e)].
double MonteCarlo(double a, double p, std::uint64_t seed, int samples,
                  double* stderr_out) {
  CounterRng rng(seed, 0);
  double sum = 0.0;
  double sq = 0.0;
  for (int k = 0; k < samples; ++k) {
    const double x = a * (1.0 - std::exp(-rng.Uniform()));
    const double u = x > p ? a - x : 0.0;
    sum += u;
    sq += u * u;
  }
  const double mean = sum / samples;
  *stderr_out = std::sqrt(std::max(0.0, sq / samples - mean * mean) / samples);
  return mean;
}

TEST_CASE("randomized bid closed form matches sampling") {
  double se = 0.0;
  const double e = std::exp(1.0);
  const double sampled = MonteCarlo(e, 1.0, 1, 200'000, &se);
  CHECK(std::abs(sampled - (e - 2.0)) <= 3 * se);
  Gen g(41);
  for (int k = 0; k < 10; ++k) {
    const double a = g.Uniform(0.1, 3.0);
    const double p = g.Uniform(0.0, a);
    const double mc = MonteCarlo(a, p, 100 + k, 100'000, &se);
    CHECK(std::abs(mc - RandomizedBidUtility(a, p)) <= 3 * se + 1e-12);
  }
}

TEST_CASE("optimal welfare shortcut agrees with exhaustive search") {
  Gen g(7);
  for (int trial = 0; trial < 15; ++trial) {
    const ItemAuction a =
        testing::RandomItemAuction(g, g.Int(1, 3), g.Int(1, 3), 2, 0.5, 1.0);
    ForEachTypeProfile(a, [&](std::span<const TypeId> t, double) {
      const auto shortcut = a.optimal_welfare_shortcut(t);
      REQUIRE(shortcut.has_value());
      double best = 0.0;
      const int n = a.num_bidders();
      const int m = a.items();
      MixedRadixCounter owners(std::vector<int>(m, n + 1));
      do {
        std::vector<ItemSet> sets(n, 0);
        for (int j = 0; j < m; ++j) {
          if (owners.digits()[j] < n) sets[owners.digits()[j]] |= ItemSet{1} << j;
        }
        double w = 0.0;
        for (int i = 0; i < n; ++i) w += a.valuation(i, t[i]).Value(sets[i]);
        best = std::max(best, w);
      } while (owners.Next());
      CHECK(*shortcut == doctest::Approx(best));
    });
  }
}

TEST_CASE("first-price semi-smoothness certificates") {
  const ItemAuction solo = Make({XosValuation::Additive({1})}, 1, 0.25, 1.0);
  CHECK(CheckFirstPriceSemiSmoothness(solo, 0.5, AuctionDeviation::kHalfBid).pass);

  const ItemAuction a = Make({XosValuation::UnitDemand({1, 1}),
                              XosValuation::UnitDemand({1, 1})}, 2, 0.25, 1.0);
  const SmoothnessVerdict half =
      CheckFirstPriceSemiSmoothness(a, 0.5, AuctionDeviation::kHalfBid);
  CHECK(half.pass);
  CHECK(half.worst_margin >= -half.slack - 1e-9);
  const SmoothnessVerdict randomized = CheckFirstPriceSemiSmoothness(
      a, 1.0 - std::exp(-1.0), AuctionDeviation::kRandomized);
  CHECK(randomized.pass);
  const SmoothnessVerdict greedy =
      CheckFirstPriceSemiSmoothness(a, 0.99, AuctionDeviation::kHalfBid);
  CHECK_FALSE(greedy.pass);
  REQUIRE(greedy.witness.has_value());
  CHECK(greedy.witness->lhs < 0.99 * greedy.witness->target - greedy.slack);
}

TEST_CASE("semi-smoothness holds on random xos auctions") {
  Gen g(13);
  for (int trial = 0; trial < 8; ++trial) {
    const ItemAuction a = testing::RandomItemAuction(g, 2, 2, 2, 0.5, 1.5);
    CHECK(CheckFirstPriceSemiSmoothness(a, 0.5, AuctionDeviation::kHalfBid).pass);
    CHECK(CheckFirstPriceSemiSmoothness(a, 1.0 - std::exp(-1.0),
                                        AuctionDeviation::kRandomized)
              .pass);
  }
}

TEST_CASE("second price rejects the first-price certificate") {
  const ItemAuction a = Make({XosValuation::Additive({1})}, 1, 0.5, 1.0,
                             Pricing::kSecondPrice);
  CHECK(a.no_overbidding());
  CHECK_THROWS_AS(CheckFirstPriceSemiSmoothness(a, 0.5, AuctionDeviation::kHalfBid),
                  InputError);
}

}  // namespace
}  // namespace bnlab
