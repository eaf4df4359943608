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


#include <vector>

#include "bnlab/greedy_auction.hpp"
#include "doctest.h"
#include "generators.hpp"

namespace bnlab {
namespace {

using testing::Gen;

GreedyMechanism Mechanism(int players, int items, double max,
                          Priority priority = Priority::kValue) {
  return GreedyMechanism(players, items, priority, Feasibility::DisjointSets(),
                         BidGrid::Uniform(1.0, max), BidLanguage::kSingleMinded);
}

TEST_CASE("single player wins its highest bid set and pays it") {
  const GreedyMechanism m = GreedyMechanism(1, 2, Priority::kValue,
                                            Feasibility::DisjointSets(),
                                            BidGrid::Uniform(1.0, 3.0),
                                            BidLanguage::kBoth);
  BidFunction b = {0, 1, 2, 2.5};
  const BidFunction* bids[] = {&b};
  const GreedyOutcome o = m.Run(bids);
  CHECK(o.allocation[0] == 0b11);
  CHECK(o.payments[0] == 2.5);
}

TEST_CASE("zero bids resolve to the lowest player and first set") {
  const GreedyMechanism m = Mechanism(2, 2, 2.0);
  const BidFunction zero(4, 0.0);
  const BidFunction* bids[] = {&zero, &zero};
  const GreedyOutcome o = m.Run(bids);
  CHECK(o.allocation[0] == 0b01);
  CHECK(o.allocation[1] == 0b10);
  CHECK(o.payments == std::vector<double>{0, 0});
}

TEST_CASE("two-round hand trace") {
  const GreedyMechanism m = Mechanism(2, 2, 3.0);
  const BidFunction b0 = m.SingleMinded(0b11, 3);
  const BidFunction b1 = m.SingleMinded(0b01, 2);
  const BidFunction* bids[] = {&b0, &b1};
  const GreedyOutcome o = m.Run(bids);
  CHECK(o.allocation[0] == 0b11);
  CHECK(o.allocation[1] == 0);
}

TEST_CASE("grid critical values respect the tie rule") {
  const GreedyMechanism m = Mechanism(2, 1, 5.0);
  const BidFunction opponent = m.SingleMinded(0b1, 3);
  const BidFunction none(2, 0.0);
  {
    const BidFunction* bids[] = {&none, &opponent};
    const CriticalValue v = ComputeCriticalValue(m, 0, 0b1, bids);
    CHECK(v.value == 3.0);
    CHECK_FALSE(v.flagged);
    CHECK(ContinuousThreshold(m, 0, 0b1, bids) == 3.0);
  }
  {
    const BidFunction* bids[] = {&opponent, &none};
    CHECK(ComputeCriticalValue(m, 1, 0b1, bids).value == 4.0);
    CHECK(ContinuousThreshold(m, 1, 0b1, bids) == 3.0);
  }
  {
    const BidFunction top = m.SingleMinded(0b1, 5);
    const BidFunction* bids[] = {&top, &none};
    CHECK(ComputeCriticalValue(m, 1, 0b1, bids).value == kInfinity);
    CHECK(ContinuousThreshold(m, 1, 0b1, bids) == 5.0);
  }
  const BidFunction* solo[] = {&none};
  const GreedyMechanism one = Mechanism(1, 1, 2.0);
  CHECK(ComputeCriticalValue(one, 0, 0b1, solo).value == 0.0);
}

TEST_CASE("critical values match a linear grid scan") {
  Gen g(29);
  for (int trial = 0; trial < 40; ++trial) {
    const GreedyMechanism m =
        Mechanism(3, 2, 3.0, g.Coin() ? Priority::kValue : Priority::kValuePerItem);
    std::vector<const BidFunction*> bids;
    for (int i = 0; i < 3; ++i) {
      bids.push_back(&m.bids()[g.Int(0, static_cast<int>(m.bids().size()) - 1)]);
    }
    const int i = g.Int(0, 2);
    const ItemSet s = static_cast<ItemSet>(g.Int(1, 3));
    double scan = kInfinity;
    for (int k = 0; k < m.grid().size() && scan == kInfinity; ++k) {
      const BidFunction mine = m.SingleMinded(s, m.grid().point(k));
      std::vector<const BidFunction*> probe = bids;
      probe[i] = &mine;
      if (m.Run(probe).allocation[i] == s) scan = m.grid().point(k);
    }
    CHECK(ComputeCriticalValue(m, i, s, bids).value == scan);
    const double real = ContinuousThreshold(m, i, s, bids);
    CHECK(real <= scan);
  }
}

TEST_CASE("approximation factor") {
  CHECK(ApproximationFactor(Mechanism(1, 2, 2.0)) == 1.0);
  CHECK(ApproximationFactor(Mechanism(3, 1, 2.0)) == 1.0);
  const GreedyMechanism m = Mechanism(3, 2, 3.0);
  const BidFunction b0 = m.SingleMinded(0b11, 3);
  const BidFunction b1 = m.SingleMinded(0b01, 2);
  const BidFunction b2 = m.SingleMinded(0b10, 2);
  const BidFunction* bids[] = {&b0, &b1, &b2};
  CHECK(ApproximationRatio(m, bids) == doctest::Approx(4.0 / 3.0));
  CHECK(ApproximationFactor(m) >= 4.0 / 3.0);
}

TEST_CASE("payment fact") {
  const GreedyMechanism m = Mechanism(3, 2, 2.0);
  Gen g(31);
  const auto feasible = m.feasibility().Enumerate(3, 2);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<ActionId> profile;
    for (int i = 0; i < 3; ++i) {
      profile.push_back(g.Int(0, static_cast<int>(m.bids().size()) - 1));
    }
    const GreedyOutcome o = m.RunActions(profile);
    CHECK(CheckPaymentFact(m, profile, o.allocation, 1.0).pass);
  }
  const std::vector<ActionId> zero(3, 0);
  for (const auto& alt : feasible) {
    const PaymentFactVerdict v = CheckPaymentFact(m, zero, alt, 1.0);
    CHECK(v.payments == 0.0);
    CHECK(v.pass == (v.thresholds == 0.0));
  }
  const double c = ApproximationFactor(m);
  const PaymentFactSweep sweep = CheckPaymentFactAll(m, c, 4);
  CHECK(sweep.pass);
  CHECK(sweep.checked > 0);
  CHECK(sweep.worst_margin >= -1e-9);
}

TEST_CASE("payment fact with the measured factor fails for two bidders") {
  const GreedyMechanism m = Mechanism(2, 2, 2.0);
  CHECK(ApproximationFactor(m) == 1.0);
  const std::vector<ActionId> profile = {m.SingleMindedAction(0b01, 2),
                                         m.SingleMindedAction(0b11, 2)};
  const std::vector<ItemSet> alt = {0b10, 0b01};
  const PaymentFactVerdict v = CheckPaymentFact(m, profile, alt, 1.0);
  CHECK(v.thresholds == 4.0);
  CHECK(v.payments == 2.0);
  CHECK_FALSE(v.pass);
}

TEST_CASE("payment sweep is independent of the thread count") {
  const GreedyMechanism m = Mechanism(3, 2, 2.0, Priority::kValuePerItem);
  const PaymentFactSweep a = CheckPaymentFactAll(m, 1.5, 1);
  const PaymentFactSweep b = CheckPaymentFactAll(m, 1.5, 8);
  CHECK(a.worst_margin == b.worst_margin);
  CHECK(a.worst_profile == b.worst_profile);
  CHECK(a.worst_alternative == b.worst_alternative);
  CHECK(a.checked == b.checked);
}

TEST_CASE("greedy smoothness with the measured factor") {
  Gen g(37);
  for (int trial = 0; trial < 6; ++trial) {
    const Priority p = trial % 2 ? Priority::kValue : Priority::kValuePerItem;
    const GreedyAuction a = testing::RandomGreedyAuction(g, 3, 2, p, 1.0, 2.0);
    const double c = ApproximationFactor(a.mechanism());
    CHECK(CheckGreedySmoothness(a, c).pass);
  }
  GreedyAuctionSpec single;
  single.items = 1;
  single.language = BidLanguage::kSingleMinded;
  single.grid = BidGrid::Uniform(1.0, 2.0);
  single.types = {TypeDistribution::Singleton()};
  single.valuations = {{XosValuation::Additive({2})}};
  const SmoothnessVerdict v = CheckGreedySmoothness(GreedyAuction(single), 1.0);
  CHECK(v.pass);
  CHECK(v.worst_margin >= 0.0);
}

TEST_CASE("greedy smoothness fails when the factor is understated") {
  GreedyAuctionSpec spec;
  spec.items = 2;
  spec.language = BidLanguage::kSingleMinded;
  spec.grid = BidGrid::Uniform(0.25, 3.0);
  spec.types = std::vector<TypeDistribution>(3, TypeDistribution::Singleton());
  spec.valuations = {{TableValuation(2, {0, 0, 0, 3})},
                     {TableValuation(2, {0, 2, 0, 2})},
                     {TableValuation(2, {0, 0, 2, 2})}};
  const GreedyAuction a(spec);
  const double c = ApproximationFactor(a.mechanism());
  CHECK(c > 1.0);
  CHECK(CheckGreedySmoothness(a, c).pass);
  const SmoothnessVerdict v = CheckGreedySmoothness(a, 1.0);
  CHECK_FALSE(v.pass);
  REQUIRE(v.witness.has_value());
  CHECK(v.witness->lhs < 0.5 * v.witness->target - v.slack);
}

TEST_CASE("additive-only language has no single-minded deviation") {
  GreedyAuctionSpec spec;
  spec.items = 1;
  spec.language = BidLanguage::kAdditive;
  spec.grid = BidGrid::Uniform(1.0, 2.0);
  spec.types = {TypeDistribution::Singleton()};
  spec.valuations = {{XosValuation::Additive({2})}};
  CHECK_THROWS_AS(CheckGreedySmoothness(GreedyAuction(spec), 1.0), InputError);
}

}  // namespace
}  // namespace bnlab
