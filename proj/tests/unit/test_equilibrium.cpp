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

#include "bnlab/equilibrium.hpp"
#include "bnlab/explicit_game.hpp"
#include "bnlab/item_auction.hpp"
#include "doctest.h"
#include "generators.hpp"

namespace bnlab {
namespace {

using testing::Gen;

ExplicitGame Solo() {
  // Type 0 prefers action 2; type 1 is indifferent between 0 and 1.
  return ExplicitGame::FromFunction(
      Objective::kUtility, {TypeDistribution({"x", "y"}, {0.5, 0.5})}, {3},
      [](PlayerId, TypeId t, std::span<const ActionId> a) {
        if (t == 0) return static_cast<double>(a[0]);
        return a[0] == 2 ? 0.0 : 1.0;
      });
}

ExplicitGame Pennies() {
  return ExplicitGame::FromFunction(
      Objective::kUtility, {TypeDistribution::Singleton(), TypeDistribution::Singleton()},
      {2, 2}, [](PlayerId i, TypeId, std::span<const ActionId> a) {
        const bool match = a[0] == a[1];
        return (i == 0) == match ? 1.0 : 0.0;
      });
}

// Interim regret of every (player, type) by an explicit double loop.
double RegretOracle(const BayesianGame& g, const StrategyProfile& s) {
  double worst = 0.0;
  for (PlayerId i = 0; i < g.num_players(); ++i) {
    for (TypeId ti = 0; ti < g.num_types(i); ++ti) {
      auto value = [&](ActionId x) {
        double total = 0.0;
        double mass = 0.0;
        ForEachTypeProfile(g, [&](std::span<const TypeId> t, double p) {
          if (t[i] != ti) return;
          std::vector<ActionId> a = s.Play(t);
          a[i] = x;
          total += p * g.utility(i, ti, a);
          mass += p;
        });
        return total / mass;
      };
      const double current = value(s.action(i, ti));
      for (ActionId x : g.actions(i, ti)) {
        const double gain = g.objective() == Objective::kUtility
                                ? value(x) - current
                                : current - value(x);
        worst = std::max(worst, gain);
      }
    }
  }
  return worst;
}

TEST_CASE("single player best responses") {
  const ExplicitGame g = Solo();
  const BneVerdict best = IsPureBne(g, StrategyProfile({{2, 0}}));
  CHECK(best.pass);
  CHECK(best.max_regret == 0.0);
  const BneVerdict off = IsPureBne(g, StrategyProfile({{0, 0}}));
  CHECK_FALSE(off.pass);
  CHECK(off.max_regret == 2.0);
  CHECK(off.player == 0);
  CHECK(off.type == 0);
  CHECK(off.best_action == 2);
  CHECK(IsPureBne(g, StrategyProfile({{1, 0}}), 1.0).pass);
}

TEST_CASE("regret matches the interim oracle on auctions") {
  Gen g(89);
  for (int trial = 0; trial < 10; ++trial) {
    const ItemAuction a = testing::RandomItemAuction(g, 2, 2, 2, 0.5, 1.0);
    StrategyProfile s = StrategyProfile::FirstActions(a);
    for (int i = 0; i < 2; ++i) {
      for (int t = 0; t < 2; ++t) s.set(i, t, g.Int(0, a.num_actions(i) - 1));
    }
    CHECK(IsPureBne(a, s).max_regret == doctest::Approx(RegretOracle(a, s)));
  }
}

TEST_CASE("enumeration") {
  const auto solo = EnumeratePureBne(Solo());
  REQUIRE(solo.size() == 2);
  CHECK(solo[0].strategy == StrategyProfile({{2, 0}}));
  CHECK(solo[1].strategy == StrategyProfile({{2, 1}}));
  CHECK(EnumeratePureBne(Pennies()).empty());

  const ExplicitGame dominant = ExplicitGame::FromFunction(
      Objective::kUtility, {TypeDistribution::Singleton(), TypeDistribution::Singleton()},
      {2, 2}, [](PlayerId i, TypeId, std::span<const ActionId> a) {
        return a[i] == 1 ? 3.0 - a[1 - i] : 1.0 - a[1 - i];
      });
  const auto eqs = EnumeratePureBne(dominant);
  REQUIRE(eqs.size() == 1);
  CHECK(eqs[0].strategy == StrategyProfile({{1}, {1}}));
}

TEST_CASE("enumerated profiles round-trip and ignore the thread count") {
  Gen g(97);
  for (int trial = 0; trial < 6; ++trial) {
    const ItemAuction a = testing::RandomItemAuction(g, 2, 1, 2, 0.5, 1.5);
    EnumerateOptions o;
    o.epsilon = 0.25;
    const auto one = EnumeratePureBne(a, o);
    o.threads = 8;
    const auto many = EnumeratePureBne(a, o);
    REQUIRE(one.size() == many.size());
    for (std::size_t k = 0; k < one.size(); ++k) {
      CHECK(one[k].strategy == many[k].strategy);
      CHECK(IsPureBne(a, one[k].strategy, 0.25).pass);
      if (k > 0) CHECK(one[k - 1].strategy < one[k].strategy);
    }
  }
}

TEST_CASE("guard refuses oversized strategy spaces") {
  const ItemAuction a = [] {
    Gen g(3);
    return testing::RandomItemAuction(g, 3, 3, 2, 0.25, 1.0);
  }();
  CHECK_THROWS_AS(EnumeratePureBne(a), GuardExceededError);
}

TEST_CASE("best response dynamics") {
  const DynamicsResult solo =
      BestResponseDynamics(Solo(), StrategyProfile({{0, 2}}));
  CHECK(solo.converged);
  CHECK(solo.rounds <= 2);
  CHECK(IsPureBne(Solo(), solo.strategy).pass);
  const DynamicsResult cycle =
      BestResponseDynamics(Pennies(), StrategyProfile({{0}, {0}}), 20);
  CHECK_FALSE(cycle.converged);
  CHECK(cycle.rounds == 20);
  Gen g(101);
  for (int trial = 0; trial < 20; ++trial) {
    const ExplicitGame game = testing::RandomExplicit(g, 2, 3, 2);
    const DynamicsResult r =
        BestResponseDynamics(game, StrategyProfile::FirstActions(game));
    if (r.converged) CHECK(IsPureBne(game, r.strategy).pass);
  }
}

TEST_CASE("price of anarchy") {
  const PoaResult solo = BayesNashPoa(Solo());
  CHECK(solo.found);
  CHECK(solo.poa == 1.0);

  ItemAuctionSpec spec;
  spec.items = 1;
  spec.grid = BidGrid::Uniform(0.5, 2.0);
  spec.types = {TypeDistribution::Singleton(), TypeDistribution::Singleton()};
  spec.valuations = {{XosValuation::Additive({2})}, {XosValuation::Additive({1})}};
  const ItemAuction a(spec);
  const PoaResult r = BayesNashPoa(a);
  REQUIRE(r.found);
  for (const auto& e : r.equilibria) CHECK(e.welfare == doctest::Approx(2.0));
  CHECK(r.poa == doctest::Approx(1.0));

  CHECK(PoaRatio(Objective::kUtility, 2.0, 0.0) == kInfinity);
  CHECK(PoaRatio(Objective::kUtility, 0.0, 0.0) == 1.0);
  CHECK(PoaRatio(Objective::kCost, 2.0, 3.0) == 1.5);
  CHECK(EpsilonLadder(0.5, 3) == std::vector<double>{0, 0.5, 1.0, 2.0});
  const std::vector<double> ladder = EpsilonLadder(0.5);
  const PoaResult none = BayesNashPoaOnLadder(Pennies(), ladder);
  CHECK(none.found);
  CHECK(none.epsilon == 1.0);
}

// Pure Nash PoA of a complete-information game by direct enumeration.
double DirectPoa(const ExplicitGame& g) {
  const std::vector<TypeId> t(g.num_players(), 0);
  double optimum = -kInfinity;
  double worst = kInfinity;
  MixedRadixCounter c(ActionRadices(g, t));
  do {
    const auto& a = c.digits();
    const double sw = SocialWelfare(g, t, a);
    optimum = std::max(optimum, sw);
    bool nash = true;
    for (int i = 0; i < g.num_players() && nash; ++i) {
      for (ActionId x = 0; x < g.num_actions(i); ++x) {
        std::vector<ActionId> b(a.begin(), a.end());
        b[i] = x;
        if (g.utility(i, 0, b) > g.utility(i, 0, a) + 1e-9) nash = false;
      }
    }
    if (nash) worst = std::min(worst, sw);
  } while (c.Next());
  if (worst == kInfinity) return -1.0;
  return PoaRatio(Objective::kUtility, optimum, worst);
}

TEST_CASE("complete information poa matches the direct routine") {
  Gen g(103);
  int compared = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const ExplicitGame game = testing::RandomExplicit(g, 2, 3, 1);
    const PoaResult r = BayesNashPoa(game);
    const double direct = DirectPoa(game);
    CHECK(r.found == (direct >= 0.0));
    if (r.found) {
      CHECK(r.poa == doctest::Approx(direct));
      ++compared;
    }
  }
  CHECK(compared > 0);
}

TEST_CASE("misalignment") {
  Gen g(107);
  for (int trial = 0; trial < 10; ++trial) {
    const ExplicitGame single = testing::RandomExplicit(g, 2, 2, 1);
    for (const auto& e : EnumeratePureBne(single)) {
      const MisalignmentVerdict v = CheckMisalignment(single, e.strategy);
      CHECK(v.applicable);
      CHECK(v.lhs == doctest::Approx(v.rhs));
    }
  }
  // Utilities that ignore the type.
  const ExplicitGame blind = ExplicitGame::FromFunction(
      Objective::kUtility, {TypeDistribution({"x", "y"}, {0.4, 0.6}),
                            TypeDistribution({"x", "y"}, {0.5, 0.5})},
      {2, 2}, [](PlayerId i, TypeId, std::span<const ActionId> a) {
        return 1.0 + a[i] + 2.0 * a[1 - i];
      });
  for (const auto& e : EnumeratePureBne(blind)) {
    const MisalignmentVerdict v = CheckMisalignment(blind, e.strategy);
    CHECK(v.pass);
    CHECK(v.lhs == doctest::Approx(v.rhs));
  }
  for (int trial = 0; trial < 6; ++trial) {
    const ItemAuction a = testing::RandomItemAuction(g, 2, 2, 2, 0.5, 1.0);
    EnumerateOptions o;
    o.epsilon = 0.5;
    for (const auto& e : EnumeratePureBne(a, o)) {
      CHECK(CheckMisalignment(a, e.strategy, 0.5).pass);
    }
  }
  CHECK_FALSE(CheckMisalignment(Pennies(), StrategyProfile({{0}, {0}})).applicable);
}

TEST_CASE("effort equilibria are within the factor two bound") {
  Gen g(109);
  for (int trial = 0; trial < 4; ++trial) {
    const EffortGame game = testing::RandomEffort(g, 2, 2, 2, 0.5);
    const std::vector<double> ladder = EpsilonLadder(0.25);
    const PoaResult r = BayesNashPoaOnLadder(game, ladder);
    REQUIRE(r.found);
    const int n = game.num_strategic_players();
    CHECK(r.optimal_welfare <= 2.0 * r.worst_welfare + n * r.epsilon + 1e-9);
    for (const auto& e : r.equilibria) {
      const MisalignmentVerdict v = CheckMisalignment(game, e.strategy, r.epsilon);
      CHECK(v.applicable);
      CHECK(v.pass);
    }
  }
}

}  // namespace
}  // namespace bnlab
