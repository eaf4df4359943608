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
#include <utility>
#include <vector>

#include "bnlab/congestion.hpp"
#include "bnlab/equilibrium.hpp"
#include "doctest.h"
#include "generators.hpp"

namespace bnlab {
namespace {

using testing::Gen;

CongestionGame Parallel(int players, std::vector<Polynomial> edges,
                        std::vector<double> weights = {1.0}) {
  CongestionSpec spec;
  spec.edges = std::move(edges);
  std::vector<std::vector<int>> paths;
  for (int e = 0; e < static_cast<int>(spec.edges.size()); ++e) paths.push_back({e});
  std::vector<std::string> labels;
  std::vector<double> probs;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    labels.push_back("w" + std::to_string(k));
    probs.push_back(1.0 / weights.size());
  }
  for (int i = 0; i < players; ++i) {
    spec.paths.push_back(paths);
    spec.types.emplace_back(labels, probs);
    spec.weights.push_back(weights);
  }
  return CongestionGame(spec);
}

TEST_CASE("player costs") {
  const CongestionGame solo = Parallel(1, {Polynomial({0, 1})}, {2.0});
  const std::vector<TypeId> t1 = {0};
  const std::vector<ActionId> a1 = {solo.EncodeAction(0, 0, 0)};
  CHECK(PlayerCost(solo, t1, a1, 0) == 4.0);

  const CongestionGame pair = Parallel(2, {Polynomial({0, 1})});
  const std::vector<TypeId> t2 = {0, 0};
  const std::vector<ActionId> a2 = {0, 0};
  CHECK(PlayerCost(pair, t2, a2, 0) == 2.0);
  CHECK(PlayerCost(pair, t2, a2, 1) == 2.0);
}

TEST_CASE("costs match per-edge load summation") {
  Gen g(43);
  const CongestionGame game =
      Parallel(3, {Polynomial({1, 1}), Polynomial({0, 0, 1})}, {1.0, 2.0});
  ForEachTypeProfile(game, [&](std::span<const TypeId> t, double) {
    for (int trial = 0; trial < 4; ++trial) {
      std::vector<ActionId> a;
      std::vector<int> path;
      for (int i = 0; i < 3; ++i) {
        path.push_back(g.Int(0, 1));
        a.push_back(game.EncodeAction(i, t[i], path.back()));
      }
      double load[2] = {0, 0};
      for (int i = 0; i < 3; ++i) load[path[i]] += t[i] + 1.0;
      const double delay[2] = {1 + load[0], load[1] * load[1]};
      double total = 0.0;
      for (int i = 0; i < 3; ++i) {
        const double cost = (t[i] + 1.0) * delay[path[i]];
        CHECK(PlayerCost(game, t, a, i) == doctest::Approx(cost));
        total += cost;
      }
      CHECK(SocialWelfare(game, t, a) == doctest::Approx(total));
      CHECK(game.EdgeSocialCost(a) == doctest::Approx(total));
    }
  });
}

TEST_CASE("player cost rejects a rate that differs from the weight") {
  const CongestionGame game = Parallel(1, {Polynomial({0, 1})}, {1.0, 2.0});
  const std::vector<TypeId> t = {0};
  const std::vector<ActionId> heavy = {game.EncodeAction(0, 1, 0)};
  CHECK_THROWS_AS(PlayerCost(game, t, heavy, 0), InvalidActionError);
}

TEST_CASE("pointwise condition") {
  const Polynomial linear({0, 1});
  const PointwiseVerdict bad = CheckPointwiseCondition(linear, 1.0, 1.0);
  CHECK_FALSE(bad.pass);
  // At x* = 2, x = 1: 2 * 3 > 4 + 1.
  CHECK(1.0 * 2 * linear(2) + 1.0 * 1 * linear(1) - 2 * linear(3) == -1.0);
  CHECK(CheckPointwiseCondition(Polynomial({3}), 1.0, 0.0).pass);
  const double lambda = (5 + std::sqrt(5.0)) / 4;
  const double mu = (std::sqrt(5.0) - 1) / 4;
  const PointwiseVerdict good = CheckPointwiseCondition(linear, lambda, mu);
  CHECK(good.pass);
  CHECK(good.exact);
  // Dense ratio grid oracle: 1 + r - mu r^2 <= lambda.
  double worst = 0.0;
  for (int k = 0; k <= 100000; ++k) {
    const double r = k * 1e-4;
    worst = std::max(worst, 1 + r - mu * r * r);
  }
  CHECK(worst <= lambda + 1e-12);
  const PointwiseVerdict mixed =
      CheckPointwiseCondition(Polynomial({1, 1, 1}), 4.0, 0.5);
  CHECK_FALSE(mixed.exact);
}

TEST_CASE("monomial lambda") {
  for (double mu : {0.1, 0.25, 0.5}) {
    CHECK(MonomialLambda(1, mu) == doctest::Approx(1 + 1 / (4 * mu)));
  }
  CHECK(MonomialLambda(0, 0.0) == 1.0);
  CHECK(MonomialLambda(2, 0.0) == kInfinity);
}

double GridOracle(int degree) {
  double best = kInfinity;
  for (int k = 1; k < 2000; ++k) {
    const double mu = k / 2000.0;
    double lambda = 0.0;
    for (int s = 0; s <= 20000; ++s) {
      const double r = s * 1e-3;
      lambda = std::max(lambda, std::pow(1 + r, degree) - mu * std::pow(r, degree + 1));
    }
    best = std::min(best, lambda / (1 - mu));
  }
  return best;
}

TEST_CASE("best delay parameters") {
  const std::vector<int> constant = {0};
  const DelayParameters c = BestDelayParameters(constant);
  CHECK(c.bounded);
  CHECK(c.lambda == doctest::Approx(1.0));
  CHECK(c.mu == doctest::Approx(0.0));
  CHECK(c.bound == doctest::Approx(1.0));
  const std::vector<int> linear = {1};
  const DelayParameters l = BestDelayParameters(linear);
  CHECK(std::abs(l.bound - (3 + std::sqrt(5.0)) / 2) < 1e-3);
  const std::vector<int> quadratic = {2};
  const DelayParameters q = BestDelayParameters(quadratic);
  CHECK(std::abs(q.bound - GridOracle(2)) < 1e-3);
  CHECK(BestDelayParameters(Polynomial({2, 3})).bound == doctest::Approx(l.bound));
}

TEST_CASE("universal smoothness of congestion instances") {
  const CongestionGame solo = Parallel(1, {Polynomial({0, 1}), Polynomial({1})});
  CHECK(CheckUniversalSmoothnessCongestion(solo, 1.0, 0.0).pass);

  const CongestionGame links =
      Parallel(2, {Polynomial({0, 1}), Polynomial({0, 1})}, {1.0, 2.0});
  const std::vector<int> linear = {1};
  const DelayParameters p = BestDelayParameters(linear);
  CHECK(CheckUniversalSmoothnessCongestion(links, p.lambda, p.mu).pass);
  const SmoothnessVerdict fail = CheckUniversalSmoothnessCongestion(links, 1.0, 0.0);
  CHECK_FALSE(fail.pass);
  CHECK(fail.witness.has_value());

  Gen g(47);
  for (int trial = 0; trial < 6; ++trial) {
    const CongestionGame game = testing::RandomCongestion(g, 3, 4, 1, 2);
    CHECK(CheckUniversalSmoothnessCongestion(game, p.lambda, p.mu).pass);
  }
}

TEST_CASE("best responses converge on congestion games") {
  Gen g(53);
  for (int trial = 0; trial < 6; ++trial) {
    const CongestionGame game = testing::RandomCongestion(g, 3, 4, 2, 2);
    const DynamicsResult r =
        BestResponseDynamics(game, StrategyProfile::FirstActions(game));
    CHECK(r.converged);
    CHECK(IsPureBne(game, r.strategy).pass);
  }
}

TEST_CASE("simple paths") {
  // Diamond 0 -> {1, 2} -> 3 plus the chord 1 -> 2.
  const std::vector<std::pair<int, int>> edges = {{0, 1}, {0, 2}, {1, 3},
                                                  {2, 3}, {1, 2}};
  const auto paths = SimplePaths(4, edges, 0, 3);
  CHECK(paths == std::vector<std::vector<int>>{{0, 2}, {0, 3, 4}, {1, 3}});
  CHECK(SimplePaths(4, edges, 3, 0).empty());
  CHECK(SimplePaths(4, edges, 3, 0, false).size() == 4);
}

}  // namespace
}  // namespace bnlab
