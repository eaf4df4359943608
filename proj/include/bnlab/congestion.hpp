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

#ifndef BNLAB_CONGESTION_HPP_
#define BNLAB_CONGESTION_HPP_

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bnlab/game.hpp"
#include "bnlab/smoothness.hpp"

namespace bnlab {

// Delay function sum_k c_k x^k with nonnegative coefficients.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<double> coefficients);
  static Polynomial Monomial(int degree, double coefficient = 1.0);

  const std::vector<double>& coefficients() const { return coefficients_; }
  // Highest degree with a nonzero coefficient; -1 for the zero polynomial.
  int degree() const;
  // Degrees with nonzero coefficients.
  std::vector<int> support() const;
  // At most one nonzero coefficient.
  bool homogeneous() const { return support().size() <= 1; }
  double operator()(double x) const;
  std::string ToString() const;

 private:
  std::vector<double> coefficients_;
};

struct CongestionSpec {
  std::vector<Polynomial> edges;
  std::vector<std::vector<std::vector<int>>> paths;  // [player][path] edges
  std::vector<TypeDistribution> types;               // per player
  std::vector<std::vector<double>> weights;          // [player][type]
};

// Weighted congestion game with random demands. A player of weight type t
// routes its whole weight on one allowed path; action id = t * |P_i| + path.
class CongestionGame final : public BayesianGame {
 public:
  explicit CongestionGame(CongestionSpec spec);

  std::string family() const override { return "congestion"; }
  int num_players() const override { return static_cast<int>(spec_.types.size()); }
  Objective objective() const override { return Objective::kCost; }
  const TypeDistribution& type_distribution(PlayerId i) const override {
    return spec_.types[i];
  }
  int num_actions(PlayerId i) const override;
  std::span<const ActionId> actions(PlayerId i, TypeId t) const override {
    return available_[i][t];
  }
  double utility(PlayerId i, TypeId ti,
                 std::span<const ActionId> profile) const override;
  void utilities(std::span<const TypeId> types,
                 std::span<const ActionId> profile,
                 std::span<double> out) const override;
  std::string action_label(PlayerId i, ActionId a) const override;
  bool types_enter_only_through_actions() const override { return true; }

  const CongestionSpec& spec() const { return spec_; }
  int num_edges() const { return static_cast<int>(spec_.edges.size()); }
  ActionId EncodeAction(PlayerId i, TypeId weight_type, int path) const;
  // Weight routed by an action.
  double Rate(PlayerId i, ActionId a) const;
  const std::vector<int>& Path(PlayerId i, ActionId a) const;
  // x_e(a).
  std::vector<double> Loads(std::span<const ActionId> profile) const;
  // sum_e x_e l_e(x_e).
  double EdgeSocialCost(std::span<const ActionId> profile) const;

 private:
  CongestionSpec spec_;
  std::vector<std::vector<std::vector<ActionId>>> available_;  // [i][t]
};

// c_i(a) = w_i sum_{e in p_i} l_e(x_e). Throws InvalidActionError when the
// routed rate differs from the player's type weight.
double PlayerCost(const CongestionGame& game, std::span<const TypeId> types,
                  std::span<const ActionId> profile, PlayerId i);

struct PointwiseDomain {
  double max_load = 10.0;
  int grid_points = 201;
};

struct PointwiseVerdict {
  bool pass = false;
  // True when the verdict comes from the exact ratio reduction (covers all
  // loads), false when it comes from the 2-D domain grid.
  bool exact = false;
  // min of lambda x* l(x*) + mu x l(x) - x* l(x + x*); for the ratio
  // reduction the point is (x, x*) = (r, 1).
  double worst_margin = kInfinity;
  double worst_x = 0.0;
  double worst_xstar = 0.0;
};

// x* l(x + x*) <= lambda x* l(x*) + mu x l(x). Homogeneous delays are decided
// exactly by the ratio r = x / x*; others on the domain grid.
PointwiseVerdict CheckPointwiseCondition(const Polynomial& delay, double lambda,
                                         double mu,
                                         const PointwiseDomain& domain = {},
                                         double tolerance = kNumericTolerance);

// sup_{r >= 0} (1 + r)^k - mu r^(k+1): the smallest lambda for which the
// degree-k monomial satisfies the pointwise condition. kInfinity when
// unbounded.
double MonomialLambda(int degree, double mu);

struct DelayParameters {
  bool bounded = false;
  double lambda = 0.0;
  double mu = 0.0;
  double bound = kInfinity;  // lambda / (1 - mu)
};

// Minimizes lambda / (1 - mu) over mu in [0, 1) for the class of polynomials
// with nonnegative coefficients on the given degrees (each at most 4).
DelayParameters BestDelayParameters(std::span<const int> degrees);
DelayParameters BestDelayParameters(const Polynomial& delay);

// Cost-game universal smoothness of the instance.
SmoothnessVerdict CheckUniversalSmoothnessCongestion(
    const CongestionGame& game, double lambda, double mu,
    const CheckOptions& options = {});

// All simple paths from `source` to `target` as edge-index lists, in
// lexicographic order. Graphs are limited to 8 edges.
std::vector<std::vector<int>> SimplePaths(
    int num_nodes, std::span<const std::pair<int, int>> edges, int source,
    int target, bool directed = true);

}  // namespace bnlab

#endif  // BNLAB_CONGESTION_HPP_
