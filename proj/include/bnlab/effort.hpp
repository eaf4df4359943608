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

#ifndef BNLAB_EFFORT_HPP_
#define BNLAB_EFFORT_HPP_

#include <gmpxx.h>

#include <span>
#include <string>
#include <vector>

#include "bnlab/game.hpp"
#include "bnlab/smoothness.hpp"

namespace bnlab {

// Concave nondecreasing piecewise-linear value with V(0) = 0. Breakpoints
// start at (0, 0); past the last one the last slope continues.
class ConcaveValue {
 public:
  ConcaveValue() = default;
  ConcaveValue(std::vector<double> xs, std::vector<double> ys);

  static ConcaveValue Linear(double slope);
  // min(x, cap).
  static ConcaveValue Capped(double cap);
  // sqrt and log1p sampled at `pieces` equal segments of [0, max].
  static ConcaveValue Sqrt(double max, int pieces);
  static ConcaveValue Log1p(double max, int pieces);

  const std::vector<double>& xs() const { return xs_; }
  const std::vector<double>& ys() const { return ys_; }
  double operator()(double x) const;
  mpq_class Exact(const mpq_class& x) const;

 private:
  std::vector<double> xs_;
  std::vector<double> ys_;
};

struct EffortType {
  std::vector<double> ability;  // per project, >= 0
  double budget = 1.0;          // > 0
};

struct EffortSpec {
  std::vector<ConcaveValue> projects;
  std::vector<TypeDistribution> types;         // per player
  std::vector<std::vector<EffortType>> kinds;  // [player][type]
  double delta = 0.5;
};

// Proportional-share effort game. A player of type t picks an effort vector
// on the delta grid within its budget; its declared ability is pinned to the
// true one, so each action belongs to exactly one type.
class EffortGame final : public BayesianGame {
 public:
  explicit EffortGame(EffortSpec spec);

  std::string family() const override { return "effort"; }
  int num_players() const override { return static_cast<int>(spec_.types.size()); }
  Objective objective() const override { return Objective::kUtility; }
  const TypeDistribution& type_distribution(PlayerId i) const override {
    return spec_.types[i];
  }
  int num_actions(PlayerId i) const override {
    return static_cast<int>(owner_[i].size());
  }
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

  const EffortSpec& spec() const { return spec_; }
  int num_projects() const { return static_cast<int>(spec_.projects.size()); }
  TypeId ActionType(PlayerId i, ActionId a) const { return owner_[i][a]; }
  const std::vector<double>& Effort(PlayerId i, ActionId a) const {
    return efforts_[i][a];
  }
  const std::vector<double>& Ability(PlayerId i, ActionId a) const {
    return spec_.kinds[i][owner_[i][a]].ability;
  }
  // Action of type t with the given effort vector; -1 if off the grid or
  // over budget.
  ActionId FindAction(PlayerId i, TypeId t, std::span<const double> effort) const;
  // S_j = sum_k a_kj x_kj.
  std::vector<double> WeightedInputs(std::span<const ActionId> profile) const;

 private:
  EffortSpec spec_;
  std::vector<std::vector<TypeId>> owner_;                      // [i][a]
  std::vector<std::vector<std::vector<double>>> efforts_;       // [i][a]
  std::vector<std::vector<std::vector<ActionId>>> available_;   // [i][t]
};

// Action of type t playing `effort`. Throws InvalidActionError when the
// effort is negative, breaks the budget or is off the delta grid.
ActionId RequireEffortAction(const EffortGame& game, PlayerId i, TypeId t,
                             std::span<const double> effort);

// u_i = sum_j a_ij x_ij V_j(S_j) / S_j for per-player effort vectors, a term
// being 0 when a_ij x_ij = 0. Throws as RequireEffortAction.
double EffortUtility(const EffortGame& game, PlayerId i,
                     std::span<const TypeId> types,
                     std::span<const std::vector<double>> efforts);

// sum_j V_j(S_j).
double EffortSocialWelfare(const EffortGame& game,
                           std::span<const ActionId> profile);

// Shares [player][project] in exact rational arithmetic.
std::vector<std::vector<mpq_class>> ExactShares(
    const EffortGame& game, std::span<const ActionId> profile);
// sum_i share_ij == V_j(S_j) exactly for every project with S_j > 0.
bool SharesConserved(const EffortGame& game, std::span<const ActionId> profile);

// Universal (1, 1)-smoothness; full enumeration up to options.max_tuples,
// otherwise options.samples seeded tuples.
SmoothnessVerdict CheckUniversal11Smoothness(const EffortGame& game,
                                             CheckOptions options = {});

}  // namespace bnlab

#endif  // BNLAB_EFFORT_HPP_
