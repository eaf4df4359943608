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

#ifndef BNLAB_EXPLICIT_GAME_HPP_
#define BNLAB_EXPLICIT_GAME_HPP_

#include <functional>
#include <string>
#include <vector>

#include "bnlab/game.hpp"

namespace bnlab {

// Game given by payoff tables: payoffs[i][t] is indexed by the joint global
// action index (player 0 most significant).
struct ExplicitGameSpec {
  Objective objective = Objective::kUtility;
  std::vector<TypeDistribution> types;
  std::vector<std::vector<std::string>> action_labels;
  // available[i][t]: sorted global action ids usable by type t.
  std::vector<std::vector<std::vector<ActionId>>> available;
  std::vector<std::vector<std::vector<double>>> payoffs;
};

class ExplicitGame final : public BayesianGame {
 public:
  explicit ExplicitGame(ExplicitGameSpec spec);

  // Builds the payoff tables by evaluating `payoff(i, t_i, profile)` on every
  // joint action profile. Every action is available to every type unless
  // `available` is given.
  using PayoffFn =
      std::function<double(PlayerId, TypeId, std::span<const ActionId>)>;
  static ExplicitGame FromFunction(
      Objective objective, std::vector<TypeDistribution> types,
      std::vector<int> num_actions, const PayoffFn& payoff,
      std::vector<std::vector<std::vector<ActionId>>> available = {});

  std::string family() const override { return "explicit"; }
  int num_players() const override {
    return static_cast<int>(spec_.types.size());
  }
  Objective objective() const override { return spec_.objective; }
  const TypeDistribution& type_distribution(PlayerId i) const override {
    return spec_.types[i];
  }
  int num_actions(PlayerId i) const override {
    return static_cast<int>(spec_.action_labels[i].size());
  }
  std::span<const ActionId> actions(PlayerId i, TypeId t) const override {
    return spec_.available[i][t];
  }
  double utility(PlayerId i, TypeId ti,
                 std::span<const ActionId> profile) const override;
  std::string action_label(PlayerId i, ActionId a) const override {
    return spec_.action_labels[i][a];
  }

  const ExplicitGameSpec& spec() const { return spec_; }
  std::int64_t JointIndex(std::span<const ActionId> profile) const;
  std::int64_t num_joint_profiles() const { return joint_count_; }

 private:
  ExplicitGameSpec spec_;
  std::vector<std::int64_t> strides_;
  std::int64_t joint_count_ = 1;
};

}  // namespace bnlab

#endif  // BNLAB_EXPLICIT_GAME_HPP_
