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

#include "bnlab/explicit_game.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace bnlab {

ExplicitGame::ExplicitGame(ExplicitGameSpec spec) : spec_(std::move(spec)) {
  const int n = static_cast<int>(spec_.types.size());
  if (n == 0) throw InputError("game has no players");
  if (static_cast<int>(spec_.action_labels.size()) != n ||
      static_cast<int>(spec_.available.size()) != n ||
      static_cast<int>(spec_.payoffs.size()) != n) {
    throw InputError("per-player tables disagree on the number of players");
  }
  strides_.assign(n, 1);
  for (int i = n - 1; i >= 0; --i) {
    const auto k = static_cast<std::int64_t>(spec_.action_labels[i].size());
    if (k == 0) {
      throw InputError("/players/" + std::to_string(i), "no actions");
    }
    strides_[i] = joint_count_;
    if (joint_count_ > (std::int64_t{1} << 40) / k) {
      throw InputError("joint action space too large for payoff tables");
    }
    joint_count_ *= k;
  }
  for (int i = 0; i < n; ++i) {
    const std::string where = "/players/" + std::to_string(i);
    const int types = spec_.types[i].size();
    if (static_cast<int>(spec_.available[i].size()) != types ||
        static_cast<int>(spec_.payoffs[i].size()) != types) {
      throw InputError(where, "tables do not cover every type");
    }
    for (int t = 0; t < types; ++t) {
      auto& av = spec_.available[i][t];
      std::sort(av.begin(), av.end());
      av.erase(std::unique(av.begin(), av.end()), av.end());
      if (av.empty()) throw InputError(where, "type with no available action");
      if (av.front() < 0 || av.back() >= num_actions(i)) {
        throw InputError(where, "available action out of range");
      }
      if (static_cast<std::int64_t>(spec_.payoffs[i][t].size()) !=
          joint_count_) {
        throw InputError(where, "payoff table has " +
                                    std::to_string(spec_.payoffs[i][t].size()) +
                                    " entries, expected " +
                                    std::to_string(joint_count_));
      }
      for (double u : spec_.payoffs[i][t]) {
        if (!std::isfinite(u)) throw InputError(where, "non-finite payoff");
      }
    }
  }
}

ExplicitGame ExplicitGame::FromFunction(
    Objective objective, std::vector<TypeDistribution> types,
    std::vector<int> num_actions, const PayoffFn& payoff,
    std::vector<std::vector<std::vector<ActionId>>> available) {
  const int n = static_cast<int>(types.size());
  ExplicitGameSpec spec;
  spec.objective = objective;
  spec.action_labels.resize(n);
  for (int i = 0; i < n; ++i) {
    for (int a = 0; a < num_actions[i]; ++a) {
      spec.action_labels[i].push_back("a" + std::to_string(a));
    }
  }
  if (available.empty()) {
    available.resize(n);
    for (int i = 0; i < n; ++i) {
      std::vector<ActionId> all(num_actions[i]);
      std::iota(all.begin(), all.end(), 0);
      available[i].assign(types[i].size(), all);
    }
  }
  spec.available = std::move(available);
  MixedRadixCounter counter(num_actions);
  spec.payoffs.resize(n);
  for (int i = 0; i < n; ++i) {
    spec.payoffs[i].assign(types[i].size(),
                           std::vector<double>(counter.count()));
  }
  std::vector<ActionId> profile(n);
  std::int64_t index = 0;
  do {
    std::copy(counter.digits().begin(), counter.digits().end(),
              profile.begin());
    for (int i = 0; i < n; ++i) {
      for (int t = 0; t < types[i].size(); ++t) {
        spec.payoffs[i][t][index] = payoff(i, t, profile);
      }
    }
    ++index;
  } while (counter.Next());
  spec.types = std::move(types);
  return ExplicitGame(std::move(spec));
}

std::int64_t ExplicitGame::JointIndex(std::span<const ActionId> profile) const {
  std::int64_t index = 0;
  for (std::size_t i = 0; i < strides_.size(); ++i) {
    index += strides_[i] * profile[i];
  }
  return index;
}

double ExplicitGame::utility(PlayerId i, TypeId ti,
                             std::span<const ActionId> profile) const {
  return spec_.payoffs[i][ti][JointIndex(profile)];
}

}  // namespace bnlab
