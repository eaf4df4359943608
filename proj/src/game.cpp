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

#include "bnlab/game.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace bnlab {
namespace {

constexpr double kProbabilityTolerance = 1e-12;
constexpr double kRenormalizeTolerance = 1e-9;

void CheckLabelsAndSigns(const std::vector<std::string>& labels,
                         const std::vector<double>& probabilities,
                         const std::string& where) {
  if (labels.size() != probabilities.size()) {
    throw InputError(where, "type labels and probabilities differ in length");
  }
  if (labels.empty()) throw InputError(where, "empty type support");
  std::set<std::string> seen;
  for (std::size_t k = 0; k < labels.size(); ++k) {
    if (!seen.insert(labels[k]).second) {
      throw InputError(where, "duplicate type label '" + labels[k] + "'");
    }
    if (!(probabilities[k] >= 0.0) || !std::isfinite(probabilities[k])) {
      throw InputError(where, "probability of type '" + labels[k] +
                                  "' is negative or not finite");
    }
  }
}

double Sum(const std::vector<double>& xs) {
  double s = 0.0;
  for (double x : xs) s += x;
  return s;
}

}  // namespace

TypeDistribution::TypeDistribution(std::vector<std::string> labels,
                                   std::vector<double> probabilities)
    : labels_(std::move(labels)), probabilities_(std::move(probabilities)) {
  CheckLabelsAndSigns(labels_, probabilities_, "");
  if (std::abs(Sum(probabilities_) - 1.0) > kProbabilityTolerance) {
    throw InputError("type probabilities do not sum to 1");
  }
}

TypeDistribution TypeDistribution::Singleton(std::string label) {
  return TypeDistribution({std::move(label)}, {1.0});
}

TypeDistribution TypeDistribution::Normalize(std::vector<std::string> labels,
                                             std::vector<double> probabilities,
                                             std::vector<std::string>* warnings,
                                             const std::string& where) {
  CheckLabelsAndSigns(labels, probabilities, where);
  const double total = Sum(probabilities);
  const double deviation = std::abs(total - 1.0);
  if (deviation > kRenormalizeTolerance) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "probabilities sum to %.12g, not 1",
                  total);
    throw InputError(where, buf);
  }
  if (deviation > kProbabilityTolerance) {
    for (double& p : probabilities) p /= total;
    if (warnings != nullptr) {
      warnings->push_back((where.empty() ? std::string("type distribution")
                                         : where) +
                          ": probabilities renormalized");
    }
  }
  TypeDistribution d;
  d.labels_ = std::move(labels);
  d.probabilities_ = std::move(probabilities);
  return d;
}

// ---------------------------------------------------------------------------

void BayesianGame::utilities(std::span<const TypeId> types,
                             std::span<const ActionId> profile,
                             std::span<double> out) const {
  for (PlayerId i = 0; i < num_players(); ++i) {
    out[i] = utility(i, types[i], profile);
  }
}

double BayesianGame::welfare(std::span<const TypeId> types,
                             std::span<const ActionId> profile) const {
  double total = 0.0;
  for (PlayerId i = 0; i < num_players(); ++i) {
    total += utility(i, types[i], profile);
  }
  return total;
}

std::string BayesianGame::action_label(PlayerId i, ActionId a) const {
  (void)i;
  return std::to_string(a);
}

bool BayesianGame::is_available(PlayerId i, TypeId t, ActionId a) const {
  auto acts = actions(i, t);
  return std::binary_search(acts.begin(), acts.end(), a);
}

bool BayesianGame::constant_strategy_space() const {
  for (PlayerId i = 0; i < num_players(); ++i) {
    auto first = actions(i, 0);
    for (TypeId t = 1; t < num_types(i); ++t) {
      auto other = actions(i, t);
      if (!std::equal(first.begin(), first.end(), other.begin(), other.end())) {
        return false;
      }
    }
  }
  return true;
}

int BayesianGame::num_strategic_players() const {
  int count = 0;
  for (PlayerId i = 0; i < num_players(); ++i) {
    for (TypeId t = 0; t < num_types(i); ++t) {
      if (actions(i, t).size() > 1) {
        ++count;
        break;
      }
    }
  }
  return count;
}

// ---------------------------------------------------------------------------

StrategyProfile StrategyProfile::FirstActions(const BayesianGame& game) {
  std::vector<std::vector<ActionId>> choices(game.num_players());
  for (PlayerId i = 0; i < game.num_players(); ++i) {
    for (TypeId t = 0; t < game.num_types(i); ++t) {
      choices[i].push_back(game.actions(i, t).front());
    }
  }
  return StrategyProfile(std::move(choices));
}

std::vector<ActionId> StrategyProfile::Play(
    std::span<const TypeId> types) const {
  std::vector<ActionId> out(choices_.size());
  PlayInto(types, out);
  return out;
}

void StrategyProfile::PlayInto(std::span<const TypeId> types,
                               std::span<ActionId> out) const {
  for (std::size_t i = 0; i < choices_.size(); ++i) {
    out[i] = choices_[i][types[i]];
  }
}

void StrategyProfile::Validate(const BayesianGame& game) const {
  if (num_players() != game.num_players()) {
    throw InvalidProfileError("strategy profile has " +
                              std::to_string(num_players()) +
                              " players, game has " +
                              std::to_string(game.num_players()));
  }
  for (PlayerId i = 0; i < game.num_players(); ++i) {
    if (static_cast<int>(choices_[i].size()) != game.num_types(i)) {
      throw InvalidProfileError("player " + std::to_string(i) +
                                ": strategy does not cover every type");
    }
    for (TypeId t = 0; t < game.num_types(i); ++t) {
      if (!game.is_available(i, t, choices_[i][t])) {
        throw InvalidProfileError(
            "player " + std::to_string(i) + " type " +
            game.type_distribution(i).label(t) + ": action " +
            std::to_string(choices_[i][t]) + " is not available");
      }
    }
  }
}

// ---------------------------------------------------------------------------

MixedRadixCounter::MixedRadixCounter(std::vector<int> radices)
    : radices_(std::move(radices)), digits_(radices_.size(), 0), count_(1) {
  for (int r : radices_) {
    if (r <= 0) {
      count_ = 0;
      return;
    }
    if (count_ > INT64_MAX / r) {
      count_ = INT64_MAX;
    } else {
      count_ *= r;
    }
  }
}

void MixedRadixCounter::Seek(std::int64_t index) {
  for (std::size_t k = radices_.size(); k-- > 0;) {
    digits_[k] = static_cast<int>(index % radices_[k]);
    index /= radices_[k];
  }
}

bool MixedRadixCounter::Next() {
  for (std::size_t k = radices_.size(); k-- > 0;) {
    if (++digits_[k] < radices_[k]) return true;
    digits_[k] = 0;
  }
  return false;
}

double ProductSize(std::span<const int> sizes) {
  double p = 1.0;
  for (int s : sizes) p *= s;
  return p;
}

std::vector<int> TypeRadices(const BayesianGame& game) {
  std::vector<int> r(game.num_players());
  for (PlayerId i = 0; i < game.num_players(); ++i) r[i] = game.num_types(i);
  return r;
}

std::int64_t NumTypeProfiles(const BayesianGame& game) {
  return MixedRadixCounter(TypeRadices(game)).count();
}

double TypeProfileProbability(const BayesianGame& game,
                              std::span<const TypeId> types) {
  double p = 1.0;
  for (PlayerId i = 0; i < game.num_players(); ++i) {
    p *= game.type_distribution(i).probability(types[i]);
  }
  return p;
}

std::vector<int> ActionRadices(const BayesianGame& game,
                               std::span<const TypeId> types) {
  std::vector<int> r(game.num_players());
  for (PlayerId i = 0; i < game.num_players(); ++i) {
    r[i] = static_cast<int>(game.actions(i, types[i]).size());
  }
  return r;
}

void DigitsToProfile(const BayesianGame& game, std::span<const TypeId> types,
                     std::span<const int> digits, std::span<ActionId> out) {
  for (PlayerId i = 0; i < game.num_players(); ++i) {
    out[i] = game.actions(i, types[i])[digits[i]];
  }
}

// ---------------------------------------------------------------------------

void ValidateTypeProfile(const BayesianGame& game,
                         std::span<const TypeId> types) {
  if (static_cast<int>(types.size()) != game.num_players()) {
    throw InvalidProfileError("type profile has wrong length");
  }
  for (PlayerId i = 0; i < game.num_players(); ++i) {
    if (types[i] < 0 || types[i] >= game.num_types(i)) {
      throw InvalidProfileError("player " + std::to_string(i) +
                                ": type index out of range");
    }
  }
}

void ValidateActionProfile(const BayesianGame& game,
                           std::span<const TypeId> types,
                           std::span<const ActionId> profile) {
  ValidateTypeProfile(game, types);
  if (static_cast<int>(profile.size()) != game.num_players()) {
    throw InvalidProfileError("action profile has wrong length");
  }
  for (PlayerId i = 0; i < game.num_players(); ++i) {
    if (!game.is_available(i, types[i], profile[i])) {
      throw InvalidProfileError(
          "player " + std::to_string(i) + ": action " +
          std::to_string(profile[i]) + " is not available to type " +
          game.type_distribution(i).label(types[i]));
    }
  }
}

double SocialWelfare(const BayesianGame& game, std::span<const TypeId> types,
                     std::span<const ActionId> profile) {
  ValidateActionProfile(game, types, profile);
  return game.welfare(types, profile);
}

OptimalProfile FindOptimalProfile(const BayesianGame& game,
                                  std::span<const TypeId> types) {
  ValidateTypeProfile(game, types);
  const bool maximize = game.objective() == Objective::kUtility;
  MixedRadixCounter counter(ActionRadices(game, types));
  std::vector<ActionId> profile(game.num_players());
  OptimalProfile best;
  bool have = false;
  do {
    DigitsToProfile(game, types, counter.digits(), profile);
    const double w = game.welfare(types, profile);
    if (!have || (maximize ? w > best.welfare : w < best.welfare)) {
      best.welfare = w;
      best.profile = profile;
      have = true;
    }
  } while (counter.Next());
  return best;
}

double OptimalWelfare(const BayesianGame& game, std::span<const TypeId> types) {
  if (auto shortcut = game.optimal_welfare_shortcut(types)) return *shortcut;
  return FindOptimalProfile(game, types).welfare;
}

double ExpectedWelfare(const BayesianGame& game, const StrategyProfile& s) {
  s.Validate(game);
  double total = 0.0;
  std::vector<ActionId> profile(game.num_players());
  ForEachTypeProfile(game, [&](std::span<const TypeId> t, double p) {
    s.PlayInto(t, profile);
    total += p * game.welfare(t, profile);
  });
  return total;
}

double ExpectedOptimalWelfare(const BayesianGame& game) {
  double total = 0.0;
  ForEachTypeProfile(game, [&](std::span<const TypeId> t, double p) {
    total += p * OptimalWelfare(game, t);
  });
  return total;
}

}  // namespace bnlab
