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

#ifndef BNLAB_GAME_HPP_
#define BNLAB_GAME_HPP_

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bnlab/common.hpp"

namespace bnlab {

// Finite distribution over one player's types. Types are addressed by their
// position in the support; labels are for reporting only.
class TypeDistribution {
 public:
  TypeDistribution() = default;
  // Requires nonnegative probabilities summing to one within 1e-12 and
  // distinct labels.
  TypeDistribution(std::vector<std::string> labels,
                   std::vector<double> probabilities);

  static TypeDistribution Singleton(std::string label = "t0");

  // Loader entry point: sums within 1e-9 of one are renormalized and a
  // warning is appended to `warnings`; anything further off is rejected.
  static TypeDistribution Normalize(std::vector<std::string> labels,
                                    std::vector<double> probabilities,
                                    std::vector<std::string>* warnings,
                                    const std::string& where = "");

  int size() const { return static_cast<int>(probabilities_.size()); }
  double probability(TypeId t) const { return probabilities_[t]; }
  const std::string& label(TypeId t) const { return labels_[t]; }
  std::span<const double> probabilities() const { return probabilities_; }
  const std::vector<std::string>& labels() const { return labels_; }

 private:
  std::vector<std::string> labels_;
  std::vector<double> probabilities_;
};

// A finite Bayesian game with independent types. Every player owns a global
// action set {0, ..., num_actions(i) - 1}; a player of type t may use the
// sorted subset actions(i, t). Constant strategy space games are the case
// where that subset never depends on t.
//
// For cost games every "utility"/"welfare" below is a cost/social cost.
class BayesianGame {
 public:
  virtual ~BayesianGame() = default;

  virtual std::string family() const = 0;
  virtual int num_players() const = 0;
  virtual Objective objective() const = 0;
  virtual const TypeDistribution& type_distribution(PlayerId i) const = 0;
  virtual int num_actions(PlayerId i) const = 0;
  virtual std::span<const ActionId> actions(PlayerId i, TypeId t) const = 0;

  // u_i^{t_i}(profile). Unchecked: callers guarantee profile[i] is available
  // to type ti (other entries may belong to any type).
  virtual double utility(PlayerId i, TypeId ti,
                         std::span<const ActionId> profile) const = 0;

  // All players' utilities at once; families override when one outcome
  // computation serves every player.
  virtual void utilities(std::span<const TypeId> types,
                         std::span<const ActionId> profile,
                         std::span<double> out) const;

  // SW^t(a) (or social cost).
  virtual double welfare(std::span<const TypeId> types,
                         std::span<const ActionId> profile) const;

  // Optimal welfare for a type profile when the family can compute it
  // without enumerating A(t). Must agree with the exhaustive search.
  virtual std::optional<double> optimal_welfare_shortcut(
      std::span<const TypeId> types) const {
    (void)types;
    return std::nullopt;
  }

  virtual std::string action_label(PlayerId i, ActionId a) const;

  // True when u_i^{t_i}(a) depends on t_i only through which actions are
  // available (the type is pinned inside the action). Such games evaluate
  // utilities of any type on any action profile by ignoring the type.
  virtual bool types_enter_only_through_actions() const { return false; }

  int num_types(PlayerId i) const { return type_distribution(i).size(); }
  bool is_available(PlayerId i, TypeId t, ActionId a) const;
  bool constant_strategy_space() const;
  // Players with more than one action for some type.
  int num_strategic_players() const;
};

// Per player, per type, the chosen action.
class StrategyProfile {
 public:
  StrategyProfile() = default;
  explicit StrategyProfile(std::vector<std::vector<ActionId>> choices)
      : choices_(std::move(choices)) {}

  // Every type plays its first available action.
  static StrategyProfile FirstActions(const BayesianGame& game);

  ActionId action(PlayerId i, TypeId t) const { return choices_[i][t]; }
  void set(PlayerId i, TypeId t, ActionId a) { choices_[i][t] = a; }
  int num_players() const { return static_cast<int>(choices_.size()); }
  const std::vector<std::vector<ActionId>>& choices() const { return choices_; }

  // s(t).
  std::vector<ActionId> Play(std::span<const TypeId> types) const;
  void PlayInto(std::span<const TypeId> types, std::span<ActionId> out) const;

  // Throws InvalidProfileError unless every choice is available to its type.
  void Validate(const BayesianGame& game) const;

  auto operator<=>(const StrategyProfile&) const = default;

 private:
  std::vector<std::vector<ActionId>> choices_;
};

// Odometer over a mixed-radix digit vector; the last digit varies fastest,
// so iteration order is lexicographic.
class MixedRadixCounter {
 public:
  explicit MixedRadixCounter(std::vector<int> radices);

  // Product of radices, saturated at INT64_MAX; zero if any radix is zero.
  std::int64_t count() const { return count_; }
  const std::vector<int>& digits() const { return digits_; }
  void Seek(std::int64_t index);
  // Advances; returns false after the last combination (digits wrap to 0).
  bool Next();

 private:
  std::vector<int> radices_;
  std::vector<int> digits_;
  std::int64_t count_;
};

// Product of sizes as a double, for guard checks that may overflow int64.
double ProductSize(std::span<const int> sizes);

// ---------------------------------------------------------------------------
// Type-profile and action-profile helpers.

std::vector<int> TypeRadices(const BayesianGame& game);
std::int64_t NumTypeProfiles(const BayesianGame& game);
double TypeProfileProbability(const BayesianGame& game,
                              std::span<const TypeId> types);

// Calls visit(types, probability) for every type profile in lexicographic
// order.
template <class Visit>
void ForEachTypeProfile(const BayesianGame& game, Visit&& visit) {
  MixedRadixCounter counter(TypeRadices(game));
  if (counter.count() == 0) return;
  do {
    const auto& t = counter.digits();
    visit(std::span<const TypeId>(t), TypeProfileProbability(game, t));
  } while (counter.Next());
}

// Radices |A_i(t_i)| of the action-profile space A(t).
std::vector<int> ActionRadices(const BayesianGame& game,
                               std::span<const TypeId> types);
// Maps odometer digits to the action profile they index in A(t).
void DigitsToProfile(const BayesianGame& game, std::span<const TypeId> types,
                     std::span<const int> digits, std::span<ActionId> out);

// ---------------------------------------------------------------------------
// Welfare aggregates.

void ValidateTypeProfile(const BayesianGame& game,
                         std::span<const TypeId> types);
// Throws InvalidProfileError unless a is in A(t).
void ValidateActionProfile(const BayesianGame& game,
                           std::span<const TypeId> types,
                           std::span<const ActionId> profile);

// SW^t(a), validated. Social cost for cost games.
double SocialWelfare(const BayesianGame& game, std::span<const TypeId> types,
                     std::span<const ActionId> profile);

struct OptimalProfile {
  std::vector<ActionId> profile;
  double welfare = 0.0;
};

// Exhaustive argmax (argmin for cost) of SW^t over A(t); ties go to the
// lexicographically smallest profile.
OptimalProfile FindOptimalProfile(const BayesianGame& game,
                                  std::span<const TypeId> types);

// SW^t(Opt(t)), through the family shortcut when one exists.
double OptimalWelfare(const BayesianGame& game, std::span<const TypeId> types);

// E_t[SW^t(s(t))].
double ExpectedWelfare(const BayesianGame& game, const StrategyProfile& s);

// E_t[SW^t(Opt(t))].
double ExpectedOptimalWelfare(const BayesianGame& game);

}  // namespace bnlab

#endif  // BNLAB_GAME_HPP_
