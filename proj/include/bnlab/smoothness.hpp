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

#ifndef BNLAB_SMOOTHNESS_HPP_
#define BNLAB_SMOOTHNESS_HPP_

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bnlab/game.hpp"

namespace bnlab {

// Which inequality is verified. With L the sum of deviation utilities, every
// tuple must satisfy
//   utility games: L >= lambda * target - mu * current - slack
//   cost games:    L <= lambda * target + mu * current + slack
// where
//   kPlain      (t, a, a'):      target = SW^t(a'),       current = SW^t(a)
//   kSemi       (t, a):          target = SW^t(Opt(t)),   current = SW^t(a)
//   kRelaxed    (t, a):          target = SW^t(Opt(t)),   current = sum_{i in K} u_i(a)
//   kUniversal  (t, w, a, b):    target = sum_i u^{w_i}(b), current = sum_i u^{t_i}(a)
enum class SmoothnessVariant { kPlain, kSemi, kRelaxed, kUniversal };

const char* VariantName(SmoothnessVariant variant);
// Throws InputError on unknown names.
SmoothnessVariant ParseVariant(const std::string& name);

// Requested variant does not apply to the game (plain on a variable strategy
// space game).
class WrongVariantError : public InputError {
 public:
  explicit WrongVariantError(const std::string& message)
      : InputError(message) {}
};

// A deviation bound to one type profile t.
class BoundDeviation {
 public:
  virtual ~BoundDeviation() = default;
  // Utility of player i when it alone switches to its deviation against
  // `profile`. The buffer may be modified during the call but is restored.
  // Randomized deviations return their expected utility.
  virtual double Utility(std::span<ActionId> profile, PlayerId i) const = 0;
};

// a'(t) for the semi and relaxed variants. Deviations depend on the type
// profile only, never on the opponents' actions.
class Deviation {
 public:
  virtual ~Deviation() = default;
  virtual std::string name() const = 0;
  virtual std::unique_ptr<BoundDeviation> Bind(
      const BayesianGame& game, std::span<const TypeId> types) const = 0;
};

// Deterministic deviation: player i plays rule(game, t)[i].
class ProfileDeviation final : public Deviation {
 public:
  using Rule = std::function<std::vector<ActionId>(
      const BayesianGame&, std::span<const TypeId>)>;

  ProfileDeviation(std::string name, Rule rule)
      : name_(std::move(name)), rule_(std::move(rule)) {}

  std::string name() const override { return name_; }
  // Throws InvalidProfileError when the rule leaves A(t).
  std::unique_ptr<BoundDeviation> Bind(
      const BayesianGame& game, std::span<const TypeId> types) const override;

 private:
  std::string name_;
  Rule rule_;
};

// a'(t) = Opt(t).
std::unique_ptr<Deviation> MakeOptimalProfileDeviation();

struct CheckOptions {
  // Additive allowance on every tuple (discretization budget).
  double slack = 0.0;
  double tolerance = kNumericTolerance;
  int threads = 1;
  // Full enumeration limit; beyond it the check samples when allowed and
  // throws GuardExceededError otherwise.
  std::int64_t max_tuples = 10'000'000;
  bool allow_sampling = false;
  std::int64_t samples = 10'000;
  std::uint64_t seed = 0;
};

struct SmoothnessTuple {
  std::vector<TypeId> types;                // t
  std::vector<TypeId> deviation_types;      // w (universal)
  std::vector<ActionId> profile;            // a
  std::vector<ActionId> deviation_profile;  // a' (plain) or b (universal)
  double lhs = 0.0;
  double target = 0.0;
  double current = 0.0;
};

struct SmoothnessVerdict {
  SmoothnessVariant variant = SmoothnessVariant::kPlain;
  Objective objective = Objective::kUtility;
  double lambda = 0.0;
  double mu = 0.0;
  double slack = 0.0;
  std::string deviation;
  std::vector<PlayerId> subset;
  bool pass = false;
  // Minimum over tuples of the inequality's margin (before slack).
  double worst_margin = kInfinity;
  // The lexicographically first tuple attaining worst_margin; on failure
  // this is the violation witness, on success the binding tuple.
  std::optional<SmoothnessTuple> witness;
  std::int64_t tuples = 0;
  bool sampled = false;
};

// Receives every tuple's margin during a sequential check (CSV export).
using TupleSink = std::function<void(const SmoothnessTuple&, double margin)>;

SmoothnessVerdict CheckPlain(const BayesianGame& game, double lambda, double mu,
                             const CheckOptions& options = {},
                             const TupleSink& sink = nullptr);
SmoothnessVerdict CheckSemi(const BayesianGame& game, double lambda, double mu,
                            const Deviation& deviation,
                            const CheckOptions& options = {},
                            const TupleSink& sink = nullptr);
SmoothnessVerdict CheckRelaxed(const BayesianGame& game, double lambda,
                               double mu, const Deviation& deviation,
                               std::span<const PlayerId> subset,
                               const CheckOptions& options = {},
                               const TupleSink& sink = nullptr);
SmoothnessVerdict CheckUniversal(const BayesianGame& game, double lambda,
                                 double mu, const CheckOptions& options = {},
                                 const TupleSink& sink = nullptr);

// Dispatches on `variant`; `deviation` is required for semi/relaxed.
SmoothnessVerdict Check(const BayesianGame& game, SmoothnessVariant variant,
                        double lambda, double mu, const Deviation* deviation,
                        std::span<const PlayerId> subset,
                        const CheckOptions& options = {},
                        const TupleSink& sink = nullptr);

// (1 + mu) / lambda for utility games, lambda / (1 - mu) for cost games;
// infinity when unbounded (cost with mu >= 1).
double PoaBound(double lambda, double mu, Objective objective);

struct SearchOptions {
  CheckOptions check;
  // Utility games search mu in [0, mu_max]; cost games in [0, 1).
  double mu_max = 4.0;
  int grid_points = 41;
  int refinement_points = 21;
  int refinements = 6;
};

struct ParameterSearch {
  bool found = false;
  double lambda = 0.0;
  double mu = 0.0;
  double bound = kInfinity;
  SmoothnessVerdict verdict;  // validation of the returned pair
};

// Minimizes PoaBound over admissible (lambda, mu): for each mu on an
// adaptively refined grid the best lambda is read off the tuple set, and the
// winning pair is re-validated with the corresponding check.
ParameterSearch BestParameters(const BayesianGame& game,
                               SmoothnessVariant variant,
                               const Deviation* deviation,
                               std::span<const PlayerId> subset,
                               const SearchOptions& options = {});

// Certificate domination: measured Bayes-Nash PoA of an epsilon-BNE against
// the certificate's bound, with the additive terms the extension argument
// loses to epsilon regret and to the certificate's slack. For relaxed
// certificates `ir_deficit` is the total expected utility below zero of the
// players outside the subset.
struct DominationResult {
  bool applicable = true;
  std::string reason;
  double measured_poa = 0.0;
  double bound = 0.0;
  double allowance = 0.0;
  bool pass = false;
};

DominationResult CheckDomination(const SmoothnessVerdict& certificate,
                                 int num_players, double epsilon,
                                 double equilibrium_welfare,
                                 double optimal_welfare,
                                 double ir_deficit = 0.0);

}  // namespace bnlab

#endif  // BNLAB_SMOOTHNESS_HPP_
