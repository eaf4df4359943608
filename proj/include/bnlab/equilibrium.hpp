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

#ifndef BNLAB_EQUILIBRIUM_HPP_
#define BNLAB_EQUILIBRIUM_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "bnlab/game.hpp"

namespace bnlab {

// E_{t_-i}[u_i^{ti}(a, s_-i(t_-i))].
double InterimUtility(const BayesianGame& game, const StrategyProfile& s,
                      PlayerId i, TypeId ti, ActionId a);

struct BneVerdict {
  bool pass = false;
  // Largest interim gain from a unilateral deviation (cost games: saving).
  double max_regret = 0.0;
  PlayerId player = -1;  // where max_regret is attained
  TypeId type = -1;
  ActionId best_action = -1;
};

// Pure epsilon-BNE test: every type of every player is within epsilon (plus
// the numeric tolerance) of its interim best response. Throws
// InvalidProfileError if s plays an unavailable action.
BneVerdict IsPureBne(const BayesianGame& game, const StrategyProfile& s,
                     double epsilon = 0.0);

struct Equilibrium {
  StrategyProfile strategy;
  double regret = 0.0;
};

struct EnumerateOptions {
  double epsilon = 0.0;
  int threads = 1;
  // Refuse when prod_i prod_t |A_i(t)| exceeds this.
  std::int64_t max_profiles = 10'000'000;
};

// Every pure epsilon-BNE in lexicographic order over (player, type, action).
// Throws GuardExceededError beyond options.max_profiles.
std::vector<Equilibrium> EnumeratePureBne(const BayesianGame& game,
                                          const EnumerateOptions& options = {});

// prod_i prod_t |A_i(t)| as a double.
double StrategySpaceSize(const BayesianGame& game);

struct DynamicsResult {
  StrategyProfile strategy;
  bool converged = false;
  int rounds = 0;
};

// Round-robin interim best response over (player, type), ties to the lowest
// action id, until a round changes nothing or max_rounds rounds ran.
DynamicsResult BestResponseDynamics(const BayesianGame& game,
                                    const StrategyProfile& start,
                                    int max_rounds = 100);

struct EquilibriumWelfare {
  StrategyProfile strategy;
  double regret = 0.0;
  double welfare = 0.0;  // E_t[SW^t(s(t))]
};

struct PoaResult {
  // False when no epsilon-BNE exists.
  bool found = false;
  double epsilon = 0.0;
  double optimal_welfare = 0.0;
  // Worst equilibrium welfare (lowest welfare, highest cost).
  double worst_welfare = 0.0;
  // optimum / worst (utility) or worst / optimum (cost); kInfinity when the
  // ratio is unbounded.
  double poa = 0.0;
  int worst_index = -1;
  std::vector<EquilibriumWelfare> equilibria;
};

PoaResult BayesNashPoa(const BayesianGame& game,
                       const EnumerateOptions& options = {});

// Worst-case ratio from welfare figures, with the zero conventions above.
double PoaRatio(Objective objective, double optimal, double worst);

// {0, slack, 2 slack, 4 slack, ...} with `steps` positive entries.
std::vector<double> EpsilonLadder(double slack, int steps = 4);

// BayesNashPoa at the first epsilon of the ladder that admits an
// equilibrium; found = false if none does.
PoaResult BayesNashPoaOnLadder(const BayesianGame& game,
                               std::span<const double> ladder,
                               EnumerateOptions options = {});

struct MisalignmentVerdict {
  bool applicable = true;
  std::string reason;
  double lhs = 0.0;    // E_t E_w[SW^w(s(t))]
  double rhs = 0.0;    // E_t[SW^t(s(t))]
  double slack = 0.0;  // n epsilon
  bool pass = false;
};

// Cross-type welfare inequality at an epsilon-BNE. Not applicable when s is
// not an epsilon-BNE, or when strategy spaces depend on types in a way that
// makes SW^w(s(t)) undefined.
MisalignmentVerdict CheckMisalignment(const BayesianGame& game,
                                      const StrategyProfile& s,
                                      double epsilon = 0.0);

// Every type of every player outside `exempt` has interim utility >= -1e-9
// under s.
bool InterimIndividuallyRational(const BayesianGame& game,
                                 const StrategyProfile& s,
                                 std::span<const PlayerId> exempt = {});

// Sum over players outside `subset` of max(0, -expected utility) under s.
double ExpectedIrDeficit(const BayesianGame& game, const StrategyProfile& s,
                         std::span<const PlayerId> subset);

}  // namespace bnlab

#endif  // BNLAB_EQUILIBRIUM_HPP_
