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

#include "bnlab/equilibrium.hpp"

#include <algorithm>
#include <cmath>

#include "bnlab/parallel.hpp"

namespace bnlab {
namespace {

// +1 when larger is better, -1 for costs.
double Sign(const BayesianGame& game) {
  return game.objective() == Objective::kUtility ? 1.0 : -1.0;
}

// Interim utilities over local action indices (positions in A_i(t_i)), backed
// by a table of every u_i^{t_i}(a) with a in A(t) when it fits in memory.
class Evaluator {
 public:
  static constexpr std::int64_t kMaxTableEntries = 20'000'000;

  Evaluator(const BayesianGame& game, int threads)
      : game_(game), n_(game.num_players()) {
    MixedRadixCounter types(TypeRadices(game));
    if (types.count() == 0) return;
    std::int64_t total = 0;
    do {
      Block b;
      b.types = types.digits();
      b.probability = TypeProfileProbability(game, b.types);
      b.radices = ActionRadices(game, b.types);
      b.strides.assign(n_, 0);
      std::int64_t stride = 1;
      for (int k = n_ - 1; k >= 0; --k) {
        b.strides[k] = stride;
        stride *= b.radices[k];
      }
      b.size = stride;
      b.offset = total;
      total += stride * n_;
      blocks_.push_back(std::move(b));
    } while (types.Next());
    for (PlayerId i = 0; i < n_; ++i) {
      by_type_.emplace_back(game.num_types(i));
    }
    for (int bi = 0; bi < static_cast<int>(blocks_.size()); ++bi) {
      const Block& b = blocks_[bi];
      for (PlayerId i = 0; i < n_; ++i) {
        double others = 1.0;
        for (PlayerId k = 0; k < n_; ++k) {
          if (k != i) others *= game.type_distribution(k).probability(b.types[k]);
        }
        by_type_[i][b.types[i]].push_back({bi, others});
      }
    }
    if (total <= kMaxTableEntries) {
      table_.assign(total, 0.0);
      for (const Block& b : blocks_) Fill(b, threads);
    }
  }

  int num_players() const { return n_; }

  // Interim utility of (i, ti) playing local x against local strategy s.
  double Interim(const std::vector<std::vector<int>>& s, PlayerId i, TypeId ti,
                 int x) const {
    double total = 0.0;
    std::vector<int> digits(n_);
    for (const auto& [bi, p] : by_type_[i][ti]) {
      const Block& b = blocks_[bi];
      for (PlayerId k = 0; k < n_; ++k) digits[k] = s[k][b.types[k]];
      digits[i] = x;
      total += p * Value(b, digits, i);
    }
    return total;
  }

  // E_t[SW^t(s(t))].
  double Welfare(const std::vector<std::vector<int>>& s) const {
    double total = 0.0;
    std::vector<int> digits(n_);
    for (const Block& b : blocks_) {
      for (PlayerId k = 0; k < n_; ++k) digits[k] = s[k][b.types[k]];
      double w = 0.0;
      for (PlayerId k = 0; k < n_; ++k) w += Value(b, digits, k);
      total += b.probability * w;
    }
    return total;
  }

 private:
  struct Block {
    std::vector<int> types;
    double probability = 0.0;
    std::vector<int> radices;
    std::vector<std::int64_t> strides;
    std::int64_t size = 0;
    std::int64_t offset = 0;
  };

  void Fill(const Block& b, int threads) {
    ParallelChunks(b.size, threads, [&](std::int64_t begin, std::int64_t end,
                                        int) {
      MixedRadixCounter counter(b.radices);
      counter.Seek(begin);
      std::vector<ActionId> profile(n_);
      std::vector<double> out(n_);
      for (std::int64_t idx = begin; idx < end; ++idx) {
        DigitsToProfile(game_, b.types, counter.digits(), profile);
        game_.utilities(b.types, profile, out);
        for (PlayerId k = 0; k < n_; ++k) table_[b.offset + idx * n_ + k] = out[k];
        counter.Next();
      }
    });
  }

  double Value(const Block& b, std::span<const int> digits, PlayerId i) const {
    if (!table_.empty()) {
      std::int64_t idx = 0;
      for (PlayerId k = 0; k < n_; ++k) idx += digits[k] * b.strides[k];
      return table_[b.offset + idx * n_ + i];
    }
    std::vector<ActionId> profile(n_);
    DigitsToProfile(game_, b.types, digits, profile);
    return game_.utility(i, b.types[i], profile);
  }

  const BayesianGame& game_;
  int n_;
  std::vector<Block> blocks_;
  // [player][type] -> (block, probability of the other players' types).
  std::vector<std::vector<std::vector<std::pair<int, double>>>> by_type_;
  std::vector<double> table_;
};

// Local index of every choice of s; throws if one is unavailable.
std::vector<std::vector<int>> ToLocal(const BayesianGame& game,
                                      const StrategyProfile& s) {
  s.Validate(game);
  std::vector<std::vector<int>> local(game.num_players());
  for (PlayerId i = 0; i < game.num_players(); ++i) {
    for (TypeId t = 0; t < game.num_types(i); ++t) {
      const auto acts = game.actions(i, t);
      local[i].push_back(static_cast<int>(
          std::lower_bound(acts.begin(), acts.end(), s.action(i, t)) -
          acts.begin()));
    }
  }
  return local;
}

StrategyProfile ToGlobal(const BayesianGame& game,
                         const std::vector<std::vector<int>>& local) {
  std::vector<std::vector<ActionId>> choices(game.num_players());
  for (PlayerId i = 0; i < game.num_players(); ++i) {
    for (TypeId t = 0; t < game.num_types(i); ++t) {
      choices[i].push_back(game.actions(i, t)[local[i][t]]);
    }
  }
  return StrategyProfile(std::move(choices));
}

struct Regret {
  double value = 0.0;
  int best = 0;
};

// Regret of (i, ti) under s, and its lowest-index best response.
Regret TypeRegret(const BayesianGame& game, const Evaluator& eval,
                  const std::vector<std::vector<int>>& s, PlayerId i,
                  TypeId ti) {
  const double sign = Sign(game);
  const int count = static_cast<int>(game.actions(i, ti).size());
  double best = -kInfinity;
  int best_x = 0;
  double current = 0.0;
  for (int x = 0; x < count; ++x) {
    const double v = sign * eval.Interim(s, i, ti, x);
    if (x == s[i][ti]) current = v;
    if (v > best) {
      best = v;
      best_x = x;
    }
  }
  return {best - current, best_x};
}

}  // namespace

double InterimUtility(const BayesianGame& game, const StrategyProfile& s,
                      PlayerId i, TypeId ti, ActionId a) {
  s.Validate(game);
  if (!game.is_available(i, ti, a)) {
    throw InvalidProfileError("action " + std::to_string(a) +
                              " is not available to player " +
                              std::to_string(i) + " type " + std::to_string(ti));
  }
  const int n = game.num_players();
  std::vector<int> radices(n, 1);
  for (PlayerId k = 0; k < n; ++k) {
    if (k != i) radices[k] = game.num_types(k);
  }
  MixedRadixCounter counter(radices);
  std::vector<TypeId> types(n);
  std::vector<ActionId> profile(n);
  double total = 0.0;
  do {
    double p = 1.0;
    for (PlayerId k = 0; k < n; ++k) {
      types[k] = k == i ? ti : counter.digits()[k];
      if (k != i) p *= game.type_distribution(k).probability(types[k]);
      profile[k] = s.action(k, types[k]);
    }
    profile[i] = a;
    total += p * game.utility(i, ti, profile);
  } while (counter.Next());
  return total;
}

BneVerdict IsPureBne(const BayesianGame& game, const StrategyProfile& s,
                     double epsilon) {
  s.Validate(game);
  const double sign = Sign(game);
  BneVerdict v;
  double worst = -kInfinity;
  for (PlayerId i = 0; i < game.num_players(); ++i) {
    for (TypeId t = 0; t < game.num_types(i); ++t) {
      const double current = sign * InterimUtility(game, s, i, t, s.action(i, t));
      for (ActionId a : game.actions(i, t)) {
        const double regret = sign * InterimUtility(game, s, i, t, a) - current;
        if (regret > worst) {
          worst = regret;
          v.player = i;
          v.type = t;
          v.best_action = a;
        }
      }
    }
  }
  v.max_regret = std::max(0.0, worst);
  v.pass = v.max_regret <= epsilon + kNumericTolerance;
  return v;
}

double StrategySpaceSize(const BayesianGame& game) {
  double total = 1.0;
  for (PlayerId i = 0; i < game.num_players(); ++i) {
    for (TypeId t = 0; t < game.num_types(i); ++t) {
      total *= static_cast<double>(game.actions(i, t).size());
    }
  }
  return total;
}

std::vector<Equilibrium> EnumeratePureBne(const BayesianGame& game,
                                          const EnumerateOptions& options) {
  const double size = StrategySpaceSize(game);
  if (size > static_cast<double>(options.max_profiles)) {
    throw GuardExceededError("pure BNE enumeration", size,
                             static_cast<double>(options.max_profiles));
  }
  if (size == 0) return {};
  const int n = game.num_players();
  const Evaluator eval(game, options.threads);
  const double sign = Sign(game);
  const double tolerance = options.epsilon + kNumericTolerance;

  // The pivot is the last player with a choice; its strategy is read off as
  // per-type best-response sets instead of being enumerated.
  PlayerId pivot = -1;
  for (PlayerId i = 0; i < n; ++i) {
    for (TypeId t = 0; t < game.num_types(i); ++t) {
      if (game.actions(i, t).size() > 1) pivot = i;
    }
  }
  std::vector<std::pair<PlayerId, TypeId>> slots;
  std::vector<int> radices;
  for (PlayerId i = 0; i < n; ++i) {
    if (i == pivot) continue;
    for (TypeId t = 0; t < game.num_types(i); ++t) {
      slots.emplace_back(i, t);
      radices.push_back(static_cast<int>(game.actions(i, t).size()));
    }
  }
  MixedRadixCounter probe(radices);
  const std::int64_t outer = probe.count();
  const int chunks = NumChunks(outer, options.threads);
  std::vector<std::vector<Equilibrium>> found(chunks);

  ParallelChunks(outer, options.threads, [&](std::int64_t begin,
                                             std::int64_t end, int chunk) {
    MixedRadixCounter counter(radices);
    counter.Seek(begin);
    std::vector<std::vector<int>> s(n);
    for (PlayerId i = 0; i < n; ++i) s[i].assign(game.num_types(i), 0);
    for (std::int64_t idx = begin; idx < end; ++idx, counter.Next()) {
      for (std::size_t k = 0; k < slots.size(); ++k) {
        s[slots[k].first][slots[k].second] = counter.digits()[k];
      }
      // Per pivot type: acceptable local actions and their regrets.
      std::vector<std::vector<std::pair<int, double>>> options_by_type;
      bool empty = false;
      if (pivot >= 0) {
        for (TypeId t = 0; t < game.num_types(pivot); ++t) {
          const int count = static_cast<int>(game.actions(pivot, t).size());
          std::vector<double> values(count);
          double best = -kInfinity;
          for (int x = 0; x < count; ++x) {
            values[x] = sign * eval.Interim(s, pivot, t, x);
            best = std::max(best, values[x]);
          }
          std::vector<std::pair<int, double>> ok;
          for (int x = 0; x < count; ++x) {
            if (best - values[x] <= tolerance) ok.emplace_back(x, best - values[x]);
          }
          if (ok.empty()) empty = true;
          options_by_type.push_back(std::move(ok));
        }
      }
      if (empty) continue;
      std::vector<int> pivot_radices;
      for (const auto& ok : options_by_type) {
        pivot_radices.push_back(static_cast<int>(ok.size()));
      }
      MixedRadixCounter inner(pivot_radices);
      do {
        double regret = 0.0;
        for (std::size_t t = 0; t < options_by_type.size(); ++t) {
          const auto& [x, r] = options_by_type[t][inner.digits()[t]];
          s[pivot][t] = x;
          regret = std::max(regret, r);
        }
        bool ok = true;
        for (PlayerId i = 0; i < n && ok; ++i) {
          if (i == pivot) continue;
          for (TypeId t = 0; t < game.num_types(i) && ok; ++t) {
            if (game.actions(i, t).size() <= 1) continue;
            const double r = TypeRegret(game, eval, s, i, t).value;
            if (r > tolerance) ok = false;
            regret = std::max(regret, r);
          }
        }
        if (ok) found[chunk].push_back({ToGlobal(game, s), std::max(0.0, regret)});
      } while (inner.Next());
    }
  });
  std::vector<Equilibrium> out;
  for (auto& part : found) {
    for (auto& e : part) out.push_back(std::move(e));
  }
  return out;
}

DynamicsResult BestResponseDynamics(const BayesianGame& game,
                                    const StrategyProfile& start,
                                    int max_rounds) {
  std::vector<std::vector<int>> s = ToLocal(game, start);
  const Evaluator eval(game, 1);
  const double sign = Sign(game);
  DynamicsResult out;
  for (int round = 1; round <= max_rounds; ++round) {
    bool changed = false;
    for (PlayerId i = 0; i < game.num_players(); ++i) {
      for (TypeId t = 0; t < game.num_types(i); ++t) {
        const int count = static_cast<int>(game.actions(i, t).size());
        std::vector<double> values(count);
        double best = -kInfinity;
        for (int x = 0; x < count; ++x) {
          values[x] = sign * eval.Interim(s, i, t, x);
          best = std::max(best, values[x]);
        }
        int choice = 0;
        while (values[choice] < best - 1e-12) ++choice;
        if (choice != s[i][t]) {
          s[i][t] = choice;
          changed = true;
        }
      }
    }
    out.rounds = round;
    if (!changed) {
      out.converged = true;
      break;
    }
  }
  out.strategy = ToGlobal(game, s);
  return out;
}

double PoaRatio(Objective objective, double optimal, double worst) {
  if (objective == Objective::kUtility) {
    if (worst <= 0.0) return optimal > 0.0 ? kInfinity : 1.0;
    return optimal / worst;
  }
  if (optimal <= 0.0) return worst > 0.0 ? kInfinity : 1.0;
  return worst / optimal;
}

PoaResult BayesNashPoa(const BayesianGame& game,
                       const EnumerateOptions& options) {
  PoaResult out;
  out.epsilon = options.epsilon;
  const std::vector<Equilibrium> eqs = EnumeratePureBne(game, options);
  if (eqs.empty()) return out;
  const Evaluator eval(game, options.threads);
  const double sign = Sign(game);
  out.found = true;
  out.optimal_welfare = ExpectedOptimalWelfare(game);
  for (std::size_t k = 0; k < eqs.size(); ++k) {
    const double w = eval.Welfare(ToLocal(game, eqs[k].strategy));
    out.equilibria.push_back({eqs[k].strategy, eqs[k].regret, w});
    if (out.worst_index < 0 || sign * w < sign * out.worst_welfare) {
      out.worst_index = static_cast<int>(k);
      out.worst_welfare = w;
    }
  }
  out.poa = PoaRatio(game.objective(), out.optimal_welfare, out.worst_welfare);
  return out;
}

std::vector<double> EpsilonLadder(double slack, int steps) {
  std::vector<double> out{0.0};
  double e = slack;
  for (int k = 0; k < steps && slack > 0.0; ++k, e *= 2.0) out.push_back(e);
  return out;
}

PoaResult BayesNashPoaOnLadder(const BayesianGame& game,
                               std::span<const double> ladder,
                               EnumerateOptions options) {
  PoaResult last;
  for (double e : ladder) {
    options.epsilon = e;
    last = BayesNashPoa(game, options);
    if (last.found) return last;
  }
  return last;
}

MisalignmentVerdict CheckMisalignment(const BayesianGame& game,
                                      const StrategyProfile& s,
                                      double epsilon) {
  MisalignmentVerdict v;
  v.slack = game.num_strategic_players() * epsilon;
  if (!IsPureBne(game, s, epsilon).pass) {
    v.applicable = false;
    v.reason = "strategy profile is not an epsilon-BNE";
    return v;
  }
  if (!game.constant_strategy_space() &&
      !game.types_enter_only_through_actions()) {
    v.applicable = false;
    v.reason = "welfare of one type profile at another's actions is undefined";
    return v;
  }
  const int n = game.num_players();
  std::vector<ActionId> profile(n);
  std::vector<double> out(n);
  ForEachTypeProfile(game, [&](std::span<const TypeId> t, double pt) {
    s.PlayInto(t, profile);
    game.utilities(t, profile, out);
    double sw = 0.0;
    for (double u : out) sw += u;
    v.rhs += pt * sw;
    ForEachTypeProfile(game, [&](std::span<const TypeId> w, double pw) {
      game.utilities(w, profile, out);
      double cross = 0.0;
      for (double u : out) cross += u;
      v.lhs += pt * pw * cross;
    });
  });
  const double sign = Sign(game);
  v.pass = sign * (v.rhs - v.lhs) + v.slack >= -kNumericTolerance;
  return v;
}

bool InterimIndividuallyRational(const BayesianGame& game,
                                 const StrategyProfile& s,
                                 std::span<const PlayerId> exempt) {
  for (PlayerId i = 0; i < game.num_players(); ++i) {
    if (std::find(exempt.begin(), exempt.end(), i) != exempt.end()) continue;
    for (TypeId t = 0; t < game.num_types(i); ++t) {
      if (InterimUtility(game, s, i, t, s.action(i, t)) < -kNumericTolerance) {
        return false;
      }
    }
  }
  return true;
}

double ExpectedIrDeficit(const BayesianGame& game, const StrategyProfile& s,
                         std::span<const PlayerId> subset) {
  double deficit = 0.0;
  for (PlayerId i = 0; i < game.num_players(); ++i) {
    if (std::find(subset.begin(), subset.end(), i) != subset.end()) continue;
    double expected = 0.0;
    for (TypeId t = 0; t < game.num_types(i); ++t) {
      expected += game.type_distribution(i).probability(t) *
                  InterimUtility(game, s, i, t, s.action(i, t));
    }
    deficit += std::max(0.0, -expected);
  }
  return deficit;
}

}  // namespace bnlab
