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

#include "bnlab/effort.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace bnlab {
namespace {

std::string FormatNumber(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.10g", x);
  return buf;
}

ConcaveValue Sample(double max, int pieces, double (*f)(double)) {
  if (!(max > 0.0) || pieces < 1) {
    throw InputError("sampled value needs a positive range and pieces");
  }
  std::vector<double> xs;
  std::vector<double> ys;
  for (int k = 0; k <= pieces; ++k) {
    const double x = max * k / pieces;
    xs.push_back(x);
    ys.push_back(k == 0 ? 0.0 : f(x));
  }
  return ConcaveValue(std::move(xs), std::move(ys));
}

}  // namespace

ConcaveValue::ConcaveValue(std::vector<double> xs, std::vector<double> ys)
    : xs_(std::move(xs)), ys_(std::move(ys)) {
  if (xs_.size() < 2 || xs_.size() != ys_.size()) {
    throw InputError("value needs at least two matching breakpoints");
  }
  if (xs_[0] != 0.0 || ys_[0] != 0.0) {
    throw InputError("value must start at (0, 0)");
  }
  double previous = kInfinity;
  for (std::size_t k = 0; k + 1 < xs_.size(); ++k) {
    if (!(xs_[k + 1] > xs_[k]) || !std::isfinite(xs_[k + 1]) ||
        !std::isfinite(ys_[k + 1])) {
      throw InputError("breakpoints must be finite and strictly increasing");
    }
    const double slope = (ys_[k + 1] - ys_[k]) / (xs_[k + 1] - xs_[k]);
    if (slope < -1e-12) throw InputError("value must be nondecreasing");
    if (slope > previous + 1e-12) throw InputError("value must be concave");
    previous = slope;
  }
}

ConcaveValue ConcaveValue::Linear(double slope) {
  if (!(slope >= 0.0)) throw InputError("linear value needs slope >= 0");
  return ConcaveValue({0.0, 1.0}, {0.0, slope});
}

ConcaveValue ConcaveValue::Capped(double cap) {
  if (!(cap > 0.0)) throw InputError("capped value needs a positive cap");
  return ConcaveValue({0.0, cap, 2.0 * cap}, {0.0, cap, cap});
}

ConcaveValue ConcaveValue::Sqrt(double max, int pieces) {
  return Sample(max, pieces, [](double x) { return std::sqrt(x); });
}

ConcaveValue ConcaveValue::Log1p(double max, int pieces) {
  return Sample(max, pieces, [](double x) { return std::log1p(x); });
}

double ConcaveValue::operator()(double x) const {
  if (x <= 0.0) return 0.0;
  std::size_t k = std::upper_bound(xs_.begin(), xs_.end(), x) - xs_.begin();
  k = std::min(k, xs_.size() - 1);
  const std::size_t lo = k - 1;
  return ys_[lo] +
         (x - xs_[lo]) * (ys_[k] - ys_[lo]) / (xs_[k] - xs_[lo]);
}

mpq_class ConcaveValue::Exact(const mpq_class& x) const {
  if (x <= 0) return 0;
  std::size_t k = 1;
  while (k + 1 < xs_.size() && mpq_class(xs_[k]) <= x) ++k;
  const mpq_class x0(xs_[k - 1]);
  const mpq_class x1(xs_[k]);
  const mpq_class y0(ys_[k - 1]);
  const mpq_class y1(ys_[k]);
  mpq_class out = y0 + (x - x0) * (y1 - y0) / (x1 - x0);
  out.canonicalize();
  return out;
}

// ---------------------------------------------------------------------------

EffortGame::EffortGame(EffortSpec spec) : spec_(std::move(spec)) {
  const int n = num_players();
  const int m = num_projects();
  if (n < 1) throw InputError("effort game needs a player");
  if (m < 1) throw InputError("effort game needs a project");
  if (!(spec_.delta > 0.0)) throw InputError("effort step must be positive");
  if (static_cast<int>(spec_.kinds.size()) != n) {
    throw InputError("abilities and budgets must be given for every player");
  }
  owner_.resize(n);
  efforts_.resize(n);
  available_.resize(n);
  for (PlayerId i = 0; i < n; ++i) {
    const std::string where = "player " + std::to_string(i);
    if (static_cast<int>(spec_.kinds[i].size()) != spec_.types[i].size()) {
      throw InputError(where + " needs one ability/budget per type");
    }
    available_[i].resize(spec_.types[i].size());
    for (TypeId t = 0; t < spec_.types[i].size(); ++t) {
      const EffortType& kind = spec_.kinds[i][t];
      if (static_cast<int>(kind.ability.size()) != m) {
        throw InputError(where + " needs one ability per project");
      }
      for (double a : kind.ability) {
        if (!(a >= 0.0) || !std::isfinite(a)) {
          throw InputError(where + " has a negative ability");
        }
      }
      if (!(kind.budget > 0.0)) {
        throw InputError(where + " needs a positive budget");
      }
      const int steps =
          static_cast<int>(std::floor(kind.budget / spec_.delta + 1e-9));
      MixedRadixCounter counter(std::vector<int>(m, steps + 1));
      do {
        const auto& d = counter.digits();
        int total = 0;
        for (int k : d) total += k;
        if (total > steps) continue;
        std::vector<double> effort(m);
        for (int j = 0; j < m; ++j) effort[j] = d[j] * spec_.delta;
        available_[i][t].push_back(static_cast<ActionId>(owner_[i].size()));
        owner_[i].push_back(t);
        efforts_[i].push_back(std::move(effort));
      } while (counter.Next());
    }
  }
}

ActionId EffortGame::FindAction(PlayerId i, TypeId t,
                                std::span<const double> effort) const {
  for (ActionId a : available_[i][t]) {
    const auto& x = efforts_[i][a];
    bool same = effort.size() == x.size();
    for (std::size_t j = 0; same && j < x.size(); ++j) {
      same = std::abs(x[j] - effort[j]) <= 1e-9;
    }
    if (same) return a;
  }
  return -1;
}

std::vector<double> EffortGame::WeightedInputs(
    std::span<const ActionId> profile) const {
  std::vector<double> s(num_projects(), 0.0);
  for (PlayerId k = 0; k < num_players(); ++k) {
    const auto& a = Ability(k, profile[k]);
    const auto& x = efforts_[k][profile[k]];
    for (int j = 0; j < num_projects(); ++j) s[j] += a[j] * x[j];
  }
  return s;
}

double EffortGame::utility(PlayerId i, TypeId,
                           std::span<const ActionId> profile) const {
  const std::vector<double> s = WeightedInputs(profile);
  const auto& a = Ability(i, profile[i]);
  const auto& x = efforts_[i][profile[i]];
  double u = 0.0;
  for (int j = 0; j < num_projects(); ++j) {
    const double w = a[j] * x[j];
    if (w > 0.0) u += w * spec_.projects[j](s[j]) / s[j];
  }
  return u;
}

void EffortGame::utilities(std::span<const TypeId>,
                           std::span<const ActionId> profile,
                           std::span<double> out) const {
  const std::vector<double> s = WeightedInputs(profile);
  std::vector<double> per_unit(num_projects(), 0.0);
  for (int j = 0; j < num_projects(); ++j) {
    if (s[j] > 0.0) per_unit[j] = spec_.projects[j](s[j]) / s[j];
  }
  for (PlayerId i = 0; i < num_players(); ++i) {
    const auto& a = Ability(i, profile[i]);
    const auto& x = efforts_[i][profile[i]];
    double u = 0.0;
    for (int j = 0; j < num_projects(); ++j) {
      const double w = a[j] * x[j];
      if (w > 0.0) u += w * per_unit[j];
    }
    out[i] = u;
  }
}

std::string EffortGame::action_label(PlayerId i, ActionId a) const {
  std::string out = spec_.types[i].label(owner_[i][a]) + ":(";
  const auto& x = efforts_[i][a];
  for (std::size_t j = 0; j < x.size(); ++j) {
    out += (j ? "," : "") + FormatNumber(x[j]);
  }
  return out + ")";
}

ActionId RequireEffortAction(const EffortGame& game, PlayerId i, TypeId t,
                             std::span<const double> effort) {
  const std::string who = "player " + std::to_string(i);
  if (static_cast<int>(effort.size()) != game.num_projects()) {
    throw InvalidActionError(who + " effort has the wrong length");
  }
  double total = 0.0;
  for (double x : effort) {
    if (!(x >= 0.0)) throw InvalidActionError(who + " has negative effort");
    total += x;
  }
  if (total > game.spec().kinds[i][t].budget + 1e-9) {
    throw InvalidActionError(who + " exceeds its budget");
  }
  const ActionId a = game.FindAction(i, t, effort);
  if (a < 0) throw InvalidActionError(who + " effort is off the grid");
  return a;
}

double EffortUtility(const EffortGame& game, PlayerId i,
                     std::span<const TypeId> types,
                     std::span<const std::vector<double>> efforts) {
  ValidateTypeProfile(game, types);
  if (static_cast<int>(efforts.size()) != game.num_players()) {
    throw InvalidProfileError("one effort vector per player required");
  }
  std::vector<ActionId> profile(game.num_players());
  for (PlayerId k = 0; k < game.num_players(); ++k) {
    profile[k] = RequireEffortAction(game, k, types[k], efforts[k]);
  }
  return game.utility(i, types[i], profile);
}

double EffortSocialWelfare(const EffortGame& game,
                           std::span<const ActionId> profile) {
  const std::vector<double> s = game.WeightedInputs(profile);
  double total = 0.0;
  for (int j = 0; j < game.num_projects(); ++j) {
    total += game.spec().projects[j](s[j]);
  }
  return total;
}

std::vector<std::vector<mpq_class>> ExactShares(
    const EffortGame& game, std::span<const ActionId> profile) {
  const int n = game.num_players();
  const int m = game.num_projects();
  std::vector<std::vector<mpq_class>> weighted(n, std::vector<mpq_class>(m));
  std::vector<mpq_class> s(m);
  for (PlayerId i = 0; i < n; ++i) {
    const auto& a = game.Ability(i, profile[i]);
    const auto& x = game.Effort(i, profile[i]);
    for (int j = 0; j < m; ++j) {
      weighted[i][j] = mpq_class(a[j]) * mpq_class(x[j]);
      s[j] += weighted[i][j];
    }
  }
  std::vector<std::vector<mpq_class>> shares(n, std::vector<mpq_class>(m));
  for (int j = 0; j < m; ++j) {
    if (s[j] == 0) continue;
    const mpq_class per_unit = game.spec().projects[j].Exact(s[j]) / s[j];
    for (PlayerId i = 0; i < n; ++i) {
      shares[i][j] = weighted[i][j] * per_unit;
      shares[i][j].canonicalize();
    }
  }
  return shares;
}

bool SharesConserved(const EffortGame& game,
                     std::span<const ActionId> profile) {
  const auto shares = ExactShares(game, profile);
  const int m = game.num_projects();
  std::vector<mpq_class> s(m);
  for (PlayerId i = 0; i < game.num_players(); ++i) {
    const auto& a = game.Ability(i, profile[i]);
    const auto& x = game.Effort(i, profile[i]);
    for (int j = 0; j < m; ++j) s[j] += mpq_class(a[j]) * mpq_class(x[j]);
  }
  for (int j = 0; j < m; ++j) {
    if (s[j] == 0) continue;
    mpq_class total;
    for (const auto& row : shares) total += row[j];
    if (total != game.spec().projects[j].Exact(s[j])) return false;
  }
  return true;
}

SmoothnessVerdict CheckUniversal11Smoothness(const EffortGame& game,
                                             CheckOptions options) {
  options.allow_sampling = true;
  return CheckUniversal(game, 1.0, 1.0, options);
}

}  // namespace bnlab
