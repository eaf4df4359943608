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

#include "bnlab/congestion.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>

namespace bnlab {
namespace {

std::string FormatNumber(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.10g", x);
  return buf;
}

// Minimizes a unimodal function on [lo, hi] by golden-section search.
template <class F>
double GoldenMin(F&& f, double lo, double hi, int iterations = 200) {
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - g * (b - a);
  double d = a + g * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int it = 0; it < iterations && b - a > 1e-15 * (1.0 + std::abs(a));
       ++it) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  return fc <= fd ? c : d;
}

// Beyond this ratio mu r^(k+1) >= (1 + r)^k, so the margin only grows.
double RatioHorizon(int degree, double mu) {
  return std::max(1.0, std::pow(2.0, degree) / mu);
}

}  // namespace

Polynomial::Polynomial(std::vector<double> coefficients)
    : coefficients_(std::move(coefficients)) {
  for (double c : coefficients_) {
    if (!(c >= 0.0) || !std::isfinite(c)) {
      throw InputError("delay coefficients must be finite and nonnegative");
    }
  }
}

Polynomial Polynomial::Monomial(int degree, double coefficient) {
  std::vector<double> c(degree + 1, 0.0);
  c[degree] = coefficient;
  return Polynomial(std::move(c));
}

int Polynomial::degree() const {
  for (int k = static_cast<int>(coefficients_.size()) - 1; k >= 0; --k) {
    if (coefficients_[k] != 0.0) return k;
  }
  return -1;
}

std::vector<int> Polynomial::support() const {
  std::vector<int> out;
  for (int k = 0; k < static_cast<int>(coefficients_.size()); ++k) {
    if (coefficients_[k] != 0.0) out.push_back(k);
  }
  return out;
}

double Polynomial::operator()(double x) const {
  double y = 0.0;
  for (int k = static_cast<int>(coefficients_.size()) - 1; k >= 0; --k) {
    y = y * x + coefficients_[k];
  }
  return y;
}

std::string Polynomial::ToString() const {
  std::string out;
  for (int k : support()) {
    if (!out.empty()) out += " + ";
    out += FormatNumber(coefficients_[k]);
    if (k >= 1) out += "x";
    if (k >= 2) out += "^" + std::to_string(k);
  }
  return out.empty() ? "0" : out;
}

// ---------------------------------------------------------------------------

CongestionGame::CongestionGame(CongestionSpec spec) : spec_(std::move(spec)) {
  const int n = num_players();
  if (n < 1) throw InputError("congestion game needs a player");
  if (spec_.edges.empty()) throw InputError("congestion game needs an edge");
  if (static_cast<int>(spec_.paths.size()) != n ||
      static_cast<int>(spec_.weights.size()) != n) {
    throw InputError("paths and weights must be given for every player");
  }
  available_.resize(n);
  for (PlayerId i = 0; i < n; ++i) {
    const std::string where = "player " + std::to_string(i);
    if (spec_.paths[i].empty()) throw InputError(where + " has no path");
    for (auto& path : spec_.paths[i]) {
      if (path.empty()) throw InputError(where + " has an empty path");
      std::sort(path.begin(), path.end());
      if (std::adjacent_find(path.begin(), path.end()) != path.end()) {
        throw InputError(where + " repeats an edge on a path");
      }
      for (int e : path) {
        if (e < 0 || e >= num_edges()) {
          throw InputError(where + " uses unknown edge " + std::to_string(e));
        }
      }
    }
    if (static_cast<int>(spec_.weights[i].size()) != spec_.types[i].size()) {
      throw InputError(where + " needs one weight per type");
    }
    for (double w : spec_.weights[i]) {
      if (!(w > 0.0) || !std::isfinite(w)) {
        throw InputError(where + " has a nonpositive weight");
      }
    }
    const int paths = static_cast<int>(spec_.paths[i].size());
    available_[i].resize(spec_.types[i].size());
    for (TypeId t = 0; t < spec_.types[i].size(); ++t) {
      for (int p = 0; p < paths; ++p) available_[i][t].push_back(t * paths + p);
    }
  }
}

int CongestionGame::num_actions(PlayerId i) const {
  return spec_.types[i].size() * static_cast<int>(spec_.paths[i].size());
}

ActionId CongestionGame::EncodeAction(PlayerId i, TypeId weight_type,
                                      int path) const {
  return weight_type * static_cast<int>(spec_.paths[i].size()) + path;
}

double CongestionGame::Rate(PlayerId i, ActionId a) const {
  return spec_.weights[i][a / static_cast<int>(spec_.paths[i].size())];
}

const std::vector<int>& CongestionGame::Path(PlayerId i, ActionId a) const {
  return spec_.paths[i][a % static_cast<int>(spec_.paths[i].size())];
}

std::vector<double> CongestionGame::Loads(
    std::span<const ActionId> profile) const {
  std::vector<double> loads(num_edges(), 0.0);
  for (PlayerId i = 0; i < num_players(); ++i) {
    const double r = Rate(i, profile[i]);
    for (int e : Path(i, profile[i])) loads[e] += r;
  }
  return loads;
}

double CongestionGame::utility(PlayerId i, TypeId,
                               std::span<const ActionId> profile) const {
  const std::vector<double> loads = Loads(profile);
  double delay = 0.0;
  for (int e : Path(i, profile[i])) delay += spec_.edges[e](loads[e]);
  return Rate(i, profile[i]) * delay;
}

void CongestionGame::utilities(std::span<const TypeId>,
                               std::span<const ActionId> profile,
                               std::span<double> out) const {
  const std::vector<double> loads = Loads(profile);
  std::vector<double> delays(num_edges());
  for (int e = 0; e < num_edges(); ++e) delays[e] = spec_.edges[e](loads[e]);
  for (PlayerId i = 0; i < num_players(); ++i) {
    double delay = 0.0;
    for (int e : Path(i, profile[i])) delay += delays[e];
    out[i] = Rate(i, profile[i]) * delay;
  }
}

double CongestionGame::EdgeSocialCost(std::span<const ActionId> profile) const {
  const std::vector<double> loads = Loads(profile);
  double total = 0.0;
  for (int e = 0; e < num_edges(); ++e) {
    total += loads[e] * spec_.edges[e](loads[e]);
  }
  return total;
}

std::string CongestionGame::action_label(PlayerId i, ActionId a) const {
  std::string path = "{";
  for (int e : Path(i, a)) {
    path += (path.size() > 1 ? "," : "") + std::to_string(e);
  }
  return "w" + FormatNumber(Rate(i, a)) + ":" + path + "}";
}

double PlayerCost(const CongestionGame& game, std::span<const TypeId> types,
                  std::span<const ActionId> profile, PlayerId i) {
  ValidateTypeProfile(game, types);
  if (static_cast<int>(profile.size()) != game.num_players()) {
    throw InvalidProfileError("profile has the wrong number of players");
  }
  for (PlayerId k = 0; k < game.num_players(); ++k) {
    if (profile[k] < 0 || profile[k] >= game.num_actions(k)) {
      throw InvalidProfileError("player " + std::to_string(k) +
                                " plays an unknown action");
    }
    if (game.Rate(k, profile[k]) != game.spec().weights[k][types[k]]) {
      throw InvalidActionError("player " + std::to_string(k) +
                               " routes a rate other than its weight");
    }
  }
  return game.utility(i, types[i], profile);
}

// ---------------------------------------------------------------------------

double MonomialLambda(int degree, double mu) {
  if (degree == 0) return 1.0;
  if (!(mu > 0.0)) return kInfinity;
  const int k = degree;
  // g(r) = (1 + r)^k - mu r^(k+1) has a single critical point, the root of
  // k (1 + r)^(k-1) - mu (k + 1) r^k.
  auto slope = [&](double r) {
    return k * std::pow(1.0 + r, k - 1) - mu * (k + 1) * std::pow(r, k);
  };
  double lo = 0.0;
  double hi = RatioHorizon(k, mu);
  while (slope(hi) > 0.0) hi *= 2.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (slope(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double r = 0.5 * (lo + hi);
  return std::pow(1.0 + r, k) - mu * std::pow(r, k + 1);
}

PointwiseVerdict CheckPointwiseCondition(const Polynomial& delay, double lambda,
                                         double mu,
                                         const PointwiseDomain& domain,
                                         double tolerance) {
  PointwiseVerdict v;
  auto record = [&](double margin, double x, double xstar) {
    if (margin < v.worst_margin) {
      v.worst_margin = margin;
      v.worst_x = x;
      v.worst_xstar = xstar;
    }
  };
  const std::vector<int> support = delay.support();
  if (support.size() <= 1) {
    v.exact = true;
    if (support.empty()) {
      v.worst_margin = 0.0;
      v.pass = true;
      return v;
    }
    const int k = support[0];
    const double c = delay.coefficients()[k];
    // Divided by c x*^(k+1): lambda + mu r^(k+1) - (1 + r)^k.
    auto margin = [&](double r) {
      return c * (lambda + mu * std::pow(r, k + 1) - std::pow(1.0 + r, k));
    };
    const double horizon = mu > 0.0 ? RatioHorizon(k, mu) : 1e6;
    const int points = 4001;
    double best_r = 0.0;
    double best = kInfinity;
    for (int p = 0; p < points; ++p) {
      const double r = horizon * p / (points - 1);
      const double m = margin(r);
      if (m < best) {
        best = m;
        best_r = r;
      }
    }
    const double step = horizon / (points - 1);
    const double refined =
        GoldenMin(margin, std::max(0.0, best_r - step), best_r + step);
    if (margin(refined) < best) best_r = refined;
    record(margin(best_r), best_r, 1.0);
    v.pass = v.worst_margin >= -tolerance;
    return v;
  }
  const int n = std::max(2, domain.grid_points);
  for (int a = 0; a < n; ++a) {
    const double x = domain.max_load * a / (n - 1);
    const double own = mu * x * delay(x);
    for (int b = 0; b < n; ++b) {
      const double xstar = domain.max_load * b / (n - 1);
      record(lambda * xstar * delay(xstar) + own - xstar * delay(x + xstar), x,
             xstar);
    }
  }
  v.pass = v.worst_margin >= -tolerance;
  return v;
}

DelayParameters BestDelayParameters(std::span<const int> degrees) {
  DelayParameters out;
  for (int k : degrees) {
    if (k < 0 || k > 4) throw InputError("delay degrees must lie in [0, 4]");
  }
  auto lambda_at = [&](double mu) {
    double lambda = degrees.empty() ? 0.0 : 1.0;
    for (int k : degrees) lambda = std::max(lambda, MonomialLambda(k, mu));
    return lambda;
  };
  auto bound_at = [&](double mu) { return lambda_at(mu) / (1.0 - mu); };
  const int points = 2001;
  double best_mu = 0.0;
  double best = bound_at(0.0);
  for (int p = 1; p < points; ++p) {
    const double mu = static_cast<double>(p) / points;
    const double b = bound_at(mu);
    if (b < best) {
      best = b;
      best_mu = mu;
    }
  }
  if (!std::isfinite(best)) return out;
  const double step = 1.0 / points;
  const double lo = std::max(0.0, best_mu - step);
  const double hi = std::min(1.0 - 1e-12, best_mu + step);
  const double refined = GoldenMin(bound_at, lo, hi);
  if (bound_at(refined) < best) best_mu = refined;
  out.bounded = true;
  out.mu = best_mu;
  out.lambda = lambda_at(best_mu);
  out.bound = out.lambda / (1.0 - out.mu);
  return out;
}

DelayParameters BestDelayParameters(const Polynomial& delay) {
  const std::vector<int> support = delay.support();
  return BestDelayParameters(std::span<const int>(support));
}

SmoothnessVerdict CheckUniversalSmoothnessCongestion(
    const CongestionGame& game, double lambda, double mu,
    const CheckOptions& options) {
  return CheckUniversal(game, lambda, mu, options);
}

std::vector<std::vector<int>> SimplePaths(
    int num_nodes, std::span<const std::pair<int, int>> edges, int source,
    int target, bool directed) {
  if (edges.size() > 8) throw InputError("path generator supports 8 edges");
  auto valid = [&](int v) { return v >= 0 && v < num_nodes; };
  if (!valid(source) || !valid(target)) {
    throw InputError("path endpoints must be graph nodes");
  }
  for (const auto& [u, v] : edges) {
    if (!valid(u) || !valid(v)) throw InputError("edge names an unknown node");
  }
  std::vector<std::vector<int>> out;
  std::vector<int> path;
  std::vector<char> visited(num_nodes, 0);
  std::function<void(int)> walk = [&](int node) {
    if (node == target) {
      out.push_back(path);
      return;
    }
    for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
      int next = -1;
      if (edges[e].first == node) {
        next = edges[e].second;
      } else if (!directed && edges[e].second == node) {
        next = edges[e].first;
      }
      if (next < 0 || visited[next]) continue;
      visited[next] = 1;
      path.push_back(e);
      walk(next);
      path.pop_back();
      visited[next] = 0;
    }
  };
  visited[source] = 1;
  if (source != target) walk(source);
  for (auto& p : out) std::sort(p.begin(), p.end());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace bnlab
