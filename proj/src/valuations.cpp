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

#include "bnlab/valuations.hpp"

#include <algorithm>
#include <cmath>

#include "bnlab/common.hpp"
#include "bnlab/lp.hpp"

namespace bnlab {
namespace {

constexpr double kValueTolerance = 1e-9;

std::vector<int> Members(ItemSet s) {
  std::vector<int> out;
  for (int j = 0; j < kMaxItems; ++j) {
    if (Contains(s, j)) out.push_back(j);
  }
  return out;
}

}  // namespace

std::vector<ItemSet> LexicographicSets(int items) {
  std::vector<ItemSet> sets;
  for (ItemSet s = 1; s <= FullSet(items); ++s) sets.push_back(s);
  std::sort(sets.begin(), sets.end(), [](ItemSet x, ItemSet y) {
    return Members(x) < Members(y);
  });
  return sets;
}

std::vector<int> LexicographicRanks(int items) {
  std::vector<int> rank(std::size_t{1} << items, 0);
  const auto sets = LexicographicSets(items);
  for (std::size_t k = 0; k < sets.size(); ++k) {
    rank[sets[k]] = static_cast<int>(k) + 1;
  }
  return rank;
}

std::string SetToString(ItemSet s) {
  std::string out = "{";
  bool first = true;
  for (int j : Members(s)) {
    if (!first) out += ",";
    out += std::to_string(j);
    first = false;
  }
  return out + "}";
}

// ---------------------------------------------------------------------------

XosValuation::XosValuation(int items, std::vector<std::vector<double>> clauses)
    : items_(items), clauses_(std::move(clauses)) {
  if (items < 0 || items > kMaxItems) {
    throw InputError("item count must be in [0, 16]");
  }
  if (clauses_.empty()) throw InputError("XOS valuation needs a clause");
  for (const auto& clause : clauses_) {
    if (static_cast<int>(clause.size()) != items) {
      throw InputError("XOS clause length differs from item count");
    }
    for (double x : clause) {
      if (!(x >= 0.0) || !std::isfinite(x)) {
        throw InputError("XOS clause entries must be finite and nonnegative");
      }
    }
  }
}

XosValuation XosValuation::Additive(std::vector<double> values) {
  const int m = static_cast<int>(values.size());
  return XosValuation(m, {std::move(values)});
}

XosValuation XosValuation::UnitDemand(const std::vector<double>& values) {
  const int m = static_cast<int>(values.size());
  std::vector<std::vector<double>> clauses;
  for (int j = 0; j < m; ++j) {
    std::vector<double> clause(m, 0.0);
    clause[j] = values[j];
    clauses.push_back(std::move(clause));
  }
  return XosValuation(m, std::move(clauses));
}

double XosValuation::Value(ItemSet s) const {
  double best = 0.0;
  for (const auto& clause : clauses_) {
    double sum = 0.0;
    for (int j = 0; j < items_; ++j) {
      if (Contains(s, j)) sum += clause[j];
    }
    best = std::max(best, sum);
  }
  return best;
}

int XosValuation::SupportingClause(ItemSet s) const {
  int best = 0;
  double best_value = -1.0;
  for (std::size_t k = 0; k < clauses_.size(); ++k) {
    double sum = 0.0;
    for (int j = 0; j < items_; ++j) {
      if (Contains(s, j)) sum += clauses_[k][j];
    }
    if (sum > best_value) {
      best_value = sum;
      best = static_cast<int>(k);
    }
  }
  return best;
}

std::vector<double> XosValuation::SupportingAdditive(ItemSet s) const {
  std::vector<double> a = clauses_[SupportingClause(s)];
  for (int j = 0; j < items_; ++j) {
    if (!Contains(s, j)) a[j] = 0.0;
  }
  return a;
}

// ---------------------------------------------------------------------------

TableValuation::TableValuation(int items, std::vector<double> values)
    : items_(items), values_(std::move(values)) {
  if (items < 0 || items > kMaxItems) {
    throw InputError("item count must be in [0, 16]");
  }
  if (values_.size() != (std::size_t{1} << items)) {
    throw InputError("table valuation needs 2^m values");
  }
  if (values_[0] != 0.0) throw InputError("table valuation has v(empty) != 0");
  for (ItemSet s = 0; s < values_.size(); ++s) {
    if (!std::isfinite(values_[s]) || values_[s] < 0.0) {
      throw InputError("table value for " + SetToString(s) +
                       " is negative or not finite");
    }
    for (int j = 0; j < items; ++j) {
      if (Contains(s, j) &&
          values_[s & ~(ItemSet{1} << j)] > values_[s] + kValueTolerance) {
        throw InputError("table valuation is not monotone at " +
                         SetToString(s));
      }
    }
  }
}

TableValuation TableValuation::FromXos(const XosValuation& xos) {
  std::vector<double> values(std::size_t{1} << xos.items());
  for (ItemSet s = 0; s < values.size(); ++s) values[s] = xos.Value(s);
  return TableValuation(xos.items(), std::move(values));
}

bool IsSubadditive(const TableValuation& v) {
  const ItemSet n = static_cast<ItemSet>(v.values().size());
  for (ItemSet s = 1; s < n; ++s) {
    for (ItemSet t = s; t < n; ++t) {
      if (v.Value(s | t) > v.Value(s) + v.Value(t) + kValueTolerance) {
        return false;
      }
    }
  }
  return true;
}

bool IsSubmodular(const TableValuation& v) {
  const ItemSet n = static_cast<ItemSet>(v.values().size());
  for (ItemSet s = 0; s < n; ++s) {
    for (ItemSet t = s; t < n; ++t) {
      if (v.Value(s | t) + v.Value(s & t) >
          v.Value(s) + v.Value(t) + kValueTolerance) {
        return false;
      }
    }
  }
  return true;
}

AdditiveSupport MaxSupportingAdditive(const TableValuation& v, ItemSet s,
                                      LpMethod method) {
  AdditiveSupport out;
  out.additive.assign(v.items(), 0.0);
  const std::vector<int> members = Members(s);
  const int k = static_cast<int>(members.size());
  if (k == 0) return out;

  lp::PackingLp problem;
  problem.c.assign(k, 1.0);
  for (ItemSet local = 1; local < (ItemSet{1} << k); ++local) {
    std::vector<double> row(k, 0.0);
    ItemSet global = 0;
    for (int q = 0; q < k; ++q) {
      if (Contains(local, q)) {
        row[q] = 1.0;
        global |= ItemSet{1} << members[q];
      }
    }
    problem.a.push_back(std::move(row));
    problem.b.push_back(v.Value(global));
  }
  if (method == LpMethod::kAuto) {
    method = k <= 4 ? LpMethod::kVertices : LpMethod::kSimplex;
  }
  const lp::Solution sol = method == LpMethod::kVertices
                               ? lp::SolveByVertices(problem)
                               : lp::SolveSimplex(problem);
  out.covered = sol.objective;
  for (int q = 0; q < k; ++q) out.additive[members[q]] = sol.x[q];
  return out;
}

double BetaFractionallySubadditive(const TableValuation& v, LpMethod method) {
  double beta = 1.0;
  for (ItemSet s = 1; s < v.values().size(); ++s) {
    const double value = v.Value(s);
    if (value <= 0.0) continue;
    const double covered = MaxSupportingAdditive(v, s, method).covered;
    if (covered <= kValueTolerance * std::max(1.0, value)) return kInfinity;
    beta = std::max(beta, value / covered);
  }
  return beta;
}

// ---------------------------------------------------------------------------

int Valuation::items() const {
  return std::visit([](const auto& r) { return r.items(); }, rep_);
}

double Valuation::Value(ItemSet s) const {
  return std::visit([s](const auto& r) { return r.Value(s); }, rep_);
}

std::vector<double> Valuation::SupportingVector(ItemSet s) const {
  if (is_xos()) return xos().SupportingAdditive(s);
  return MaxSupportingAdditive(table(), s).additive;
}

TableValuation Valuation::ToTable() const {
  if (is_xos()) return TableValuation::FromXos(xos());
  return table();
}

}  // namespace bnlab
