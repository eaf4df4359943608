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

#include "bnlab/lp.hpp"

#include <cmath>
#include <limits>

namespace bnlab::lp {
namespace {

// Solves the square system m x = r in place by Gaussian elimination with
// partial pivoting. Returns false when singular.
bool SolveSquare(std::vector<std::vector<double>> m, std::vector<double> r,
                 std::vector<double>* x) {
  const int n = static_cast<int>(r.size());
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int row = col + 1; row < n; ++row) {
      if (std::abs(m[row][col]) > std::abs(m[pivot][col])) pivot = row;
    }
    if (std::abs(m[pivot][col]) < 1e-12) return false;
    std::swap(m[pivot], m[col]);
    std::swap(r[pivot], r[col]);
    for (int row = col + 1; row < n; ++row) {
      const double f = m[row][col] / m[col][col];
      if (f == 0.0) continue;
      for (int k = col; k < n; ++k) m[row][k] -= f * m[col][k];
      r[row] -= f * r[col];
    }
  }
  x->assign(n, 0.0);
  for (int row = n - 1; row >= 0; --row) {
    double s = r[row];
    for (int k = row + 1; k < n; ++k) s -= m[row][k] * (*x)[k];
    (*x)[row] = s / m[row][row];
  }
  return true;
}

}  // namespace

Solution SolveSimplex(const PackingLp& lp, double tolerance) {
  const int rows = static_cast<int>(lp.a.size());
  const int vars = static_cast<int>(lp.c.size());
  const int cols = vars + rows;
  // Tableau rows: constraint rows then the objective row (reduced costs).
  std::vector<std::vector<double>> t(rows + 1, std::vector<double>(cols + 1));
  std::vector<int> basis(rows);
  for (int r = 0; r < rows; ++r) {
    for (int k = 0; k < vars; ++k) t[r][k] = lp.a[r][k];
    t[r][vars + r] = 1.0;
    t[r][cols] = lp.b[r];
    basis[r] = vars + r;
  }
  for (int k = 0; k < vars; ++k) t[rows][k] = -lp.c[k];

  for (;;) {
    int enter = -1;
    for (int k = 0; k < cols; ++k) {
      if (t[rows][k] < -tolerance) {
        enter = k;
        break;
      }
    }
    if (enter < 0) break;
    int leave = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (int r = 0; r < rows; ++r) {
      if (t[r][enter] > tolerance) {
        const double ratio = t[r][cols] / t[r][enter];
        if (ratio < best_ratio - tolerance ||
            (std::abs(ratio - best_ratio) <= tolerance && leave >= 0 &&
             basis[r] < basis[leave])) {
          best_ratio = ratio;
          leave = r;
        }
      }
    }
    if (leave < 0) return Solution{false, std::numeric_limits<double>::infinity(), {}};
    const double pivot = t[leave][enter];
    for (double& v : t[leave]) v /= pivot;
    for (int r = 0; r <= rows; ++r) {
      if (r == leave) continue;
      const double f = t[r][enter];
      if (f == 0.0) continue;
      for (int k = 0; k <= cols; ++k) t[r][k] -= f * t[leave][k];
    }
    basis[leave] = enter;
  }

  Solution s;
  s.x.assign(vars, 0.0);
  for (int r = 0; r < rows; ++r) {
    if (basis[r] < vars) s.x[basis[r]] = t[r][cols];
  }
  s.objective = 0.0;
  for (int k = 0; k < vars; ++k) s.objective += lp.c[k] * s.x[k];
  return s;
}

Solution SolveByVertices(const PackingLp& lp, double tolerance) {
  const int rows = static_cast<int>(lp.a.size());
  const int vars = static_cast<int>(lp.c.size());
  const int total = rows + vars;  // last `vars` constraints are -x_k <= 0
  auto row_of = [&](int k, std::vector<double>* coef, double* rhs) {
    if (k < rows) {
      *coef = lp.a[k];
      *rhs = lp.b[k];
    } else {
      coef->assign(vars, 0.0);
      (*coef)[k - rows] = -1.0;
      *rhs = 0.0;
    }
  };

  Solution best;
  best.objective = -std::numeric_limits<double>::infinity();
  std::vector<int> pick(vars);
  for (int k = 0; k < vars; ++k) pick[k] = k;
  std::vector<double> coef;
  double rhs;
  for (;;) {
    std::vector<std::vector<double>> m(vars);
    std::vector<double> r(vars);
    for (int k = 0; k < vars; ++k) {
      row_of(pick[k], &coef, &rhs);
      m[k] = coef;
      r[k] = rhs;
    }
    std::vector<double> x;
    if (SolveSquare(m, r, &x)) {
      bool feasible = true;
      for (int k = 0; k < total && feasible; ++k) {
        row_of(k, &coef, &rhs);
        double lhs = 0.0;
        for (int v = 0; v < vars; ++v) lhs += coef[v] * x[v];
        if (lhs > rhs + tolerance) feasible = false;
      }
      if (feasible) {
        double obj = 0.0;
        for (int v = 0; v < vars; ++v) obj += lp.c[v] * x[v];
        if (obj > best.objective + tolerance) {
          best.objective = obj;
          best.x = x;
        }
      }
    }
    // Next combination of `vars` out of `total`.
    int k = vars - 1;
    while (k >= 0 && pick[k] == total - vars + k) --k;
    if (k < 0) break;
    ++pick[k];
    for (int j = k + 1; j < vars; ++j) pick[j] = pick[j - 1] + 1;
  }
  for (double& v : best.x) {
    if (v < 0.0 && v > -tolerance) v = 0.0;
  }
  return best;
}

}  // namespace bnlab::lp
