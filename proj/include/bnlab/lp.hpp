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

#ifndef BNLAB_LP_HPP_
#define BNLAB_LP_HPP_

#include <span>
#include <vector>

namespace bnlab::lp {

// maximize c.x  subject to  A x <= b,  x >= 0,  with b >= 0 (so x = 0 is
// feasible). Rows of A are dense.
struct PackingLp {
  std::vector<std::vector<double>> a;
  std::vector<double> b;
  std::vector<double> c;
};

struct Solution {
  bool bounded = true;
  double objective = 0.0;
  std::vector<double> x;
};

// Tableau simplex from the slack basis with Bland's rule.
Solution SolveSimplex(const PackingLp& lp, double tolerance = 1e-12);

// Enumerates every basis of tight constraints (rows of A and x_k >= 0),
// keeping the best feasible vertex. Exponential; meant for a handful of
// variables. Assumes the LP is bounded.
Solution SolveByVertices(const PackingLp& lp, double tolerance = 1e-9);

}  // namespace bnlab::lp

#endif  // BNLAB_LP_HPP_
