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


#include <cmath>
#include <vector>

#include "bnlab/lp.hpp"
#include "bnlab/valuations.hpp"
#include "doctest.h"
#include "generators.hpp"

namespace bnlab {
namespace {

using testing::Gen;

TEST_CASE("xos value is the best clause sum") {
  CHECK(XosValuation(2, {{4, 6}}).Value(0b11) == 10.0);
  CHECK(XosValuation(2, {{1, 0}, {0, 1}}).Value(0b11) == 1.0);
  CHECK(XosValuation(3, {{3, 0, 1}, {1, 2, 2}}).Value(0b110) == 4.0);
  CHECK(XosValuation(2, {{4, 6}}).Value(0) == 0.0);
}

TEST_CASE("supporting additive picks the attaining clause") {
  CHECK(XosValuation(2, {{4, 6}}).SupportingAdditive(0b11) ==
        std::vector<double>{4, 6});
  CHECK(XosValuation(2, {{1, 0}, {0, 1}}).SupportingAdditive(0b01) ==
        std::vector<double>{1, 0});
  CHECK(XosValuation(2, {{3, 0}, {2, 2}}).SupportingAdditive(0b11) ==
        std::vector<double>{2, 2});
}

TEST_CASE("supporting additive covers v(S) and is dominated below S") {
  Gen g(3);
  for (int trial = 0; trial < 50; ++trial) {
    const int m = g.Int(1, 4);
    const XosValuation v = testing::RandomXos(g, m, g.Int(1, 3), 0.5, 3.0);
    for (ItemSet s = 0; s <= FullSet(m); ++s) {
      const auto a = v.SupportingAdditive(s);
      double on_s = 0.0;
      for (int j = 0; j < m; ++j) {
        if (Contains(s, j)) on_s += a[j];
        else CHECK(a[j] == 0.0);
      }
      CHECK(on_s == doctest::Approx(v.Value(s)));
      for (ItemSet t = s; ; t = (t - 1) & s) {
        double on_t = 0.0;
        for (int j = 0; j < m; ++j) if (Contains(t, j)) on_t += a[j];
        CHECK(on_t <= v.Value(t) + 1e-12);
        if (t == 0) break;
      }
    }
  }
}

TEST_CASE("beta is one on xos tables") {
  Gen g(5);
  for (int trial = 0; trial < 20; ++trial) {
    const int m = g.Int(1, 4);
    const XosValuation v = testing::RandomXos(g, m, g.Int(1, 3), 0.25, 2.0);
    CHECK(BetaFractionallySubadditive(TableValuation::FromXos(v)) ==
          doctest::Approx(1.0).epsilon(1e-9));
  }
  CHECK(BetaFractionallySubadditive(
            TableValuation::FromXos(XosValuation::Additive({1, 2, 3}))) ==
        doctest::Approx(1.0));
}

// v = 1 on every nonempty proper subset and 2 on the ground set. The best
// cover of the ground set is m / (m - 1), so beta = 2 (m - 1) / m.
TEST_CASE("small subadditive tables can exceed ln m") {
  for (int m : {3, 4}) {
    std::vector<double> values(FullSet(m) + 1, 1.0);
    values[0] = 0.0;
    values[FullSet(m)] = 2.0;
    const TableValuation v(m, values);
    CHECK(IsSubadditive(v));
    const double beta = BetaFractionallySubadditive(v);
    CHECK(beta == doctest::Approx(2.0 * (m - 1) / m));
    CHECK(beta > std::log(static_cast<double>(m)));
  }
}

TEST_CASE("random subadditive tables on four items stay below ln 4") {
  Gen g(17);
  for (int trial = 0; trial < 25; ++trial) {
    const TableValuation v = testing::RandomSubadditive(g, 4);
    REQUIRE(IsSubadditive(v));
    CHECK(BetaFractionallySubadditive(v) <= std::log(4.0) + 1e-9);
  }
}

TEST_CASE("vertex enumeration and simplex agree") {
  Gen g(23);
  for (int trial = 0; trial < 30; ++trial) {
    const int m = g.Int(1, 4);
    const TableValuation v = testing::RandomSubadditive(g, m);
    for (ItemSet s = 1; s <= FullSet(m); ++s) {
      const double a = MaxSupportingAdditive(v, s, LpMethod::kVertices).covered;
      const double b = MaxSupportingAdditive(v, s, LpMethod::kSimplex).covered;
      CHECK(a == doctest::Approx(b).epsilon(1e-9));
    }
  }
}

TEST_CASE("class membership") {
  const TableValuation additive =
      TableValuation::FromXos(XosValuation::Additive({1, 2}));
  CHECK(IsSubadditive(additive));
  CHECK(IsSubmodular(additive));
  const TableValuation unit =
      TableValuation::FromXos(XosValuation::UnitDemand({1, 1}));
  CHECK(IsSubadditive(unit));
  CHECK(IsSubmodular(unit));
  const TableValuation complements(2, {0, 1, 1, 3});
  CHECK_FALSE(IsSubadditive(complements));
  CHECK_FALSE(IsSubmodular(complements));
}

TEST_CASE("lexicographic set order") {
  const std::vector<ItemSet> sets = LexicographicSets(3);
  CHECK(sets == std::vector<ItemSet>{0b001, 0b011, 0b111, 0b101, 0b010,
                                     0b110, 0b100});
  CHECK(SetToString(0b101) == "{0,2}");
}

TEST_CASE("simplex solves a small packing program") {
  lp::PackingLp problem;
  problem.a = {{1, 1}, {1, 0}};
  problem.b = {4, 3};
  problem.c = {1, 2};
  const lp::Solution s = lp::SolveSimplex(problem);
  CHECK(s.objective == doctest::Approx(8.0));
  CHECK(lp::SolveByVertices(problem).objective == doctest::Approx(8.0));
}

}  // namespace
}  // namespace bnlab
