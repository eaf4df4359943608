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

#ifndef BNLAB_VALUATIONS_HPP_
#define BNLAB_VALUATIONS_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace bnlab {

// Bundle of items as a bitmask; item j is bit j.
using ItemSet = std::uint32_t;

inline constexpr int kMaxItems = 16;

inline int SetSize(ItemSet s) { return __builtin_popcount(s); }
inline bool Contains(ItemSet s, int item) { return (s >> item) & 1U; }
inline ItemSet FullSet(int items) { return (ItemSet{1} << items) - 1; }
inline bool IsSubset(ItemSet small, ItemSet big) { return (small & ~big) == 0; }

// Nonempty subsets of [items] ordered lexicographically by their sorted item
// sequence: {0} < {0,1} < {0,1,2} < {0,2} < {1} < ...
std::vector<ItemSet> LexicographicSets(int items);
// Rank of every set (index = bitmask) in the order above; the empty set
// ranks first.
std::vector<int> LexicographicRanks(int items);
// "{0,2}".
std::string SetToString(ItemSet s);

// Fractionally subadditive valuation: v(S) = max over clauses of the clause
// sum on S.
class XosValuation {
 public:
  XosValuation(int items, std::vector<std::vector<double>> clauses);

  static XosValuation Additive(std::vector<double> values);
  static XosValuation UnitDemand(const std::vector<double>& values);

  int items() const { return items_; }
  const std::vector<std::vector<double>>& clauses() const { return clauses_; }

  double Value(ItemSet s) const;
  // Lowest-index clause attaining Value(s).
  int SupportingClause(ItemSet s) const;
  // That clause with entries outside s zeroed: sums to v(s) on s and is
  // dominated by v on every subset of s.
  std::vector<double> SupportingAdditive(ItemSet s) const;

 private:
  int items_;
  std::vector<std::vector<double>> clauses_;
};

// Explicit value for each of the 2^m bundles, indexed by bitmask.
class TableValuation {
 public:
  TableValuation(int items, std::vector<double> values);

  static TableValuation FromXos(const XosValuation& xos);

  int items() const { return items_; }
  double Value(ItemSet s) const { return values_[s]; }
  const std::vector<double>& values() const { return values_; }

 private:
  int items_;
  std::vector<double> values_;
};

bool IsSubadditive(const TableValuation& v);
bool IsSubmodular(const TableValuation& v);

enum class LpMethod { kAuto, kVertices, kSimplex };

struct AdditiveSupport {
  double covered = 0.0;         // a*(S)
  std::vector<double> additive; // a*, zero outside S
};

// max a(S) subject to a(T) <= v(T) for every nonempty T within S, a >= 0.
// kAuto uses vertex enumeration up to four items and the simplex beyond.
AdditiveSupport MaxSupportingAdditive(const TableValuation& v, ItemSet s,
                                      LpMethod method = LpMethod::kAuto);

// Smallest beta >= 1 such that every bundle has an additive vector covering
// v(S)/beta and dominated by v below S. Returns infinity when some v(S) > 0
// admits no positive cover.
double BetaFractionallySubadditive(const TableValuation& v,
                                   LpMethod method = LpMethod::kAuto);

// Either representation, as stored inside auction instances.
class Valuation {
 public:
  Valuation(XosValuation xos) : rep_(std::move(xos)) {}      // NOLINT
  Valuation(TableValuation table) : rep_(std::move(table)) {}  // NOLINT

  int items() const;
  double Value(ItemSet s) const;
  // Additive vector used by the auction deviations: the supporting clause
  // for XOS, the LP optimum for tables.
  std::vector<double> SupportingVector(ItemSet s) const;
  TableValuation ToTable() const;

  bool is_xos() const { return std::holds_alternative<XosValuation>(rep_); }
  const XosValuation& xos() const { return std::get<XosValuation>(rep_); }
  const TableValuation& table() const { return std::get<TableValuation>(rep_); }

 private:
  std::variant<XosValuation, TableValuation> rep_;
};

}  // namespace bnlab

#endif  // BNLAB_VALUATIONS_HPP_
