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

#ifndef BNLAB_COMMON_HPP_
#define BNLAB_COMMON_HPP_

#include <cstdint>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>

namespace bnlab {

using PlayerId = int;
using TypeId = int;
using ActionId = int;

enum class Objective { kUtility, kCost };

inline const char* ObjectiveName(Objective objective) {
  return objective == Objective::kUtility ? "utility" : "cost";
}

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Absolute tolerance used when comparing sums of utilities that are
// mathematically equal but accumulated in different orders.
inline constexpr double kNumericTolerance = 1e-9;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An action profile that is not in A(t) for the given type profile.
class InvalidProfileError : public Error {
 public:
  using Error::Error;
};

// A single action that violates a family constraint (wrong rate, budget).
class InvalidActionError : public Error {
 public:
  using Error::Error;
};

// Malformed or inconsistent input. `where` is a JSON-pointer-like path into
// the offending document, empty when not applicable.
class InputError : public Error {
 public:
  InputError(std::string where, const std::string& message)
      : Error(where.empty() ? message : where + ": " + message),
        where_(std::move(where)) {}
  explicit InputError(const std::string& message) : InputError("", message) {}

  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

// An enumeration whose size exceeds the configured limit.
class GuardExceededError : public Error {
 public:
  GuardExceededError(const std::string& what, double size, double limit)
      : Error(what + ": search space " + FormatSize(size) +
              " exceeds limit " + FormatSize(limit)),
        size_(size),
        limit_(limit) {}

  double size() const { return size_; }
  double limit() const { return limit_; }

 private:
  static std::string FormatSize(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", x);
    return buf;
  }

  double size_;
  double limit_;
};

}  // namespace bnlab

#endif  // BNLAB_COMMON_HPP_
