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

#ifndef BNLAB_INSTANCE_HPP_
#define BNLAB_INSTANCE_HPP_

#include <memory>
#include <string>
#include <vector>

#include "bnlab/game.hpp"
#include "json.hpp"

namespace bnlab {

using Json = nlohmann::ordered_json;

// One game loaded from an instance document.
struct Instance {
  std::string name;
  std::unique_ptr<BayesianGame> game;
  // Normalization notes (e.g. renormalized probabilities).
  std::vector<std::string> warnings;
};

// Families: "explicit", "item-auction", "greedy-auction", "congestion",
// "effort". Throws InputError with a path into the document on schema or
// invariant violations.
Instance ParseInstance(const Json& document);
Instance LoadInstance(const std::string& path);

// Canonical document of a game built by ParseInstance (closed-form values
// appear as their breakpoints, grids as level lists).
Json SerializeInstance(const BayesianGame& game, const std::string& name = "");

// Base step of the epsilon ladder: the bid grid step for auctions, the
// effort step times the steepest marginal value for effort games, and 1% of
// the expected optimal welfare otherwise.
double FamilyEpsilonSlack(const BayesianGame& game);

// Reads a JSON file; throws InputError when it is missing or malformed.
Json ReadJsonFile(const std::string& path);

}  // namespace bnlab

#endif  // BNLAB_INSTANCE_HPP_
