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

#ifndef BNLAB_PIPELINE_HPP_
#define BNLAB_PIPELINE_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bnlab/equilibrium.hpp"
#include "bnlab/instance.hpp"
#include "bnlab/smoothness.hpp"

namespace bnlab {

inline constexpr int kReportSchemaVersion = 1;

// Process exit codes of the harness.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCertificateFailure = 1;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitGuardRefusal = 3;

struct PipelineOptions {
  // Overrides the run spec's seed when set.
  std::optional<std::uint64_t> seed;
  int threads = 1;
  // Fixed epsilon for equilibrium steps instead of the ladder.
  std::optional<double> epsilon;
};

struct CsvTable {
  std::string name;
  std::string content;
};

struct PipelineResult {
  Json report;
  int exit_code = kExitOk;
  std::vector<CsvTable> tables;
};

// Runs the run spec's "steps" in order. Verbs: smooth-check, smooth-search,
// fp-semi-smoothness, greedy-smoothness, payment-fact, congestion-smoothness,
// effort-smoothness, shares, bne-check, bne-enumerate, bne-dynamics, poa,
// misalignment. Input errors inside a step throw InputError; a guard refusal
// stops the pipeline with a structured refusal entry and exit code 3.
PipelineResult RunPipeline(const Instance& instance, const Json& run_spec,
                           const PipelineOptions& options = {});

// JSON number, or "inf"/"-inf"/"nan" for non-finite values.
Json NumberJson(double x);
Json VerdictJson(const BayesianGame& game, const SmoothnessVerdict& verdict);
Json StrategyJson(const BayesianGame& game, const StrategyProfile& s);
// Parses [[action per type] per player]; action ids or labels.
StrategyProfile ParseStrategy(const BayesianGame& game, const Json& value);

}  // namespace bnlab

#endif  // BNLAB_PIPELINE_HPP_
