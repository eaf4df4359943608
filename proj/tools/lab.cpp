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


// Batch harness: loads an instance, runs a pipeline, writes the report.

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "bnlab/common.hpp"
#include "bnlab/instance.hpp"
#include "bnlab/pipeline.hpp"

namespace {

using bnlab::Json;

struct Flags {
  std::string instance;
  std::string pipeline;
  std::optional<std::uint64_t> seed;
  int threads = 1;
  std::optional<double> epsilon;
  std::string out;
};

void WriteFile(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw bnlab::InputError(path.string(), "cannot open for writing");
  f << text;
}

int Run(const Flags& flags, const Json& run_spec) {
  const bnlab::Instance instance = bnlab::LoadInstance(flags.instance);
  bnlab::PipelineOptions options;
  options.seed = flags.seed;
  options.threads = flags.threads;
  options.epsilon = flags.epsilon;
  const bnlab::PipelineResult result =
      bnlab::RunPipeline(instance, run_spec, options);
  const std::string text = result.report.dump(2) + "\n";
  std::string out = flags.out;
  if (out.empty()) {
    if (const char* env = std::getenv("BNLAB_OUT_DIR")) out = env;
  }
  if (out.empty()) {
    std::cout << text;
    return result.exit_code;
  }
  const std::filesystem::path dir(out);
  std::filesystem::create_directories(dir);
  WriteFile(dir / "report.json", text);
  for (const auto& table : result.tables) {
    WriteFile(dir / table.name, table.content);
  }
  std::cerr << "wrote " << (dir / "report.json").string() << "\n";
  return result.exit_code;
}

void AddCommon(CLI::App* app, Flags* flags) {
  app->add_option("--instance", flags->instance, "Instance file")->required();
  app->add_option("--seed", flags->seed, "Seed for sampled checks");
  app->add_option("--threads", flags->threads, "Worker threads")
      ->check(CLI::PositiveNumber);
  app->add_option("--epsilon", flags->epsilon,
                  "Fixed epsilon instead of the ladder")
      ->check(CLI::NonNegativeNumber);
  app->add_option("--out", flags->out,
                  "Output directory (default: $BNLAB_OUT_DIR, else stdout)");
}

Json OneStep(Json step) {
  Json spec;
  spec["name"] = step["verb"];
  spec["steps"] = Json::array({std::move(step)});
  return spec;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Smoothness and Bayes-Nash price of anarchy lab"};
  app.require_subcommand(1);
  Flags flags;
  Json run_spec;

  auto* report = app.add_subcommand("report", "Run a pipeline file");
  AddCommon(report, &flags);
  report->add_option("--pipeline", flags.pipeline, "Run-spec file")
      ->required();

  auto* smooth = app.add_subcommand("smooth", "Smoothness certificates");
  smooth->require_subcommand(1);
  std::string variant;
  std::optional<double> lambda;
  std::optional<double> mu;
  std::string deviation;
  std::optional<std::string> slack;
  bool sampling = false;
  std::optional<std::int64_t> samples;
  auto* smooth_check = smooth->add_subcommand("check", "Check (lambda, mu)");
  auto* smooth_search = smooth->add_subcommand("search", "Search (lambda, mu)");
  for (auto* sub : {smooth_check, smooth_search}) {
    AddCommon(sub, &flags);
    sub->add_option("--variant", variant,
                    "plain, semi, relaxed, universal or universal-cost");
    sub->add_option("--deviation", deviation, "Deviation rule");
    sub->add_option("--slack", slack, "Additive slack or \"auto\"");
    sub->add_flag("--sampling", sampling, "Allow seeded sampling");
    sub->add_option("--samples", samples, "Sample count");
  }
  smooth_check->add_option("--lambda", lambda, "lambda")->required();
  smooth_check->add_option("--mu", mu, "mu")->required();

  auto* bne = app.add_subcommand("bne", "Pure Bayes-Nash equilibria");
  bne->require_subcommand(1);
  std::string strategy;
  int max_rounds = 100;
  auto* bne_check = bne->add_subcommand("check", "Regret of a strategy");
  auto* bne_enumerate = bne->add_subcommand("enumerate", "All pure eps-BNE");
  auto* bne_dynamics = bne->add_subcommand("dynamics", "Best responses");
  for (auto* sub : {bne_check, bne_enumerate, bne_dynamics}) {
    AddCommon(sub, &flags);
  }
  bne_check->add_option("--strategy", strategy, "Strategy JSON")->required();
  bne_dynamics->add_option("--start", strategy, "Start strategy JSON");
  bne_dynamics->add_option("--max-rounds", max_rounds, "Round limit");

  auto* poa = app.add_subcommand("poa", "Bayes-Nash price of anarchy");
  AddCommon(poa, &flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? bnlab::kExitOk : bnlab::kExitInputError;
  }

  try {
    Json step;
    auto smooth_step = [&](const char* verb) {
      step["verb"] = verb;
      if (!variant.empty()) step["variant"] = variant;
      if (lambda) step["lambda"] = *lambda;
      if (mu) step["mu"] = *mu;
      if (!deviation.empty()) step["deviation"] = deviation;
      if (slack) {
        if (*slack == "auto") {
          step["slack"] = "auto";
        } else {
          try {
            step["slack"] = std::stod(*slack);
          } catch (const std::exception&) {
            throw bnlab::InputError("--slack", "expected a number or auto");
          }
        }
      }
      if (sampling) step["sampling"] = true;
      if (samples) step["samples"] = *samples;
      step["csv"] = true;
    };
    auto parse_strategy = [&](const char* flag) {
      try {
        return Json::parse(strategy);
      } catch (const Json::parse_error& e) {
        throw bnlab::InputError(flag, e.what());
      }
    };
    if (report->parsed()) {
      run_spec = bnlab::ReadJsonFile(flags.pipeline);
    } else if (smooth_check->parsed()) {
      smooth_step("smooth-check");
      run_spec = OneStep(step);
    } else if (smooth_search->parsed()) {
      smooth_step("smooth-search");
      run_spec = OneStep(step);
    } else if (bne_check->parsed()) {
      step["verb"] = "bne-check";
      step["strategy"] = parse_strategy("--strategy");
      run_spec = OneStep(step);
    } else if (bne_enumerate->parsed()) {
      step["verb"] = "bne-enumerate";
      run_spec = OneStep(step);
    } else if (bne_dynamics->parsed()) {
      step["verb"] = "bne-dynamics";
      if (!strategy.empty()) step["start"] = parse_strategy("--start");
      step["max_rounds"] = max_rounds;
      run_spec = OneStep(step);
    } else {
      step["verb"] = "poa";
      run_spec = OneStep(step);
    }
    return Run(flags, run_spec);
  } catch (const bnlab::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return bnlab::kExitInputError;
  } catch (const bnlab::GuardExceededError& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return bnlab::kExitGuardRefusal;
  } catch (const bnlab::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return bnlab::kExitInputError;
  }
}
