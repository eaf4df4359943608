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


// Acceptance run: one PASS/FAIL line per criterion. argv[1] is the data
// directory, argv[2] the path of the lab executable.

#include <chrono>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "../unit/generators.hpp"
#include "bnlab/equilibrium.hpp"
#include "bnlab/instance.hpp"
#include "bnlab/pipeline.hpp"
#include "bnlab/smoothness.hpp"

namespace bnlab {
namespace {

using testing::Gen;

const double kE = std::exp(1.0);
const double kRandomLambda = 1.0 - 1.0 / kE;

struct Line {
  bool pass = true;
  std::string detail;
  double seconds = 0.0;
  double budget = 0.0;
  // False when the checks run inside the other criteria.
  bool timed = true;
};

// Running totals for the cross-cutting criterion.
struct CrossTally {
  std::int64_t domination_checked = 0;
  std::int64_t domination_violations = 0;
  std::int64_t misalignment_passed = 0;
  std::int64_t misalignment_failed = 0;
  std::int64_t misalignment_not_applicable = 0;
};

struct CorpusEntry {
  Json instance;
  Json pipeline;
};

CrossTally g_cross;
std::vector<CorpusEntry> g_corpus;

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double Seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

std::string Fmt(const char* format, double a, double b = 0.0, double c = 0.0,
                double d = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), format, a, b, c, d);
  return buf;
}

Json PipelineFile(const std::string& data, const std::string& name) {
  return ReadJsonFile(data + "/pipelines/" + name + ".json");
}

void Remember(const BayesianGame& game, const std::string& name, Json pipeline) {
  g_corpus.push_back({SerializeInstance(game, name), std::move(pipeline)});
}

struct EquilibriumStats {
  bool found = false;
  double epsilon = 0.0;
  std::int64_t count = 0;
  std::int64_t violations = 0;
  double worst_poa = 0.0;
};

// Enumerates on the family ladder; every passing certificate must dominate
// every equilibrium and misalignment must hold at each of them. `primary`
// indexes the certificate whose bound the criterion states.
EquilibriumStats CheckEquilibria(const BayesianGame& game,
                                 const std::vector<SmoothnessVerdict>& certs,
                                 int primary) {
  EquilibriumStats stats;
  const std::vector<double> ladder = EpsilonLadder(FamilyEpsilonSlack(game));
  const PoaResult r = BayesNashPoaOnLadder(game, ladder);
  if (!r.found) return stats;
  stats.found = true;
  stats.epsilon = r.epsilon;
  stats.worst_poa = r.poa;
  const int n = game.num_strategic_players();
  for (const auto& e : r.equilibria) {
    ++stats.count;
    for (std::size_t k = 0; k < certs.size(); ++k) {
      const SmoothnessVerdict& cert = certs[k];
      if (!cert.pass) continue;
      const double deficit =
          cert.variant == SmoothnessVariant::kRelaxed
              ? ExpectedIrDeficit(game, e.strategy, cert.subset)
              : 0.0;
      const DominationResult d = CheckDomination(
          cert, n, r.epsilon, e.welfare, r.optimal_welfare, deficit);
      if (!d.applicable) continue;
      ++g_cross.domination_checked;
      if (!d.pass) {
        ++g_cross.domination_violations;
        if (static_cast<int>(k) == primary) ++stats.violations;
      }
    }
    const MisalignmentVerdict m = CheckMisalignment(game, e.strategy, r.epsilon);
    if (!m.applicable) {
      ++g_cross.misalignment_not_applicable;
    } else if (m.pass) {
      ++g_cross.misalignment_passed;
    } else {
      ++g_cross.misalignment_failed;
    }
  }
  return stats;
}

// Shapes (bidders, items, types) with at most 3 bidders, 3 items, 2 types.
struct Shape {
  int bidders;
  int items;
  int types;
};

Line FirstPriceXos(const std::string& data) {
  Timer timer;
  Line line;
  line.budget = 120.0;
  const Shape shapes[] = {{2, 1, 2}, {2, 2, 1}, {2, 2, 2}, {3, 1, 2},
                          {3, 2, 1}, {2, 3, 1}, {3, 1, 1}};
  Gen g(1001);
  int instances = 0;
  int half_pass = 0;
  int random_pass = 0;
  int with_eq = 0;
  std::int64_t eqs = 0;
  std::int64_t violations = 0;
  double worst = 0.0;
  for (int k = 0; k < 21; ++k) {
    const Shape s = shapes[k % 7];
    const ItemAuction a =
        testing::RandomItemAuction(g, s.bidders, s.items, s.types, 0.25, 1.0);
    ++instances;
    const SmoothnessVerdict half =
        CheckFirstPriceSemiSmoothness(a, 0.5, AuctionDeviation::kHalfBid);
    const SmoothnessVerdict random =
        CheckFirstPriceSemiSmoothness(a, kRandomLambda, AuctionDeviation::kRandomized);
    half_pass += half.pass;
    random_pass += random.pass;
    const EquilibriumStats e = CheckEquilibria(a, {half, random}, 1);
    with_eq += e.found;
    eqs += e.count;
    violations += e.violations;
    if (e.found) worst = std::max(worst, e.worst_poa);
    Remember(a, "fp-xos-" + std::to_string(k), PipelineFile(data, "item_auction"));
  }
  line.pass = instances >= 20 && half_pass == instances &&
              random_pass == instances && violations == 0 && with_eq > 0;
  line.detail = Fmt("%.0f instances, half-bid %.0f pass, randomized %.0f pass", instances,
                    half_pass, random_pass) +
                Fmt(", %.0f with equilibria, %.0f equilibria, %.0f above e/(e-1)+slack",
                    with_eq, eqs, violations) +
                Fmt(", worst measured PoA %.4f", worst);
  line.seconds = timer.Seconds();
  return line;
}

Line BetaScaling(const std::string& data) {
  Timer timer;
  Line line;
  line.budget = 60.0;
  Gen g(2002);
  std::vector<TableValuation> tables;
  // Adversarial table: unit value up to pairs, double on the full set.
  tables.emplace_back(3, std::vector<double>{0, 0.5, 0.5, 0.5, 0.5, 0.5, 0.5, 1.0});
  int instances = 0;
  int cert_pass = 0;
  std::int64_t violations = 0;
  int with_eq = 0;
  double worst = 0.0;
  double beta_lo = kInfinity;
  double beta_hi = 0.0;
  for (int attempt = 0; attempt < 400 && instances < 6; ++attempt) {
    ItemAuctionSpec spec;
    spec.items = 3;
    spec.grid = BidGrid::Uniform(0.25, 0.75);
    double beta = 1.0;
    for (int i = 0; i < 2; ++i) {
      TableValuation v = instances == 0 && i == 0
                             ? tables[0]
                             : testing::RandomSubadditive(g, 3, 0.75);
      beta = std::max(beta, BetaFractionallySubadditive(v));
      spec.types.push_back(TypeDistribution::Singleton());
      spec.valuations.push_back({Valuation(std::move(v))});
    }
    if (!(beta > 1.0 + 1e-9 && beta <= 2.0)) continue;
    ++instances;
    beta_lo = std::min(beta_lo, beta);
    beta_hi = std::max(beta_hi, beta);
    const ItemAuction a(spec);
    const double lambda = kRandomLambda / beta;
    const SmoothnessVerdict v =
        CheckFirstPriceSemiSmoothness(a, lambda, AuctionDeviation::kRandomized);
    cert_pass += v.pass;
    const EquilibriumStats e = CheckEquilibria(a, {v}, 0);
    with_eq += e.found;
    violations += e.violations;
    if (e.found) worst = std::max(worst, e.worst_poa);
    Json pipeline = PipelineFile(data, "item_auction");
    pipeline["steps"][0]["lambda"] = 0.5 / beta;
    pipeline["steps"][1]["lambda"] = lambda;
    Remember(a, "fp-table-" + std::to_string(instances), pipeline);
  }
  line.pass = instances >= 5 && cert_pass == instances && violations == 0 && with_eq > 0;
  line.detail = Fmt("%.0f table instances, beta in [%.4f, %.4f], %.0f certificates pass",
                    instances, beta_lo, beta_hi, cert_pass) +
                Fmt(", %.0f with equilibria, %.0f above e/(e-1)*beta+slack, worst PoA %.4f",
                    with_eq, violations, worst);
  line.seconds = timer.Seconds();
  return line;
}

Line CompleteInformationOptimality() {
  Timer timer;
  Line line;
  line.budget = 60.0;
  int instances = 0;
  int with_eq = 0;
  std::int64_t eqs = 0;
  std::int64_t below = 0;
  double worst_gap = 0.0;
  for (const CorpusEntry& entry : g_corpus) {
    const Instance inst = ParseInstance(entry.instance);
    const auto* a = dynamic_cast<const ItemAuction*>(inst.game.get());
    if (!a || a->pricing() != Pricing::kFirstPrice) continue;
    bool complete = true;
    for (PlayerId i = 0; i < a->num_players(); ++i) {
      complete = complete && a->num_types(i) == 1;
    }
    if (!complete) continue;
    ++instances;
    const std::vector<TypeId> t(a->num_players(), 0);
    const double optimum = OptimalWelfare(*a, t);
    const double allowance = a->num_bidders() * a->grid().step();
    const auto found = EnumeratePureBne(*a);
    with_eq += !found.empty();
    for (const auto& e : found) {
      ++eqs;
      const double gap = optimum - ExpectedWelfare(*a, e.strategy);
      worst_gap = std::max(worst_gap, gap);
      if (gap > allowance + kNumericTolerance) ++below;
    }
  }
  line.pass = instances > 0 && with_eq > 0 && below == 0;
  line.detail = Fmt("%.0f complete-information instances, %.0f with exact equilibria, "
                    "%.0f equilibria, %.0f below optimum - n*step",
                    instances, with_eq, eqs, below) +
                Fmt(", largest welfare gap %.4f", worst_gap);
  line.seconds = timer.Seconds();
  return line;
}

Line Greedy(const std::string& data) {
  Timer timer;
  Line line;
  line.budget = 180.0;
  Gen g(4004);
  int instances = 0;
  int fact_pass = 0;
  int smooth_pass = 0;
  int with_eq = 0;
  std::int64_t violations = 0;
  double c_lo = kInfinity;
  double c_hi = 0.0;
  double worst = 0.0;
  for (int k = 0; k < 12; ++k) {
    const Priority priority = k % 2 == 0 ? Priority::kValue : Priority::kValuePerItem;
    const bool bayesian = k % 4 >= 2;
    const GreedyAuction a =
        bayesian ? testing::RandomGreedyAuction(g, 3, 2, priority, 1.0, 2.0, 2)
                 : testing::RandomGreedyAuction(g, 3, 2, priority, 0.5, 2.0, 1);
    ++instances;
    const double c = ApproximationFactor(a.mechanism());
    c_lo = std::min(c_lo, c);
    c_hi = std::max(c_hi, c);
    fact_pass += CheckPaymentFactAll(a.mechanism(), c).pass;
    const SmoothnessVerdict v = CheckGreedySmoothness(a, c);
    smooth_pass += v.pass;
    const EquilibriumStats e = CheckEquilibria(a, {v}, 0);
    with_eq += e.found;
    violations += e.violations;
    if (e.found) worst = std::max(worst, e.worst_poa / c);
    Remember(a, "greedy-" + std::to_string(k), PipelineFile(data, "greedy_auction"));
  }
  line.pass = instances >= 10 && fact_pass == instances && smooth_pass == instances &&
              violations == 0 && with_eq > 0;
  line.detail = Fmt("%.0f instances, c in [%.3f, %.3f], payment fact %.0f pass", instances,
                    c_lo, c_hi, fact_pass) +
                Fmt(", smoothness (1/2, c-1) %.0f pass, %.0f with equilibria, "
                    "%.0f above 2c+slack",
                    smooth_pass, with_eq, violations) +
                Fmt(", worst PoA/c %.4f", worst);
  line.seconds = timer.Seconds();
  return line;
}

// Affine delays, every player choosing among two or three short paths so
// that routes overlap.
CongestionGame OverlappingCongestion(Gen& g, int players, int edges,
                                     int weight_types) {
  CongestionSpec spec;
  for (int e = 0; e < edges; ++e) {
    spec.edges.emplace_back(std::vector<double>{g.Coin() ? 0.0 : g.Int(1, 2) * 1.0,
                                                g.Int(1, 3) * 1.0});
  }
  for (int i = 0; i < players; ++i) {
    std::vector<std::vector<int>> paths;
    const int count = g.Int(2, 3);
    for (int attempt = 0; attempt < 20 && static_cast<int>(paths.size()) < count;
         ++attempt) {
      std::vector<int> path{g.Int(0, edges - 1)};
      if (g.Coin()) {
        const int other = g.Int(0, edges - 1);
        if (other != path[0]) path.push_back(other);
        std::sort(path.begin(), path.end());
      }
      if (std::find(paths.begin(), paths.end(), path) == paths.end()) {
        paths.push_back(path);
      }
    }
    spec.paths.push_back(paths);
    spec.types.push_back(testing::RandomTypes(g, weight_types, "w"));
    std::vector<double> w;
    for (int t = 0; t < weight_types; ++t) w.push_back(t + 1);
    spec.weights.push_back(w);
  }
  return CongestionGame(spec);
}

Line Congestion(const std::string& data) {
  Timer timer;
  Line line;
  line.budget = 120.0;
  const std::vector<int> linear{1};
  const DelayParameters best = BestDelayParameters(linear);
  const double golden = (3.0 + std::sqrt(5.0)) / 2.0;
  const bool bound_ok = best.bounded && std::abs(best.bound - golden) <= 1e-3;
  Gen g(5005);
  int instances = 0;
  int cert_pass = 0;
  int with_eq = 0;
  std::int64_t violations = 0;
  std::int64_t above_literal = 0;
  double worst = 0.0;
  for (int k = 0; k < 12; ++k) {
    const int players = 2 + k % 2;
    const int edges = 3 + (k / 2) % 2;
    const CongestionGame game =
        OverlappingCongestion(g, players, edges, 1 + (k / 4) % 2);
    ++instances;
    const SmoothnessVerdict v =
        CheckUniversalSmoothnessCongestion(game, best.lambda, best.mu);
    cert_pass += v.pass;
    const EquilibriumStats e = CheckEquilibria(game, {v}, 0);
    with_eq += e.found;
    violations += e.violations;
    if (e.found) {
      worst = std::max(worst, e.worst_poa);
      const std::vector<double> ladder = EpsilonLadder(FamilyEpsilonSlack(game));
      const PoaResult r = BayesNashPoaOnLadder(game, ladder);
      const double allowance =
          game.num_strategic_players() * r.epsilon / (1.0 - best.mu);
      for (const auto& eq : r.equilibria) {
        if (eq.welfare > 2.619 * r.optimal_welfare + allowance + 1e-9) ++above_literal;
      }
    }
    Remember(game, "congestion-" + std::to_string(k), PipelineFile(data, "congestion"));
  }
  line.pass = bound_ok && instances >= 10 && cert_pass == instances && violations == 0 &&
              above_literal == 0 && with_eq > 0;
  line.detail = Fmt("bound %.6f (lambda %.4f, mu %.4f)", best.bound, best.lambda, best.mu) +
                Fmt(", %.0f instances, %.0f certificates pass, %.0f with equilibria",
                    instances, cert_pass, with_eq) +
                Fmt(", %.0f above 2.619*opt+slack, worst PoA %.4f",
                    static_cast<double>(violations + above_literal), worst);
  line.seconds = timer.Seconds();
  return line;
}

Line Effort(const std::string& data) {
  Timer timer;
  Line line;
  line.budget = 120.0;
  Gen g(6006);
  int instances = 0;
  int cert_pass = 0;
  int with_eq = 0;
  std::int64_t violations = 0;
  std::int64_t profiles = 0;
  std::int64_t unconserved = 0;
  double worst = 0.0;
  for (int k = 0; k < 12; ++k) {
    const int players = 2 + k % 2;
    const int projects = 1 + (k / 2) % 2;
    const int types = players == 3 ? 1 + (k / 4) % 2 : 2;
    const double delta = players == 3 && types == 2 ? 0.5 : 0.25;
    const EffortGame game = testing::RandomEffort(g, players, projects, types, delta);
    ++instances;
    CheckOptions options;
    options.allow_sampling = true;
    options.samples = 10'000;
    options.seed = k;
    const SmoothnessVerdict v = CheckUniversal11Smoothness(game, options);
    cert_pass += v.pass;
    const EquilibriumStats e = CheckEquilibria(game, {v}, 0);
    with_eq += e.found;
    violations += e.violations;
    if (e.found) worst = std::max(worst, e.worst_poa);
    std::vector<int> radices;
    for (PlayerId i = 0; i < game.num_players(); ++i) {
      radices.push_back(game.num_actions(i));
    }
    MixedRadixCounter c(radices);
    do {
      ++profiles;
      if (!SharesConserved(game, c.digits())) ++unconserved;
    } while (c.Next());
    Remember(game, "effort-" + std::to_string(k), PipelineFile(data, "effort"));
  }
  line.pass = instances >= 10 && cert_pass == instances && violations == 0 &&
              unconserved == 0 && with_eq > 0;
  line.detail = Fmt("%.0f instances, %.0f certificates pass, %.0f with equilibria, "
                    "%.0f above 2+slack",
                    instances, cert_pass, with_eq, violations) +
                Fmt(", worst PoA %.4f, shares exact on %.0f of %.0f profiles", worst,
                    profiles - unconserved, profiles);
  line.seconds = timer.Seconds();
  return line;
}

// Summed over the report steps of one pipeline run.
void TallyReport(const Json& report, CrossTally* t) {
  for (const Json& step : report["steps"]) {
    const std::string verb = step.value("verb", "");
    if (verb == "poa" && step.contains("domination")) {
      for (const Json& d : step["domination"]) {
        t->domination_checked += d["checked"].get<std::int64_t>();
        t->domination_violations += d["violations"].get<std::int64_t>();
      }
    } else if (verb == "misalignment") {
      t->misalignment_passed += step.value("passed", std::int64_t{0});
      t->misalignment_failed += step.value("failed", std::int64_t{0});
      t->misalignment_not_applicable += step.value("not_applicable", std::int64_t{0});
    }
  }
}

std::string Slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

// Runs the lab executable twice per bundled pair and compares every output
// file byte for byte; the generated corpus runs through RunPipeline.
Line Determinism(const std::string& data, const std::string& lab,
                 CrossTally* pipeline_tally) {
  Timer timer;
  Line line;
  line.budget = 0.0;
  namespace fs = std::filesystem;
  const fs::path scratch = fs::temp_directory_path() /
                           ("bnlab_acceptance_" + std::to_string(::getpid()));
  const char* const bundled[][2] = {
      {"explicit_coordination", "explicit"}, {"item_auction_xos", "item_auction"},
      {"greedy_auction", "greedy_auction"},  {"congestion_linear", "congestion"},
      {"effort_capped", "effort"}};
  int runs = 0;
  int identical = 0;
  int cli_errors = 0;
  for (const auto& pair : bundled) {
    std::vector<std::string> outputs;
    std::vector<fs::path> dirs;
    for (int threads : {1, 8}) {
      const fs::path dir = scratch / (std::string(pair[0]) + "_" + std::to_string(threads));
      fs::create_directories(dir);
      const std::string cmd = "\"" + lab + "\" report --instance \"" + data +
                              "/instances/" + pair[0] + ".json\" --pipeline \"" + data +
                              "/pipelines/" + pair[1] + ".json\" --threads " +
                              std::to_string(threads) + " --out \"" + dir.string() +
                              "\" > /dev/null 2>&1";
      if (std::system(cmd.c_str()) != 0) ++cli_errors;
      dirs.push_back(dir);
    }
    std::vector<std::string> names;
    for (const auto& f : fs::directory_iterator(dirs[0])) {
      names.push_back(f.path().filename().string());
    }
    bool same = !names.empty();
    std::size_t other = 0;
    for (const auto& f : fs::directory_iterator(dirs[1])) {
      (void)f;
      ++other;
    }
    same = same && other == names.size();
    for (const auto& name : names) {
      same = same && Slurp(dirs[0] / name) == Slurp(dirs[1] / name);
    }
    ++runs;
    identical += same;
    TallyReport(ReadJsonFile((dirs[0] / "report.json").string()), pipeline_tally);
  }
  fs::remove_all(scratch);
  for (const CorpusEntry& entry : g_corpus) {
    const Instance inst = ParseInstance(entry.instance);
    PipelineOptions one;
    PipelineOptions eight;
    eight.threads = 8;
    const PipelineResult a = RunPipeline(inst, entry.pipeline, one);
    const PipelineResult b = RunPipeline(inst, entry.pipeline, eight);
    bool same = a.report.dump() == b.report.dump() && a.exit_code == b.exit_code &&
                a.tables.size() == b.tables.size();
    for (std::size_t k = 0; same && k < a.tables.size(); ++k) {
      same = a.tables[k].content == b.tables[k].content;
    }
    ++runs;
    identical += same;
    TallyReport(a.report, pipeline_tally);
  }
  line.pass = cli_errors == 0 && identical == runs;
  line.detail = Fmt("%.0f of %.0f pipeline runs byte-identical at 1 and 8 threads "
                    "(%.0f through the CLI, %.0f CLI errors)",
                    identical, runs, 5, cli_errors);
  line.seconds = timer.Seconds();
  return line;
}

Line CrossCutting(const CrossTally& library, const CrossTally& pipeline) {
  Line line;
  const std::int64_t checked = library.domination_checked + pipeline.domination_checked;
  const std::int64_t violations =
      library.domination_violations + pipeline.domination_violations;
  const std::int64_t passed = library.misalignment_passed + pipeline.misalignment_passed;
  const std::int64_t failed = library.misalignment_failed + pipeline.misalignment_failed;
  const std::int64_t skipped =
      library.misalignment_not_applicable + pipeline.misalignment_not_applicable;
  line.pass = checked > 0 && violations == 0 && passed > 0 && failed == 0;
  line.detail = Fmt("domination %.0f checked, %.0f violations; misalignment %.0f pass, "
                    "%.0f fail",
                    checked, violations, passed, failed) +
                Fmt(", %.0f not applicable", skipped);
  line.timed = false;
  return line;
}

Line OracleEquivalence() {
  Timer timer;
  Line line;
  line.budget = 120.0;
  int mc_pairs = 0;
  int mc_within = 0;
  double worst_sigma = 0.0;
  for (int k = 0; k < 50; ++k) {
    CounterRng setup(8008, k);
    const double a = 0.5 + 2.5 * setup.Uniform();
    const double p = a * setup.Uniform();
    CounterRng draw(8009, k);
    constexpr int kSamples = 1'000'000;
    double sum = 0.0;
    double sum_sq = 0.0;
    for (int s = 0; s < kSamples; ++s) {
      // Inverse CDF of density 1/(a - x) on [0, a (1 - 1/e)].
      const double x = a * (1.0 - std::exp(-draw.Uniform()));
      const double u = x > p ? a - x : 0.0;
      sum += u;
      sum_sq += u * u;
    }
    const double mean = sum / kSamples;
    const double var = std::max(0.0, sum_sq / kSamples - mean * mean);
    const double se = std::sqrt(var / kSamples);
    const double closed = RandomizedBidUtility(a, p);
    const double gap = std::abs(mean - closed);
    ++mc_pairs;
    if (gap <= 3.0 * se + 1e-12) ++mc_within;
    if (se > 0.0) worst_sigma = std::max(worst_sigma, gap / se);
  }
  Gen g(8010);
  int xos_tables = 0;
  int xos_exact = 0;
  for (int k = 0; k < 20; ++k) {
    const int items = 2 + k % 3;
    const XosValuation x = testing::RandomXos(g, items, g.Int(1, 3), 0.25, 2.0);
    std::vector<double> values(FullSet(items) + 1);
    for (ItemSet s = 0; s <= FullSet(items); ++s) values[s] = x.Value(s);
    const double beta = BetaFractionallySubadditive(TableValuation(items, values));
    ++xos_tables;
    if (std::abs(beta - 1.0) <= 1e-9) ++xos_exact;
  }
  int sub_tables = 0;
  int sub_within = 0;
  double sub_max = 0.0;
  for (int k = 0; k < 50; ++k) {
    const double beta = BetaFractionallySubadditive(testing::RandomSubadditive(g, 4));
    ++sub_tables;
    sub_max = std::max(sub_max, beta);
    if (beta <= std::log(4.0) + 1e-9) ++sub_within;
  }
  line.pass = mc_within == mc_pairs && xos_exact == xos_tables && sub_within == sub_tables;
  line.detail = Fmt("Monte Carlo within 3 sigma on %.0f of %.0f pairs (max %.2f sigma)",
                    mc_within, mc_pairs, worst_sigma) +
                Fmt(", beta = 1 on %.0f of %.0f XOS tables", xos_exact, xos_tables) +
                Fmt(", subadditive m=4 beta <= ln 4 on %.0f of %.0f (max %.4f)",
                    sub_within, sub_tables, sub_max);
  line.seconds = timer.Seconds();
  return line;
}

int Run(const std::string& data, const std::string& lab) {
  std::vector<std::pair<std::string, Line>> lines;
  lines.emplace_back("first-price XOS semi-smoothness and PoA", FirstPriceXos(data));
  lines.emplace_back("beta-scaled certificates on subadditive tables", BetaScaling(data));
  lines.emplace_back("complete-information first-price optimality",
                     CompleteInformationOptimality());
  lines.emplace_back("greedy payment fact, smoothness and PoA", Greedy(data));
  lines.emplace_back("congestion with linear delays", Congestion(data));
  lines.emplace_back("effort markets", Effort(data));
  const CrossTally library = g_cross;
  const Line oracles = OracleEquivalence();
  CrossTally pipeline;
  const Line determinism = Determinism(data, lab, &pipeline);
  lines.emplace_back("certificate domination and misalignment",
                     CrossCutting(library, pipeline));
  lines.emplace_back("oracle equivalence", oracles);
  lines.emplace_back("determinism across thread counts", determinism);
  int failures = 0;
  for (std::size_t k = 0; k < lines.size(); ++k) {
    Line& l = lines[k].second;
    const bool in_time = l.budget <= 0.0 || l.seconds <= l.budget;
    const bool pass = l.pass && in_time;
    failures += !pass;
    std::printf("[%s] criterion %zu: %s: %s", pass ? "PASS" : "FAIL", k + 1,
                lines[k].first.c_str(), l.detail.c_str());
    if (l.timed) {
      std::printf(" (%.1fs%s)", l.seconds, in_time ? "" : ", over time budget");
    }
    std::printf("\n");
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(lines.size()) - failures,
              lines.size());
  return failures == 0 ? 0 : 1;
}

}  // namespace
}  // namespace bnlab

int main(int argc, char** argv) {
  if (argc != 3) {
    std::fprintf(stderr, "usage: %s DATA_DIR LAB_EXECUTABLE\n", argv[0]);
    return 2;
  }
  try {
    return bnlab::Run(argv[1], argv[2]);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "acceptance run aborted: %s\n", e.what());
    return 1;
  }
}
