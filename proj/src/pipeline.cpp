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

#include "bnlab/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <sstream>

#include "bnlab/congestion.hpp"
#include "bnlab/effort.hpp"
#include "bnlab/greedy_auction.hpp"
#include "bnlab/item_auction.hpp"
#include "bnlab/rng.hpp"

namespace bnlab {
namespace {

constexpr int kMaxListedEquilibria = 100;
constexpr std::int64_t kMaxShareProfiles = 100'000;

std::string FormatCsvNumber(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string CsvField(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

// Typed access to one step's parameters with error paths.
class Params {
 public:
  Params(const Json& step, std::string path)
      : step_(step), path_(std::move(path)) {}

  const std::string& path() const { return path_; }
  bool Has(const std::string& key) const { return step_.contains(key); }
  const Json& Raw(const std::string& key) const { return step_.at(key); }

  [[noreturn]] void Fail(const std::string& key, const std::string& msg) const {
    throw InputError(path_ + "/" + key, msg);
  }

  double Number(const std::string& key, double fallback) const {
    if (!Has(key)) return fallback;
    const Json& v = step_.at(key);
    if (!v.is_number()) Fail(key, "expected a number");
    return v.get<double>();
  }
  std::int64_t Integer(const std::string& key, std::int64_t fallback) const {
    if (!Has(key)) return fallback;
    const Json& v = step_.at(key);
    if (!v.is_number_integer()) Fail(key, "expected an integer");
    return v.get<std::int64_t>();
  }
  bool Bool(const std::string& key, bool fallback) const {
    if (!Has(key)) return fallback;
    const Json& v = step_.at(key);
    if (!v.is_boolean()) Fail(key, "expected a boolean");
    return v.get<bool>();
  }
  std::string String(const std::string& key, const std::string& fallback) const {
    if (!Has(key)) return fallback;
    const Json& v = step_.at(key);
    if (!v.is_string()) Fail(key, "expected a string");
    return v.get<std::string>();
  }
  // A number, or "auto" (returns nullopt).
  std::optional<double> NumberOrAuto(const std::string& key) const {
    if (!Has(key)) return std::nullopt;
    const Json& v = step_.at(key);
    if (v.is_string() && v.get<std::string>() == "auto") return std::nullopt;
    if (!v.is_number()) Fail(key, "expected a number or \"auto\"");
    return v.get<double>();
  }

 private:
  const Json& step_;
  std::string path_;
};

struct Certificate {
  int step = 0;
  SmoothnessVerdict verdict;
};

struct Context {
  const Instance& instance;
  const BayesianGame& game;
  std::uint64_t seed = 0;
  int threads = 1;
  std::optional<double> epsilon = std::nullopt;
  std::vector<Certificate> certificates = {};
  bool have_equilibria = false;
  double equilibria_epsilon = 0.0;
  std::vector<Equilibrium> equilibria = {};
  bool failed = false;
  std::vector<CsvTable> tables = {};
};

std::string ProfileLabel(const BayesianGame& game,
                         std::span<const ActionId> profile) {
  std::string out;
  for (std::size_t i = 0; i < profile.size(); ++i) {
    out += (i ? " " : "") +
           game.action_label(static_cast<PlayerId>(i), profile[i]);
  }
  return out;
}

Json ProfileJson(const BayesianGame& game, std::span<const ActionId> profile) {
  Json j = Json::array();
  for (std::size_t i = 0; i < profile.size(); ++i) {
    j.push_back(game.action_label(static_cast<PlayerId>(i), profile[i]));
  }
  return j;
}

Json TypesJson(const BayesianGame& game, std::span<const TypeId> types) {
  Json j = Json::array();
  for (std::size_t i = 0; i < types.size(); ++i) {
    j.push_back(game.type_distribution(static_cast<PlayerId>(i)).label(types[i]));
  }
  return j;
}

CheckOptions ReadCheckOptions(const Params& p, const Context& ctx) {
  CheckOptions o;
  o.threads = ctx.threads;
  o.seed = ctx.seed;
  o.tolerance = p.Number("tolerance", o.tolerance);
  o.max_tuples = p.Integer("max_tuples", o.max_tuples);
  o.allow_sampling = p.Bool("sampling", o.allow_sampling);
  o.samples = p.Integer("samples", o.samples);
  return o;
}

std::unique_ptr<Deviation> MakeDeviation(const Context& ctx,
                                         const std::string& name,
                                         const Params& p) {
  if (name == "optimal") return MakeOptimalProfileDeviation();
  if (auto* a = dynamic_cast<const ItemAuction*>(&ctx.game)) {
    if (name == "half-bid") return MakeHalfBidDeviation(*a);
    if (name == "randomized") return MakeRandomizedDeviation(*a);
  }
  if (auto* g = dynamic_cast<const GreedyAuction*>(&ctx.game)) {
    if (name == "single-minded-half") return MakeSingleMindedHalfDeviation(*g);
    if (name == "randomized-greedy") return MakeRandomizedGreedyDeviation(*g);
  }
  p.Fail("deviation", "deviation '" + name + "' is not available for family '" +
                          ctx.game.family() + "'");
}

std::string DefaultDeviation(const BayesianGame& game) {
  if (dynamic_cast<const ItemAuction*>(&game)) return "half-bid";
  if (dynamic_cast<const GreedyAuction*>(&game)) return "single-minded-half";
  return "optimal";
}

// The discretization slack that goes with a family deviation.
double DefaultSlack(const BayesianGame& game, const std::string& deviation) {
  if (auto* a = dynamic_cast<const ItemAuction*>(&game)) {
    if (deviation == "half-bid" || deviation == "randomized") {
      return AuctionSlack(*a);
    }
  }
  if (auto* g = dynamic_cast<const GreedyAuction*>(&game)) {
    if (deviation == "single-minded-half" || deviation == "randomized-greedy") {
      return GreedySlack(*g);
    }
  }
  return 0.0;
}

std::vector<PlayerId> ReadSubset(const Params& p, const BayesianGame& game) {
  std::vector<PlayerId> subset;
  if (p.Has("subset")) {
    const Json& v = p.Raw("subset");
    if (!v.is_array()) p.Fail("subset", "expected an array of players");
    for (const Json& x : v) {
      if (!x.is_number_integer()) p.Fail("subset", "expected player indices");
      const int i = x.get<int>();
      if (i < 0 || i >= game.num_players()) p.Fail("subset", "unknown player");
      subset.push_back(i);
    }
    return subset;
  }
  if (auto* a = dynamic_cast<const ItemAuction*>(&game)) return {a->seller()};
  if (auto* g = dynamic_cast<const GreedyAuction*>(&game)) return {g->seller()};
  return subset;
}

TupleSink MakeTupleSink(const BayesianGame& game, std::string* csv) {
  *csv = "index,types,deviation_types,profile,deviation_profile,lhs,target,"
         "current,margin\n";
  auto counter = std::make_shared<std::int64_t>(0);
  return [&game, csv, counter](const SmoothnessTuple& t, double margin) {
    std::string types;
    for (std::size_t i = 0; i < t.types.size(); ++i) {
      types += (i ? " " : "") +
               game.type_distribution(static_cast<PlayerId>(i)).label(t.types[i]);
    }
    std::string dev_types;
    for (std::size_t i = 0; i < t.deviation_types.size(); ++i) {
      dev_types += (i ? " " : "") +
                   game.type_distribution(static_cast<PlayerId>(i))
                       .label(t.deviation_types[i]);
    }
    *csv += std::to_string((*counter)++) + "," + CsvField(types) + "," +
            CsvField(dev_types) + "," + CsvField(ProfileLabel(game, t.profile)) +
            "," + CsvField(ProfileLabel(game, t.deviation_profile)) + "," +
            FormatCsvNumber(t.lhs) + "," + FormatCsvNumber(t.target) + "," +
            FormatCsvNumber(t.current) + "," + FormatCsvNumber(margin) + "\n";
  };
}

void AddCertificate(Context* ctx, int step, const SmoothnessVerdict& v,
                    Json* out) {
  if (v.pass) {
    ctx->certificates.push_back({step, v});
  } else {
    ctx->failed = true;
  }
  (*out)["status"] = v.pass ? "pass" : "fail";
}

std::vector<double> ReadLadder(const Params& p, const Context& ctx) {
  if (ctx.epsilon) return {*ctx.epsilon};
  if (p.Has("epsilon") && p.Raw("epsilon").is_number()) {
    const double e = p.Number("epsilon", 0.0);
    if (e < 0.0) p.Fail("epsilon", "epsilon must be nonnegative");
    return {e};
  }
  if (p.Has("epsilon") && p.String("epsilon", "") != "ladder") {
    p.Fail("epsilon", "expected a number or \"ladder\"");
  }
  const double slack = p.Number("ladder_step", FamilyEpsilonSlack(ctx.game));
  return EpsilonLadder(slack, static_cast<int>(p.Integer("ladder_steps", 4)));
}

EnumerateOptions ReadEnumerateOptions(const Params& p, const Context& ctx) {
  EnumerateOptions o;
  o.threads = ctx.threads;
  o.max_profiles = p.Integer("max_profiles", o.max_profiles);
  return o;
}

// Equilibria at the first ladder epsilon admitting one; remembered for later
// misalignment steps.
void FindEquilibria(Context* ctx, const Params& p) {
  EnumerateOptions o = ReadEnumerateOptions(p, *ctx);
  const std::vector<double> ladder = ReadLadder(p, *ctx);
  ctx->equilibria.clear();
  for (double e : ladder) {
    o.epsilon = e;
    ctx->equilibria_epsilon = e;
    ctx->equilibria = EnumeratePureBne(ctx->game, o);
    if (!ctx->equilibria.empty()) break;
  }
  ctx->have_equilibria = true;
}

Json LadderJson(const Params& p, const Context& ctx) {
  Json j = Json::array();
  for (double e : ReadLadder(p, ctx)) j.push_back(NumberJson(e));
  return j;
}

void EquilibriaTable(Context* ctx, int step,
                     const std::vector<EquilibriumWelfare>& eqs) {
  std::string csv = "index,epsilon,regret,welfare,strategy\n";
  for (std::size_t k = 0; k < eqs.size(); ++k) {
    std::string strategy;
    const auto& choices = eqs[k].strategy.choices();
    for (std::size_t i = 0; i < choices.size(); ++i) {
      if (i) strategy += " | ";
      for (std::size_t t = 0; t < choices[i].size(); ++t) {
        strategy += (t ? " " : "") +
                    ctx->game.action_label(static_cast<PlayerId>(i), choices[i][t]);
      }
    }
    csv += std::to_string(k) + "," + FormatCsvNumber(ctx->equilibria_epsilon) +
           "," + FormatCsvNumber(eqs[k].regret) + "," +
           FormatCsvNumber(eqs[k].welfare) + "," + CsvField(strategy) + "\n";
  }
  ctx->tables.push_back({"step" + std::to_string(step) + "_equilibria.csv", csv});
}

std::vector<EquilibriumWelfare> WithWelfare(const Context& ctx) {
  std::vector<EquilibriumWelfare> out;
  for (const auto& e : ctx.equilibria) {
    out.push_back({e.strategy, e.regret, ExpectedWelfare(ctx.game, e.strategy)});
  }
  return out;
}

Json EquilibriaJson(const Context& ctx,
                    const std::vector<EquilibriumWelfare>& eqs) {
  Json list = Json::array();
  for (std::size_t k = 0; k < eqs.size() && k < kMaxListedEquilibria; ++k) {
    Json e;
    e["strategy"] = StrategyJson(ctx.game, eqs[k].strategy);
    e["regret"] = NumberJson(eqs[k].regret);
    e["welfare"] = NumberJson(eqs[k].welfare);
    list.push_back(e);
  }
  return list;
}

Json DominationJson(const DominationResult& d) {
  Json j;
  j["applicable"] = d.applicable;
  if (!d.applicable) {
    j["reason"] = d.reason;
    return j;
  }
  j["measured_poa"] = NumberJson(d.measured_poa);
  j["bound"] = NumberJson(d.bound);
  j["allowance"] = NumberJson(d.allowance);
  j["pass"] = d.pass;
  return j;
}


// ---------------------------------------------------------------------------
// Steps.

SmoothnessVariant ReadVariant(const Params& p, const BayesianGame& game) {
  if (!p.Has("variant")) {
    return game.constant_strategy_space() ? SmoothnessVariant::kPlain
                                          : SmoothnessVariant::kUniversal;
  }
  try {
    return ParseVariant(p.String("variant", ""));
  } catch (const InputError& e) {
    p.Fail("variant", e.what());
  }
}

void SmoothCheckStep(Context* ctx, int step, const Params& p, Json* out) {
  const BayesianGame& game = ctx->game;
  const SmoothnessVariant variant = ReadVariant(p, game);
  const bool needs_deviation = variant == SmoothnessVariant::kSemi ||
                               variant == SmoothnessVariant::kRelaxed;
  const std::string dev_name = p.String("deviation", DefaultDeviation(game));
  std::unique_ptr<Deviation> deviation;
  if (needs_deviation) deviation = MakeDeviation(*ctx, dev_name, p);
  const std::vector<PlayerId> subset = variant == SmoothnessVariant::kRelaxed
                                           ? ReadSubset(p, game)
                                           : std::vector<PlayerId>{};
  if (!p.Has("lambda")) p.Fail("lambda", "missing field");
  const double lambda = p.Number("lambda", 0.0);
  const double mu = p.Number("mu", 0.0);
  CheckOptions o = ReadCheckOptions(p, *ctx);
  const auto slack = p.NumberOrAuto("slack");
  o.slack = slack ? *slack
                  : (needs_deviation ? DefaultSlack(game, dev_name) : 0.0);
  std::string csv;
  TupleSink sink;
  if (p.Bool("csv", false)) sink = MakeTupleSink(game, &csv);
  const SmoothnessVerdict v =
      Check(game, variant, lambda, mu, deviation.get(), subset, o, sink);
  if (sink) {
    ctx->tables.push_back({"step" + std::to_string(step) + "_tuples.csv", csv});
  }
  (*out)["verdict"] = VerdictJson(game, v);
  AddCertificate(ctx, step, v, out);
}

void SmoothSearchStep(Context* ctx, int step, const Params& p, Json* out) {
  const BayesianGame& game = ctx->game;
  const SmoothnessVariant variant = ReadVariant(p, game);
  const bool needs_deviation = variant == SmoothnessVariant::kSemi ||
                               variant == SmoothnessVariant::kRelaxed;
  const std::string dev_name = p.String("deviation", DefaultDeviation(game));
  std::unique_ptr<Deviation> deviation;
  if (needs_deviation) deviation = MakeDeviation(*ctx, dev_name, p);
  const std::vector<PlayerId> subset = variant == SmoothnessVariant::kRelaxed
                                           ? ReadSubset(p, game)
                                           : std::vector<PlayerId>{};
  SearchOptions o;
  o.check = ReadCheckOptions(p, *ctx);
  const auto slack = p.NumberOrAuto("slack");
  o.check.slack = slack ? *slack
                        : (needs_deviation ? DefaultSlack(game, dev_name) : 0.0);
  o.mu_max = p.Number("mu_max", o.mu_max);
  o.grid_points = static_cast<int>(p.Integer("grid_points", o.grid_points));
  const ParameterSearch r =
      BestParameters(game, variant, deviation.get(), subset, o);
  (*out)["found"] = r.found;
  if (r.found) {
    (*out)["lambda"] = NumberJson(r.lambda);
    (*out)["mu"] = NumberJson(r.mu);
    (*out)["bound"] = NumberJson(r.bound);
    (*out)["verdict"] = VerdictJson(game, r.verdict);
    AddCertificate(ctx, step, r.verdict, out);
  } else {
    (*out)["status"] = "fail";
    ctx->failed = true;
  }
}

void FpSemiStep(Context* ctx, int step, const Params& p, Json* out) {
  auto* auction = dynamic_cast<const ItemAuction*>(&ctx->game);
  if (!auction) p.Fail("verb", "fp-semi-smoothness needs an item-auction");
  const std::string dev = p.String("deviation", "half-bid");
  AuctionDeviation kind;
  if (dev == "half-bid") {
    kind = AuctionDeviation::kHalfBid;
  } else if (dev == "randomized") {
    kind = AuctionDeviation::kRandomized;
  } else {
    p.Fail("deviation", "expected \"half-bid\" or \"randomized\"");
  }
  const double fallback =
      kind == AuctionDeviation::kHalfBid ? 0.5 : 1.0 - std::exp(-1.0);
  const double lambda = p.Number("lambda", fallback);
  const SmoothnessVerdict v = CheckFirstPriceSemiSmoothness(
      *auction, lambda, kind, ReadCheckOptions(p, *ctx));
  (*out)["verdict"] = VerdictJson(ctx->game, v);
  AddCertificate(ctx, step, v, out);
}

double GreedyFactor(const GreedyAuction& auction, const Params& p, Json* out) {
  const auto c = p.NumberOrAuto("c");
  const double value = c ? *c : ApproximationFactor(auction.mechanism());
  (*out)["c"] = NumberJson(value);
  (*out)["c_source"] = c ? "given" : "measured";
  return value;
}

void GreedySmoothStep(Context* ctx, int step, const Params& p, Json* out) {
  auto* auction = dynamic_cast<const GreedyAuction*>(&ctx->game);
  if (!auction) p.Fail("verb", "greedy-smoothness needs a greedy-auction");
  const double c = GreedyFactor(*auction, p, out);
  const bool randomized = p.Bool("randomized", false);
  const SmoothnessVerdict v = CheckGreedySmoothness(
      *auction, c, randomized, ReadCheckOptions(p, *ctx));
  (*out)["verdict"] = VerdictJson(ctx->game, v);
  AddCertificate(ctx, step, v, out);
}

void PaymentFactStep(Context* ctx, const Params& p, Json* out) {
  auto* auction = dynamic_cast<const GreedyAuction*>(&ctx->game);
  if (!auction) p.Fail("verb", "payment-fact needs a greedy-auction");
  const double c = GreedyFactor(*auction, p, out);
  const PaymentFactSweep r =
      CheckPaymentFactAll(auction->mechanism(), c, ctx->threads);
  (*out)["checked"] = r.checked;
  (*out)["worst_margin"] = NumberJson(r.worst_margin);
  if (!r.worst_profile.empty()) {
    Json profile = Json::array();
    for (std::size_t i = 0; i < r.worst_profile.size(); ++i) {
      profile.push_back(auction->mechanism().bid_labels()[r.worst_profile[i]]);
    }
    Json alt = Json::array();
    for (ItemSet s : r.worst_alternative) alt.push_back(SetToString(s));
    (*out)["worst_profile"] = profile;
    (*out)["worst_alternative"] = alt;
  }
  (*out)["status"] = r.pass ? "pass" : "fail";
  if (!r.pass) ctx->failed = true;
}

void CongestionStep(Context* ctx, int step, const Params& p, Json* out) {
  auto* game = dynamic_cast<const CongestionGame*>(&ctx->game);
  if (!game) p.Fail("verb", "congestion-smoothness needs a congestion game");
  std::set<int> degrees;
  for (const auto& e : game->spec().edges) {
    for (int k : e.support()) degrees.insert(k);
  }
  const std::vector<int> list(degrees.begin(), degrees.end());
  const DelayParameters best = BestDelayParameters(list);
  (*out)["degrees"] = list;
  (*out)["bounded"] = best.bounded;
  if (!best.bounded) {
    (*out)["status"] = "fail";
    ctx->failed = true;
    return;
  }
  const double lambda = p.Number("lambda", best.lambda);
  const double mu = p.Number("mu", best.mu);
  (*out)["lambda"] = NumberJson(lambda);
  (*out)["mu"] = NumberJson(mu);
  (*out)["bound"] = NumberJson(PoaBound(lambda, mu, Objective::kCost));
  double max_load = 0.0;
  for (const auto& ws : game->spec().weights) {
    max_load += *std::max_element(ws.begin(), ws.end());
  }
  PointwiseDomain domain;
  domain.max_load = max_load;
  Json pointwise = Json::array();
  for (const auto& e : game->spec().edges) {
    const PointwiseVerdict pv = CheckPointwiseCondition(e, lambda, mu, domain);
    Json j;
    j["delay"] = e.ToString();
    j["pass"] = pv.pass;
    j["exact"] = pv.exact;
    j["worst_margin"] = NumberJson(pv.worst_margin);
    pointwise.push_back(j);
  }
  (*out)["pointwise"] = pointwise;
  const SmoothnessVerdict v = CheckUniversalSmoothnessCongestion(
      *game, lambda, mu, ReadCheckOptions(p, *ctx));
  (*out)["verdict"] = VerdictJson(ctx->game, v);
  AddCertificate(ctx, step, v, out);
}

void EffortStep(Context* ctx, int step, const Params& p, Json* out) {
  auto* game = dynamic_cast<const EffortGame*>(&ctx->game);
  if (!game) p.Fail("verb", "effort-smoothness needs an effort game");
  const SmoothnessVerdict v =
      CheckUniversal11Smoothness(*game, ReadCheckOptions(p, *ctx));
  (*out)["verdict"] = VerdictJson(ctx->game, v);
  AddCertificate(ctx, step, v, out);
}

void SharesStep(Context* ctx, const Params& p, Json* out) {
  auto* game = dynamic_cast<const EffortGame*>(&ctx->game);
  if (!game) p.Fail("verb", "shares needs an effort game");
  std::vector<std::vector<int>> blocks;
  std::vector<std::int64_t> sizes;
  double total = 0.0;
  ForEachTypeProfile(*game, [&](std::span<const TypeId> t, double) {
    blocks.emplace_back(t.begin(), t.end());
    const auto radices = ActionRadices(*game, t);
    sizes.push_back(MixedRadixCounter(radices).count());
    total += ProductSize(radices);
  });
  const std::int64_t limit = p.Integer("max_profiles", kMaxShareProfiles);
  std::int64_t checked = 0;
  std::int64_t violations = 0;
  std::vector<ActionId> profile(game->num_players());
  auto check = [&](const std::vector<int>& types, std::int64_t index) {
    MixedRadixCounter counter(ActionRadices(*game, types));
    counter.Seek(index);
    DigitsToProfile(*game, types, counter.digits(), profile);
    ++checked;
    if (!SharesConserved(*game, profile)) ++violations;
  };
  const bool sampled = total > static_cast<double>(limit);
  if (!sampled) {
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      for (std::int64_t k = 0; k < sizes[b]; ++k) check(blocks[b], k);
    }
  } else {
    const std::int64_t samples = p.Integer("samples", 10'000);
    for (std::int64_t k = 0; k < samples; ++k) {
      CounterRng rng(ctx->seed, static_cast<std::uint64_t>(k));
      const auto b = static_cast<std::size_t>(
          rng.Below(static_cast<std::int64_t>(blocks.size())));
      check(blocks[b], rng.Below(sizes[b]));
    }
  }
  (*out)["checked"] = checked;
  (*out)["sampled"] = sampled;
  (*out)["violations"] = violations;
  (*out)["status"] = violations == 0 ? "pass" : "fail";
  if (violations) ctx->failed = true;
}

double ReadFixedEpsilon(const Params& p, const Context& ctx) {
  if (ctx.epsilon) return *ctx.epsilon;
  const double e = p.Number("epsilon", 0.0);
  if (e < 0.0) p.Fail("epsilon", "epsilon must be nonnegative");
  return e;
}

Json BneVerdictJson(const BayesianGame& game, const BneVerdict& v) {
  Json j;
  j["pass"] = v.pass;
  j["max_regret"] = NumberJson(v.max_regret);
  if (v.player >= 0) {
    j["player"] = v.player;
    j["type"] = game.type_distribution(v.player).label(v.type);
    j["best_action"] = game.action_label(v.player, v.best_action);
  }
  return j;
}

void BneCheckStep(Context* ctx, const Params& p, Json* out) {
  if (!p.Has("strategy")) p.Fail("strategy", "missing field");
  StrategyProfile s;
  try {
    s = ParseStrategy(ctx->game, p.Raw("strategy"));
  } catch (const InputError& e) {
    p.Fail("strategy", e.what());
  }
  const double e = ReadFixedEpsilon(p, *ctx);
  (*out)["epsilon"] = NumberJson(e);
  (*out)["bne"] = BneVerdictJson(ctx->game, IsPureBne(ctx->game, s, e));
  (*out)["status"] = "info";
}

void BneDynamicsStep(Context* ctx, const Params& p, Json* out) {
  StrategyProfile start = StrategyProfile::FirstActions(ctx->game);
  if (p.Has("start")) {
    try {
      start = ParseStrategy(ctx->game, p.Raw("start"));
    } catch (const InputError& e) {
      p.Fail("start", e.what());
    }
  }
  const int rounds = static_cast<int>(p.Integer("max_rounds", 100));
  const DynamicsResult r = BestResponseDynamics(ctx->game, start, rounds);
  (*out)["converged"] = r.converged;
  (*out)["rounds"] = r.rounds;
  (*out)["strategy"] = StrategyJson(ctx->game, r.strategy);
  (*out)["bne"] = BneVerdictJson(ctx->game, IsPureBne(ctx->game, r.strategy));
  (*out)["status"] = "info";
}

void BneEnumerateStep(Context* ctx, int step, const Params& p, Json* out) {
  (*out)["ladder"] = LadderJson(p, *ctx);
  FindEquilibria(ctx, p);
  const auto eqs = WithWelfare(*ctx);
  (*out)["epsilon"] = NumberJson(ctx->equilibria_epsilon);
  (*out)["count"] = eqs.size();
  (*out)["equilibria"] = EquilibriaJson(*ctx, eqs);
  (*out)["status"] = "info";
  EquilibriaTable(ctx, step, eqs);
}

void PoaStep(Context* ctx, int step, const Params& p, Json* out) {
  const BayesianGame& game = ctx->game;
  (*out)["ladder"] = LadderJson(p, *ctx);
  FindEquilibria(ctx, p);
  const auto eqs = WithWelfare(*ctx);
  (*out)["epsilon"] = NumberJson(ctx->equilibria_epsilon);
  (*out)["found"] = !eqs.empty();
  (*out)["count"] = eqs.size();
  EquilibriaTable(ctx, step, eqs);
  if (eqs.empty()) {
    (*out)["status"] = "info";
    return;
  }
  const double sign = game.objective() == Objective::kUtility ? 1.0 : -1.0;
  const double optimal = ExpectedOptimalWelfare(game);
  int worst = 0;
  for (std::size_t k = 1; k < eqs.size(); ++k) {
    if (sign * eqs[k].welfare < sign * eqs[worst].welfare) {
      worst = static_cast<int>(k);
    }
  }
  (*out)["optimal_welfare"] = NumberJson(optimal);
  (*out)["worst_welfare"] = NumberJson(eqs[worst].welfare);
  (*out)["poa"] = NumberJson(PoaRatio(game.objective(), optimal, eqs[worst].welfare));
  (*out)["worst_strategy"] = StrategyJson(game, eqs[worst].strategy);
  const int n = game.num_strategic_players();
  Json doms = Json::array();
  bool ok = true;
  for (const Certificate& cert : ctx->certificates) {
    Json d;
    d["certificate_step"] = cert.step;
    d["variant"] = VariantName(cert.verdict.variant);
    d["lambda"] = NumberJson(cert.verdict.lambda);
    d["mu"] = NumberJson(cert.verdict.mu);
    std::int64_t checked = 0;
    std::int64_t violations = 0;
    DominationResult at_worst;
    for (std::size_t k = 0; k < eqs.size(); ++k) {
      double deficit = 0.0;
      if (cert.verdict.variant == SmoothnessVariant::kRelaxed) {
        deficit = ExpectedIrDeficit(game, eqs[k].strategy, cert.verdict.subset);
      }
      const DominationResult r =
          CheckDomination(cert.verdict, n, ctx->equilibria_epsilon,
                          eqs[k].welfare, optimal, deficit);
      if (static_cast<int>(k) == worst) at_worst = r;
      if (!r.applicable) continue;
      ++checked;
      if (!r.pass) ++violations;
    }
    d["checked"] = checked;
    d["violations"] = violations;
    d["worst"] = DominationJson(at_worst);
    if (violations) ok = false;
    doms.push_back(d);
  }
  (*out)["domination"] = doms;
  (*out)["status"] = ok ? "pass" : "fail";
  if (!ok) ctx->failed = true;
}

void MisalignmentStep(Context* ctx, const Params& p, Json* out) {
  if (!ctx->have_equilibria || p.Has("epsilon")) FindEquilibria(ctx, p);
  std::int64_t passed = 0;
  std::int64_t failed = 0;
  std::int64_t skipped = 0;
  double worst_gap = kInfinity;
  std::string reason;
  for (const auto& e : ctx->equilibria) {
    const MisalignmentVerdict v =
        CheckMisalignment(ctx->game, e.strategy, ctx->equilibria_epsilon);
    if (!v.applicable) {
      ++skipped;
      reason = v.reason;
      continue;
    }
    const double sign =
        ctx->game.objective() == Objective::kUtility ? 1.0 : -1.0;
    worst_gap = std::min(worst_gap, sign * (v.rhs - v.lhs) + v.slack);
    v.pass ? ++passed : ++failed;
  }
  (*out)["epsilon"] = NumberJson(ctx->equilibria_epsilon);
  (*out)["equilibria"] = ctx->equilibria.size();
  (*out)["passed"] = passed;
  (*out)["failed"] = failed;
  (*out)["not_applicable"] = skipped;
  if (skipped) (*out)["reason"] = reason;
  (*out)["worst_gap"] = NumberJson(worst_gap);
  (*out)["status"] = failed == 0 ? "pass" : "fail";
  if (failed) ctx->failed = true;
}

}  // namespace

Json NumberJson(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

Json VerdictJson(const BayesianGame& game, const SmoothnessVerdict& v) {
  Json j;
  j["variant"] = VariantName(v.variant);
  j["objective"] = ObjectiveName(v.objective);
  j["lambda"] = NumberJson(v.lambda);
  j["mu"] = NumberJson(v.mu);
  j["bound"] = NumberJson(PoaBound(v.lambda, v.mu, v.objective));
  j["slack"] = NumberJson(v.slack);
  if (!v.deviation.empty()) j["deviation"] = v.deviation;
  if (v.variant == SmoothnessVariant::kRelaxed) j["subset"] = v.subset;
  j["pass"] = v.pass;
  j["worst_margin"] = NumberJson(v.worst_margin);
  j["tuples"] = v.tuples;
  j["sampled"] = v.sampled;
  if (v.witness) {
    const SmoothnessTuple& t = *v.witness;
    Json w;
    w["types"] = TypesJson(game, t.types);
    if (!t.deviation_types.empty()) {
      w["deviation_types"] = TypesJson(game, t.deviation_types);
    }
    w["profile"] = ProfileJson(game, t.profile);
    if (!t.deviation_profile.empty()) {
      w["deviation_profile"] = ProfileJson(game, t.deviation_profile);
    }
    w["lhs"] = NumberJson(t.lhs);
    w["target"] = NumberJson(t.target);
    w["current"] = NumberJson(t.current);
    j[v.pass ? "binding" : "witness"] = w;
  }
  return j;
}

Json StrategyJson(const BayesianGame& game, const StrategyProfile& s) {
  Json j = Json::array();
  for (PlayerId i = 0; i < s.num_players(); ++i) {
    Json row = Json::array();
    for (TypeId t = 0; t < game.num_types(i); ++t) {
      row.push_back(game.action_label(i, s.action(i, t)));
    }
    j.push_back(row);
  }
  return j;
}

StrategyProfile ParseStrategy(const BayesianGame& game, const Json& value) {
  if (!value.is_array() ||
      static_cast<int>(value.size()) != game.num_players()) {
    throw InputError("strategy needs one entry per player");
  }
  std::vector<std::vector<ActionId>> choices(game.num_players());
  for (PlayerId i = 0; i < game.num_players(); ++i) {
    const Json& row = value[i];
    if (!row.is_array() || static_cast<int>(row.size()) != game.num_types(i)) {
      throw InputError("strategy of player " + std::to_string(i) +
                       " needs one action per type");
    }
    for (const Json& a : row) {
      if (a.is_number_integer()) {
        choices[i].push_back(a.get<int>());
        continue;
      }
      if (!a.is_string()) throw InputError("actions are ids or labels");
      const std::string label = a.get<std::string>();
      ActionId found = -1;
      for (ActionId x = 0; x < game.num_actions(i) && found < 0; ++x) {
        if (game.action_label(i, x) == label) found = x;
      }
      if (found < 0) throw InputError("unknown action label '" + label + "'");
      choices[i].push_back(found);
    }
  }
  StrategyProfile s(std::move(choices));
  try {
    s.Validate(game);
  } catch (const InvalidProfileError& e) {
    throw InputError(e.what());
  }
  return s;
}

PipelineResult RunPipeline(const Instance& instance, const Json& run_spec,
                           const PipelineOptions& options) {
  const BayesianGame& game = *instance.game;
  if (!run_spec.is_object()) throw InputError("/", "run spec must be an object");
  Context ctx{instance, game};
  ctx.threads = std::max(1, options.threads);
  if (run_spec.contains("seed")) {
    if (!run_spec["seed"].is_number_unsigned()) {
      throw InputError("/seed", "expected a nonnegative integer");
    }
    ctx.seed = run_spec["seed"].get<std::uint64_t>();
  }
  if (options.seed) ctx.seed = *options.seed;
  ctx.epsilon = options.epsilon;

  PipelineResult result;
  Json& report = result.report;
  report["schema_version"] = kReportSchemaVersion;
  Json inst;
  inst["name"] = instance.name;
  inst["family"] = game.family();
  inst["players"] = game.num_players();
  inst["objective"] = ObjectiveName(game.objective());
  inst["type_profiles"] = NumTypeProfiles(game);
  if (!instance.warnings.empty()) inst["warnings"] = instance.warnings;
  report["instance"] = inst;
  report["pipeline"] = run_spec.value("name", "");
  report["seed"] = ctx.seed;
  if (options.epsilon) report["epsilon_override"] = NumberJson(*options.epsilon);
  report["steps"] = Json::array();

  const Json empty = Json::array();
  const Json& steps = run_spec.contains("steps") ? run_spec["steps"] : empty;
  if (!steps.is_array()) throw InputError("/steps", "expected an array");
  bool refused = false;
  for (std::size_t k = 0; k < steps.size() && !refused; ++k) {
    const std::string path = "/steps/" + std::to_string(k);
    const Json& step = steps[k];
    if (!step.is_object() || !step.contains("verb") ||
        !step["verb"].is_string()) {
      throw InputError(path, "step needs a string 'verb'");
    }
    const std::string verb = step["verb"].get<std::string>();
    const Params p(step, path);
    const int index = static_cast<int>(k);
    Json out;
    out["verb"] = verb;
    try {
      if (verb == "smooth-check") {
        SmoothCheckStep(&ctx, index, p, &out);
      } else if (verb == "smooth-search") {
        SmoothSearchStep(&ctx, index, p, &out);
      } else if (verb == "fp-semi-smoothness") {
        FpSemiStep(&ctx, index, p, &out);
      } else if (verb == "greedy-smoothness") {
        GreedySmoothStep(&ctx, index, p, &out);
      } else if (verb == "payment-fact") {
        PaymentFactStep(&ctx, p, &out);
      } else if (verb == "congestion-smoothness") {
        CongestionStep(&ctx, index, p, &out);
      } else if (verb == "effort-smoothness") {
        EffortStep(&ctx, index, p, &out);
      } else if (verb == "shares") {
        SharesStep(&ctx, p, &out);
      } else if (verb == "bne-check") {
        BneCheckStep(&ctx, p, &out);
      } else if (verb == "bne-enumerate") {
        BneEnumerateStep(&ctx, index, p, &out);
      } else if (verb == "bne-dynamics") {
        BneDynamicsStep(&ctx, p, &out);
      } else if (verb == "poa") {
        PoaStep(&ctx, index, p, &out);
      } else if (verb == "misalignment") {
        MisalignmentStep(&ctx, p, &out);
      } else {
        throw InputError(path + "/verb", "unknown verb '" + verb + "'");
      }
    } catch (const GuardExceededError& e) {
      out = Json();
      out["verb"] = verb;
      out["status"] = "refused";
      out["error"] = e.what();
      out["size"] = NumberJson(e.size());
      out["limit"] = NumberJson(e.limit());
      refused = true;
    } catch (const InputError& e) {
      if (!e.where().empty()) throw;
      throw InputError(path, e.what());
    }
    report["steps"].push_back(out);
  }
  result.exit_code = refused      ? kExitGuardRefusal
                     : ctx.failed ? kExitCertificateFailure
                                  : kExitOk;
  Json summary;
  summary["steps"] = steps.size();
  summary["certificates"] = ctx.certificates.size();
  summary["refused"] = refused;
  summary["failed"] = ctx.failed;
  summary["exit_code"] = result.exit_code;
  report["summary"] = summary;
  result.tables = std::move(ctx.tables);
  return result;
}

}  // namespace bnlab
