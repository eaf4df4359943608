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

#include "bnlab/smoothness.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "bnlab/parallel.hpp"
#include "bnlab/rng.hpp"

namespace bnlab {
namespace {

struct Terms {
  double lhs = 0.0;
  double target = 0.0;
  double current = 0.0;
};

double Margin(Objective objective, double lambda, double mu, const Terms& x) {
  if (objective == Objective::kUtility) {
    return x.lhs - lambda * x.target + mu * x.current;
  }
  return lambda * x.target + mu * x.current - x.lhs;
}

class BoundProfileDeviation final : public BoundDeviation {
 public:
  BoundProfileDeviation(const BayesianGame& game, std::vector<TypeId> types,
                        std::vector<ActionId> deviation)
      : game_(game),
        types_(std::move(types)),
        deviation_(std::move(deviation)) {}

  double Utility(std::span<ActionId> profile, PlayerId i) const override {
    const ActionId saved = profile[i];
    profile[i] = deviation_[i];
    const double u = game_.utility(i, types_[i], profile);
    profile[i] = saved;
    return u;
  }

 private:
  const BayesianGame& game_;
  std::vector<TypeId> types_;
  std::vector<ActionId> deviation_;
};

// Enumerable tuple space of one smoothness variant. Tuples are grouped in
// blocks: one block per type profile t, or per pair (t, w) for the universal
// variant. Inside a block the action digits of a (and a' or b) run in
// lexicographic order, so global tuple indices order tuples lexicographically.
class TupleSpace {
 public:
  struct Block {
    std::vector<TypeId> types;
    std::vector<TypeId> deviation_types;
    std::vector<int> radices;
    int split = 0;  // digits [0, split) index a, the rest a' or b
    std::unique_ptr<BoundDeviation> bound;
    double optimum = 0.0;
    std::int64_t size = 0;
  };

  struct Scratch {
    std::vector<ActionId> a;
    std::vector<ActionId> b;
    std::vector<double> utilities;
  };

  TupleSpace(const BayesianGame& game, SmoothnessVariant variant,
             const Deviation* deviation, std::vector<PlayerId> subset)
      : game_(game),
        variant_(variant),
        deviation_(deviation),
        subset_(std::move(subset)),
        type_radices_(TypeRadices(game)),
        num_type_profiles_(NumTypeProfiles(game)) {
    const bool pairs = variant_ == SmoothnessVariant::kUniversal;
    num_blocks_ = pairs ? num_type_profiles_ * num_type_profiles_
                        : num_type_profiles_;
    total_ = 0.0;
    for (std::int64_t b = 0; b < num_blocks_; ++b) {
      const auto [t, w] = BlockTypes(b);
      std::vector<int> radices = ActionRadices(game_, t);
      if (variant_ == SmoothnessVariant::kPlain) {
        const auto more = ActionRadices(game_, t);
        radices.insert(radices.end(), more.begin(), more.end());
      } else if (pairs) {
        const auto more = ActionRadices(game_, w);
        radices.insert(radices.end(), more.begin(), more.end());
      }
      const double size = ProductSize(radices);
      sizes_.push_back(size);
      total_ += size;
    }
  }

  std::int64_t num_blocks() const { return num_blocks_; }
  double total() const { return total_; }
  double block_size(std::int64_t b) const { return sizes_[b]; }

  Block MakeBlock(std::int64_t b) const {
    Block block;
    auto [t, w] = BlockTypes(b);
    block.types = std::move(t);
    block.radices = ActionRadices(game_, block.types);
    block.split = static_cast<int>(block.radices.size());
    switch (variant_) {
      case SmoothnessVariant::kPlain: {
        const auto more = ActionRadices(game_, block.types);
        block.radices.insert(block.radices.end(), more.begin(), more.end());
        break;
      }
      case SmoothnessVariant::kUniversal: {
        block.deviation_types = std::move(w);
        const auto more = ActionRadices(game_, block.deviation_types);
        block.radices.insert(block.radices.end(), more.begin(), more.end());
        break;
      }
      case SmoothnessVariant::kSemi:
      case SmoothnessVariant::kRelaxed:
        block.bound = deviation_->Bind(game_, block.types);
        block.optimum = OptimalWelfare(game_, block.types);
        break;
    }
    block.size = static_cast<std::int64_t>(sizes_[b]);
    return block;
  }

  void InitScratch(Scratch* s) const {
    const int n = game_.num_players();
    s->a.assign(n, 0);
    s->b.assign(n, 0);
    s->utilities.assign(n, 0.0);
  }

  Terms Evaluate(const Block& block, std::span<const int> digits,
                 Scratch* s) const {
    const int n = game_.num_players();
    const std::span<const int> a_digits = digits.first(block.split);
    DigitsToProfile(game_, block.types, a_digits, s->a);
    Terms x;
    switch (variant_) {
      case SmoothnessVariant::kPlain: {
        DigitsToProfile(game_, block.types, digits.subspan(block.split), s->b);
        for (PlayerId i = 0; i < n; ++i) {
          const ActionId saved = s->a[i];
          s->a[i] = s->b[i];
          x.lhs += game_.utility(i, block.types[i], s->a);
          s->a[i] = saved;
        }
        x.target = game_.welfare(block.types, s->b);
        x.current = game_.welfare(block.types, s->a);
        break;
      }
      case SmoothnessVariant::kSemi:
      case SmoothnessVariant::kRelaxed: {
        for (PlayerId i = 0; i < n; ++i) {
          x.lhs += block.bound->Utility(s->a, i);
        }
        x.target = block.optimum;
        if (variant_ == SmoothnessVariant::kSemi) {
          x.current = game_.welfare(block.types, s->a);
        } else {
          game_.utilities(block.types, s->a, s->utilities);
          for (PlayerId i : subset_) x.current += s->utilities[i];
        }
        break;
      }
      case SmoothnessVariant::kUniversal: {
        DigitsToProfile(game_, block.deviation_types,
                        digits.subspan(block.split), s->b);
        for (PlayerId i = 0; i < n; ++i) {
          const ActionId saved = s->a[i];
          s->a[i] = s->b[i];
          x.lhs += game_.utility(i, block.deviation_types[i], s->a);
          s->a[i] = saved;
        }
        x.target = game_.welfare(block.deviation_types, s->b);
        x.current = game_.welfare(block.types, s->a);
        break;
      }
    }
    return x;
  }

  SmoothnessTuple Describe(const Block& block, std::span<const int> digits,
                           const Terms& x) const {
    SmoothnessTuple tuple;
    tuple.types = block.types;
    tuple.deviation_types = block.deviation_types;
    tuple.profile.assign(game_.num_players(), 0);
    DigitsToProfile(game_, block.types, digits.first(block.split),
                    tuple.profile);
    if (variant_ == SmoothnessVariant::kPlain ||
        variant_ == SmoothnessVariant::kUniversal) {
      tuple.deviation_profile.assign(game_.num_players(), 0);
      const auto& types = variant_ == SmoothnessVariant::kPlain
                              ? block.types
                              : block.deviation_types;
      DigitsToProfile(game_, types, digits.subspan(block.split),
                      tuple.deviation_profile);
    }
    tuple.lhs = x.lhs;
    tuple.target = x.target;
    tuple.current = x.current;
    return tuple;
  }

 private:
  std::pair<std::vector<TypeId>, std::vector<TypeId>> BlockTypes(
      std::int64_t b) const {
    MixedRadixCounter counter(type_radices_);
    if (variant_ == SmoothnessVariant::kUniversal) {
      counter.Seek(b / num_type_profiles_);
      std::vector<TypeId> t = counter.digits();
      counter.Seek(b % num_type_profiles_);
      return {std::move(t), counter.digits()};
    }
    counter.Seek(b);
    return {counter.digits(), {}};
  }

  const BayesianGame& game_;
  SmoothnessVariant variant_;
  const Deviation* deviation_;
  std::vector<PlayerId> subset_;
  std::vector<int> type_radices_;
  std::int64_t num_type_profiles_;
  std::int64_t num_blocks_ = 0;
  std::vector<double> sizes_;
  double total_ = 0.0;
};

// Visits every tuple (or a seeded sample) and reduces per-chunk accumulators
// in a fixed order. `visit(acc, index, block, digits, terms)`.
template <class Acc, class MakeAcc, class Visit>
Acc Reduce(const TupleSpace& space, const CheckOptions& options, bool sample,
           bool sequential, MakeAcc make_acc, Visit visit) {
  Acc total = make_acc();
  const int threads = sequential ? 1 : options.threads;
  if (!sample) {
    std::int64_t offset = 0;
    for (std::int64_t b = 0; b < space.num_blocks(); ++b) {
      const TupleSpace::Block block = space.MakeBlock(b);
      const int chunks = NumChunks(block.size, threads);
      std::vector<Acc> partial;
      partial.reserve(chunks);
      for (int c = 0; c < chunks; ++c) partial.push_back(make_acc());
      ParallelChunks(block.size, threads,
                     [&](std::int64_t begin, std::int64_t end, int c) {
                       TupleSpace::Scratch scratch;
                       space.InitScratch(&scratch);
                       MixedRadixCounter counter(block.radices);
                       counter.Seek(begin);
                       for (std::int64_t k = begin; k < end; ++k) {
                         const Terms x =
                             space.Evaluate(block, counter.digits(), &scratch);
                         visit(partial[c], offset + k, block, counter.digits(),
                               x);
                         counter.Next();
                       }
                     });
      for (const Acc& acc : partial) total.Merge(acc);
      offset += block.size;
    }
    return total;
  }

  std::vector<TupleSpace::Block> blocks;
  blocks.reserve(space.num_blocks());
  std::vector<std::int64_t> nonempty;
  for (std::int64_t b = 0; b < space.num_blocks(); ++b) {
    blocks.push_back(space.MakeBlock(b));
    if (blocks.back().size > 0) nonempty.push_back(b);
  }
  if (nonempty.empty()) return total;
  const int chunks = NumChunks(options.samples, threads);
  std::vector<Acc> partial;
  partial.reserve(chunks);
  for (int c = 0; c < chunks; ++c) partial.push_back(make_acc());
  ParallelChunks(options.samples, threads, [&](std::int64_t begin,
                                               std::int64_t end, int c) {
    TupleSpace::Scratch scratch;
    space.InitScratch(&scratch);
    for (std::int64_t k = begin; k < end; ++k) {
      CounterRng rng(options.seed, static_cast<std::uint64_t>(k));
      const auto& block = blocks[nonempty[rng.Below(
          static_cast<std::int64_t>(nonempty.size()))]];
      MixedRadixCounter counter(block.radices);
      counter.Seek(rng.Below(block.size));
      const Terms x = space.Evaluate(block, counter.digits(), &scratch);
      visit(partial[c], k, block, counter.digits(), x);
    }
  });
  for (const Acc& acc : partial) total.Merge(acc);
  return total;
}

struct WorstTuple {
  double margin = kInfinity;
  std::int64_t index = -1;
  std::optional<SmoothnessTuple> tuple;
  std::int64_t count = 0;

  void Offer(double m, std::int64_t k, const TupleSpace& space,
             const TupleSpace::Block& block, std::span<const int> digits,
             const Terms& x) {
    ++count;
    if (m < margin || (m == margin && k < index)) {
      margin = m;
      index = k;
      tuple = space.Describe(block, digits, x);
    }
  }

  void Merge(const WorstTuple& other) {
    count += other.count;
    if (other.index < 0) return;
    if (other.margin < margin ||
        (other.margin == margin && other.index < index)) {
      margin = other.margin;
      index = other.index;
      tuple = other.tuple;
    }
  }
};

void ValidateParameters(Objective objective, double lambda, double mu) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw InputError("lambda must be positive and finite");
  }
  if (objective == Objective::kUtility) {
    if (!(mu > -1.0) || !std::isfinite(mu)) {
      throw InputError("mu must exceed -1 for utility games");
    }
  } else if (!(mu >= 0.0 && mu < 1.0)) {
    throw InputError("mu must lie in [0, 1) for cost games");
  }
}

std::vector<PlayerId> NormalizeSubset(const BayesianGame& game,
                                      std::span<const PlayerId> subset) {
  std::vector<PlayerId> out(subset.begin(), subset.end());
  std::sort(out.begin(), out.end());
  if (std::adjacent_find(out.begin(), out.end()) != out.end()) {
    throw InputError("subset K lists a player twice");
  }
  for (PlayerId i : out) {
    if (i < 0 || i >= game.num_players()) {
      throw InputError("subset K names player " + std::to_string(i) +
                       " outside the game");
    }
  }
  return out;
}

bool ShouldSample(const TupleSpace& space, const CheckOptions& options,
                  const char* what) {
  if (space.total() <= static_cast<double>(options.max_tuples)) return false;
  if (!options.allow_sampling) {
    throw GuardExceededError(what, space.total(),
                             static_cast<double>(options.max_tuples));
  }
  return true;
}

SmoothnessVerdict RunCheck(const BayesianGame& game, SmoothnessVariant variant,
                           double lambda, double mu, const Deviation* deviation,
                           std::vector<PlayerId> subset,
                           const CheckOptions& options, const TupleSink& sink) {
  ValidateParameters(game.objective(), lambda, mu);
  if (variant == SmoothnessVariant::kPlain && !game.constant_strategy_space()) {
    throw WrongVariantError(
        "plain smoothness needs a constant strategy space; use the universal "
        "variant");
  }
  if ((variant == SmoothnessVariant::kSemi ||
       variant == SmoothnessVariant::kRelaxed) &&
      deviation == nullptr) {
    throw InputError(std::string(VariantName(variant)) +
                     " smoothness needs a deviation");
  }
  SmoothnessVerdict verdict;
  verdict.variant = variant;
  verdict.objective = game.objective();
  verdict.lambda = lambda;
  verdict.mu = mu;
  verdict.slack = options.slack;
  if (deviation != nullptr && variant != SmoothnessVariant::kPlain &&
      variant != SmoothnessVariant::kUniversal) {
    verdict.deviation = deviation->name();
  }
  verdict.subset = subset;

  TupleSpace space(game, variant, deviation, std::move(subset));
  const bool sample = ShouldSample(space, options, "smoothness check");
  const Objective objective = game.objective();
  const WorstTuple worst = Reduce<WorstTuple>(
      space, options, sample, static_cast<bool>(sink),
      [] { return WorstTuple{}; },
      [&](WorstTuple& acc, std::int64_t k, const TupleSpace::Block& block,
          std::span<const int> digits, const Terms& x) {
        const double m = Margin(objective, lambda, mu, x);
        if (sink) sink(space.Describe(block, digits, x), m);
        acc.Offer(m, k, space, block, digits, x);
      });
  verdict.tuples = worst.count;
  verdict.sampled = sample;
  verdict.worst_margin = worst.margin;
  verdict.witness = worst.tuple;
  verdict.pass = worst.margin >= -(options.slack + options.tolerance);
  return verdict;
}

// Per-mu feasibility data: utility games need lambda <= hi, lambda >= lo;
// cost games need lambda >= lo, lambda <= hi.
struct MuBounds {
  std::vector<double> lo;
  std::vector<double> hi;
  std::vector<char> zero_ok;

  explicit MuBounds(std::size_t k)
      : lo(k, -kInfinity), hi(k, kInfinity), zero_ok(k, 1) {}

  void Merge(const MuBounds& other) {
    for (std::size_t q = 0; q < lo.size(); ++q) {
      lo[q] = std::max(lo[q], other.lo[q]);
      hi[q] = std::min(hi[q], other.hi[q]);
      zero_ok[q] = zero_ok[q] && other.zero_ok[q];
    }
  }
};

struct Candidate {
  bool feasible = false;
  double lambda = 0.0;
  double bound = kInfinity;
};

std::vector<Candidate> EvaluateGrid(const TupleSpace& space,
                                    Objective objective,
                                    const std::vector<double>& mus,
                                    const SearchOptions& options, bool sample) {
  const double slack = options.check.slack;
  const double tol = options.check.tolerance;
  const MuBounds bounds = Reduce<MuBounds>(
      space, options.check, sample, false, [&] { return MuBounds(mus.size()); },
      [&](MuBounds& acc, std::int64_t, const TupleSpace::Block&,
          std::span<const int>, const Terms& x) {
        for (std::size_t q = 0; q < mus.size(); ++q) {
          const double mu = mus[q];
          if (objective == Objective::kUtility) {
            // lambda * X <= L + mu * Y + slack
            const double rhs = x.lhs + mu * x.current + slack;
            if (x.target > 0.0) {
              acc.hi[q] = std::min(acc.hi[q], rhs / x.target);
            } else if (x.target < 0.0) {
              acc.lo[q] = std::max(acc.lo[q], rhs / x.target);
            } else if (rhs < -tol) {
              acc.zero_ok[q] = 0;
            }
          } else {
            // lambda * X >= L - mu * Y - slack
            const double need = x.lhs - mu * x.current - slack;
            if (x.target > 0.0) {
              acc.lo[q] = std::max(acc.lo[q], need / x.target);
            } else if (x.target < 0.0) {
              acc.hi[q] = std::min(acc.hi[q], need / x.target);
            } else if (need > tol) {
              acc.zero_ok[q] = 0;
            }
          }
        }
      });
  std::vector<Candidate> out(mus.size());
  for (std::size_t q = 0; q < mus.size(); ++q) {
    Candidate& c = out[q];
    if (!bounds.zero_ok[q]) continue;
    if (objective == Objective::kUtility) {
      if (!std::isfinite(bounds.hi[q]) || bounds.hi[q] <= 0.0 ||
          bounds.hi[q] < bounds.lo[q]) {
        continue;
      }
      c.lambda = bounds.hi[q];
    } else {
      const double lambda = std::max(bounds.lo[q], 1e-12);
      if (lambda > bounds.hi[q]) continue;
      c.lambda = lambda;
    }
    c.feasible = true;
    c.bound = PoaBound(c.lambda, mus[q], objective);
  }
  return out;
}

std::vector<double> Linspace(double lo, double hi, int points) {
  std::vector<double> out;
  if (points <= 1) return {lo};
  for (int k = 0; k < points; ++k) {
    out.push_back(lo + (hi - lo) * k / (points - 1));
  }
  return out;
}

}  // namespace

const char* VariantName(SmoothnessVariant variant) {
  switch (variant) {
    case SmoothnessVariant::kPlain:
      return "plain";
    case SmoothnessVariant::kSemi:
      return "semi";
    case SmoothnessVariant::kRelaxed:
      return "relaxed";
    case SmoothnessVariant::kUniversal:
      return "universal";
  }
  return "unknown";
}

SmoothnessVariant ParseVariant(const std::string& name) {
  for (auto v : {SmoothnessVariant::kPlain, SmoothnessVariant::kSemi,
                 SmoothnessVariant::kRelaxed, SmoothnessVariant::kUniversal}) {
    if (name == VariantName(v)) return v;
  }
  throw InputError("unknown smoothness variant '" + name + "'");
}

std::unique_ptr<BoundDeviation> ProfileDeviation::Bind(
    const BayesianGame& game, std::span<const TypeId> types) const {
  std::vector<ActionId> deviation = rule_(game, types);
  if (static_cast<int>(deviation.size()) != game.num_players()) {
    throw InvalidProfileError("deviation '" + name_ +
                              "' returned a profile of the wrong length");
  }
  for (PlayerId i = 0; i < game.num_players(); ++i) {
    if (!game.is_available(i, types[i], deviation[i])) {
      throw InvalidProfileError("deviation '" + name_ + "' leaves A(t) for player " +
                                std::to_string(i));
    }
  }
  return std::make_unique<BoundProfileDeviation>(
      game, std::vector<TypeId>(types.begin(), types.end()),
      std::move(deviation));
}

std::unique_ptr<Deviation> MakeOptimalProfileDeviation() {
  return std::make_unique<ProfileDeviation>(
      "optimal", [](const BayesianGame& game, std::span<const TypeId> types) {
        return FindOptimalProfile(game, types).profile;
      });
}

SmoothnessVerdict CheckPlain(const BayesianGame& game, double lambda, double mu,
                             const CheckOptions& options,
                             const TupleSink& sink) {
  return RunCheck(game, SmoothnessVariant::kPlain, lambda, mu, nullptr, {},
                  options, sink);
}

SmoothnessVerdict CheckSemi(const BayesianGame& game, double lambda, double mu,
                            const Deviation& deviation,
                            const CheckOptions& options,
                            const TupleSink& sink) {
  return RunCheck(game, SmoothnessVariant::kSemi, lambda, mu, &deviation, {},
                  options, sink);
}

SmoothnessVerdict CheckRelaxed(const BayesianGame& game, double lambda,
                               double mu, const Deviation& deviation,
                               std::span<const PlayerId> subset,
                               const CheckOptions& options,
                               const TupleSink& sink) {
  return RunCheck(game, SmoothnessVariant::kRelaxed, lambda, mu, &deviation,
                  NormalizeSubset(game, subset), options, sink);
}

SmoothnessVerdict CheckUniversal(const BayesianGame& game, double lambda,
                                 double mu, const CheckOptions& options,
                                 const TupleSink& sink) {
  return RunCheck(game, SmoothnessVariant::kUniversal, lambda, mu, nullptr, {},
                  options, sink);
}

SmoothnessVerdict Check(const BayesianGame& game, SmoothnessVariant variant,
                        double lambda, double mu, const Deviation* deviation,
                        std::span<const PlayerId> subset,
                        const CheckOptions& options, const TupleSink& sink) {
  std::vector<PlayerId> k;
  if (variant == SmoothnessVariant::kRelaxed) k = NormalizeSubset(game, subset);
  return RunCheck(game, variant, lambda, mu, deviation, std::move(k), options,
                  sink);
}

double PoaBound(double lambda, double mu, Objective objective) {
  if (objective == Objective::kUtility) return (1.0 + mu) / lambda;
  if (mu >= 1.0) return kInfinity;
  return lambda / (1.0 - mu);
}

ParameterSearch BestParameters(const BayesianGame& game,
                               SmoothnessVariant variant,
                               const Deviation* deviation,
                               std::span<const PlayerId> subset,
                               const SearchOptions& options) {
  if (variant == SmoothnessVariant::kPlain && !game.constant_strategy_space()) {
    throw WrongVariantError(
        "plain smoothness needs a constant strategy space; use the universal "
        "variant");
  }
  if ((variant == SmoothnessVariant::kSemi ||
       variant == SmoothnessVariant::kRelaxed) &&
      deviation == nullptr) {
    throw InputError(std::string(VariantName(variant)) +
                     " smoothness needs a deviation");
  }
  std::vector<PlayerId> k;
  if (variant == SmoothnessVariant::kRelaxed) k = NormalizeSubset(game, subset);
  const Objective objective = game.objective();
  TupleSpace space(game, variant, deviation, k);
  const bool sample = ShouldSample(space, options.check, "smoothness search");

  const double mu_hi =
      objective == Objective::kUtility ? options.mu_max : 1.0 - 1e-9;
  double lo = 0.0;
  double hi = objective == Objective::kUtility
                  ? options.mu_max
                  : 1.0 - 1.0 / std::max(options.grid_points, 2);
  int points = options.grid_points;
  double best_mu = 0.0;
  Candidate best;
  for (int level = 0; level <= options.refinements; ++level) {
    const std::vector<double> mus = Linspace(lo, hi, points);
    const std::vector<Candidate> cands =
        EvaluateGrid(space, objective, mus, options, sample);
    int arg = -1;
    for (std::size_t q = 0; q < mus.size(); ++q) {
      if (cands[q].feasible &&
          (arg < 0 || cands[q].bound < cands[arg].bound)) {
        arg = static_cast<int>(q);
      }
    }
    if (arg < 0) break;
    if (!best.feasible || cands[arg].bound < best.bound) {
      best = cands[arg];
      best_mu = mus[arg];
    }
    const double h = mus.size() > 1 ? mus[1] - mus[0] : 0.0;
    if (h < 1e-7) break;
    lo = std::max(0.0, best_mu - h);
    hi = std::min(mu_hi, best_mu + h);
    points = options.refinement_points;
  }

  ParameterSearch out;
  if (!best.feasible) return out;
  out.lambda = best.lambda;
  out.mu = best_mu;
  out.bound = best.bound;
  out.verdict = Check(game, variant, out.lambda, out.mu, deviation, k,
                      options.check);
  out.found = out.verdict.pass;
  return out;
}

DominationResult CheckDomination(const SmoothnessVerdict& certificate,
                                 int num_players, double epsilon,
                                 double equilibrium_welfare,
                                 double optimal_welfare, double ir_deficit) {
  DominationResult r;
  const double lambda = certificate.lambda;
  const double mu = certificate.mu;
  const double regret = num_players * epsilon;
  r.bound = PoaBound(lambda, mu, certificate.objective);
  if (certificate.objective == Objective::kUtility) {
    double extra = regret + certificate.slack;
    if (certificate.variant == SmoothnessVariant::kRelaxed) {
      extra += mu * std::max(0.0, ir_deficit);
    }
    r.measured_poa = equilibrium_welfare > 0.0
                         ? optimal_welfare / equilibrium_welfare
                         : (optimal_welfare > 0.0 ? kInfinity : 1.0);
    r.allowance = equilibrium_welfare > 0.0
                      ? extra / (lambda * equilibrium_welfare)
                      : kInfinity;
    r.pass = lambda * optimal_welfare <=
             (1.0 + mu) * equilibrium_welfare + extra + kNumericTolerance;
    return r;
  }
  if (certificate.variant != SmoothnessVariant::kUniversal) {
    r.applicable = false;
    r.reason =
        "cost games are bounded through the universal variant only";
    return r;
  }
  const double extra = regret + certificate.slack;
  r.measured_poa = optimal_welfare > 0.0
                       ? equilibrium_welfare / optimal_welfare
                       : (equilibrium_welfare > 0.0 ? kInfinity : 1.0);
  r.allowance = optimal_welfare > 0.0
                    ? extra / ((1.0 - mu) * optimal_welfare)
                    : kInfinity;
  r.pass = (1.0 - mu) * equilibrium_welfare <=
           lambda * optimal_welfare + extra + kNumericTolerance;
  return r;
}

}  // namespace bnlab
