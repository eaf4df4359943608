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

#include "bnlab/instance.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "bnlab/congestion.hpp"
#include "bnlab/effort.hpp"
#include "bnlab/explicit_game.hpp"
#include "bnlab/greedy_auction.hpp"
#include "bnlab/item_auction.hpp"
#include "bnlab/valuations.hpp"

namespace bnlab {
namespace {

// A JSON value with its location, for error messages.
class Node {
 public:
  Node(const Json& value, std::string path)
      : value_(value), path_(std::move(path)) {}

  const std::string& path() const { return path_; }
  const Json& json() const { return value_; }

  [[noreturn]] void Fail(const std::string& message) const {
    throw InputError(path_.empty() ? "/" : path_, message);
  }

  bool Has(const std::string& key) const {
    return value_.is_object() && value_.contains(key);
  }
  Node operator[](const std::string& key) const {
    if (!value_.is_object()) Fail("expected an object");
    if (!value_.contains(key)) Fail("missing field '" + key + "'");
    return Node(value_.at(key), path_ + "/" + key);
  }
  Node operator[](std::size_t index) const {
    return Node(value_.at(index), path_ + "/" + std::to_string(index));
  }
  std::size_t size() const {
    if (!value_.is_array()) Fail("expected an array");
    return value_.size();
  }
  std::vector<Node> Items() const {
    std::vector<Node> out;
    for (std::size_t k = 0; k < size(); ++k) out.push_back((*this)[k]);
    return out;
  }

  double Number() const {
    if (!value_.is_number()) Fail("expected a number");
    const double x = value_.get<double>();
    if (!std::isfinite(x)) Fail("expected a finite number");
    return x;
  }
  int Int() const {
    if (!value_.is_number_integer()) Fail("expected an integer");
    return value_.get<int>();
  }
  bool Bool() const {
    if (!value_.is_boolean()) Fail("expected a boolean");
    return value_.get<bool>();
  }
  std::string String() const {
    if (!value_.is_string()) Fail("expected a string");
    return value_.get<std::string>();
  }
  std::vector<double> Numbers() const {
    std::vector<double> out;
    for (const Node& n : Items()) out.push_back(n.Number());
    return out;
  }
  std::vector<int> Ints() const {
    std::vector<int> out;
    for (const Node& n : Items()) out.push_back(n.Int());
    return out;
  }

 private:
  const Json& value_;
  std::string path_;
};

// Runs `build`, attaching `where` to family invariant violations.
template <class F>
auto AtPath(const Node& where, F&& build) -> decltype(build()) {
  try {
    return build();
  } catch (const InputError& e) {
    if (!e.where().empty()) throw;
    throw InputError(where.path().empty() ? "/" : where.path(), e.what());
  }
}

TypeDistribution ParseTypes(const Node& types, std::vector<std::string>* warnings) {
  if (types.size() == 0) types.Fail("at least one type required");
  std::vector<std::string> labels;
  std::vector<double> probabilities;
  for (std::size_t k = 0; k < types.size(); ++k) {
    const Node t = types[k];
    labels.push_back(t.Has("label") ? t["label"].String()
                                    : "t" + std::to_string(k));
    probabilities.push_back(t["probability"].Number());
  }
  return AtPath(types, [&] {
    return TypeDistribution::Normalize(labels, probabilities, warnings,
                                       types.path());
  });
}

Json TypesHeader(const TypeDistribution& d, TypeId t) {
  Json j;
  j["label"] = d.label(t);
  j["probability"] = d.probability(t);
  return j;
}

ItemSet ParseSet(const Node& node, int items) {
  ItemSet s = 0;
  for (const Node& k : node.Items()) {
    const int item = k.Int();
    if (item < 0 || item >= items) k.Fail("unknown item");
    if (Contains(s, item)) k.Fail("repeated item");
    s |= ItemSet{1} << item;
  }
  return s;
}

Json SetJson(ItemSet s) {
  Json j = Json::array();
  for (int k = 0; k < kMaxItems; ++k) {
    if (Contains(s, k)) j.push_back(k);
  }
  return j;
}

Valuation ParseValuation(const Node& node, int items) {
  const std::string kind = node["kind"].String();
  if (kind == "xos") {
    std::vector<std::vector<double>> clauses;
    for (const Node& c : node["clauses"].Items()) clauses.push_back(c.Numbers());
    return AtPath(node, [&] { return Valuation(XosValuation(items, clauses)); });
  }
  if (kind == "table") {
    const std::vector<double> values = node["values"].Numbers();
    return AtPath(node, [&] { return Valuation(TableValuation(items, values)); });
  }
  node["kind"].Fail("valuation kind must be 'xos' or 'table'");
}

Json ValuationJson(const Valuation& v) {
  Json j;
  if (v.is_xos()) {
    j["kind"] = "xos";
    j["clauses"] = v.xos().clauses();
  } else {
    j["kind"] = "table";
    j["values"] = v.table().values();
  }
  return j;
}

BidGrid ParseGrid(const Node& node) {
  if (node.Has("points")) {
    const auto points = node["points"].Numbers();
    return AtPath(node, [&] { return BidGrid(points); });
  }
  const double step = node["step"].Number();
  const double max = node["max"].Number();
  return AtPath(node, [&] { return BidGrid::Uniform(step, max); });
}

Json GridJson(const BidGrid& grid) {
  Json j;
  j["points"] = grid.points();
  return j;
}

// Bidders with type lists carrying valuations.
void ParseBidders(const Node& bidders, int items,
                  std::vector<TypeDistribution>* types,
                  std::vector<std::vector<Valuation>>* valuations,
                  std::vector<std::string>* warnings) {
  if (bidders.size() == 0) bidders.Fail("at least one bidder required");
  for (const Node& b : bidders.Items()) {
    const Node ts = b["types"];
    types->push_back(ParseTypes(ts, warnings));
    std::vector<Valuation> vs;
    for (const Node& t : ts.Items()) {
      vs.push_back(ParseValuation(t["valuation"], items));
    }
    valuations->push_back(std::move(vs));
  }
}

Json BiddersJson(const std::vector<TypeDistribution>& types,
                 const std::vector<std::vector<Valuation>>& valuations) {
  Json bidders = Json::array();
  for (std::size_t i = 0; i < types.size(); ++i) {
    Json ts = Json::array();
    for (TypeId t = 0; t < types[i].size(); ++t) {
      Json entry = TypesHeader(types[i], t);
      entry["valuation"] = ValuationJson(valuations[i][t]);
      ts.push_back(entry);
    }
    Json b;
    b["types"] = ts;
    bidders.push_back(b);
  }
  return bidders;
}

int ParseItems(const Node& doc) {
  const int items = doc["items"].Int();
  if (items < 1 || items > kMaxItems) doc["items"].Fail("item count out of range");
  return items;
}

std::unique_ptr<BayesianGame> ParseExplicit(const Node& doc,
                                            std::vector<std::string>* warnings) {
  ExplicitGameSpec spec;
  if (doc.Has("objective")) {
    const std::string o = doc["objective"].String();
    if (o == "utility") {
      spec.objective = Objective::kUtility;
    } else if (o == "cost") {
      spec.objective = Objective::kCost;
    } else {
      doc["objective"].Fail("objective must be 'utility' or 'cost'");
    }
  }
  const Node players = doc["players"];
  if (players.size() == 0) players.Fail("at least one player required");
  for (const Node& p : players.Items()) {
    std::vector<std::string> labels;
    for (const Node& a : p["actions"].Items()) labels.push_back(a.String());
    if (labels.empty()) p["actions"].Fail("at least one action required");
    spec.action_labels.push_back(labels);
    const Node ts = p["types"];
    spec.types.push_back(ParseTypes(ts, warnings));
    std::vector<std::vector<ActionId>> available;
    std::vector<std::vector<double>> payoffs;
    for (const Node& t : ts.Items()) {
      if (t.Has("available")) {
        std::vector<ActionId> acts = t["available"].Ints();
        std::sort(acts.begin(), acts.end());
        available.push_back(acts);
      } else {
        std::vector<ActionId> acts(labels.size());
        for (std::size_t a = 0; a < acts.size(); ++a) acts[a] = static_cast<ActionId>(a);
        available.push_back(acts);
      }
      payoffs.push_back(t["payoffs"].Numbers());
    }
    spec.available.push_back(available);
    spec.payoffs.push_back(payoffs);
  }
  return AtPath(doc, [&]() -> std::unique_ptr<BayesianGame> {
    return std::make_unique<ExplicitGame>(std::move(spec));
  });
}

Json ExplicitJson(const ExplicitGame& game) {
  const auto& spec = game.spec();
  Json doc;
  doc["family"] = "explicit";
  doc["objective"] = ObjectiveName(spec.objective);
  Json players = Json::array();
  for (std::size_t i = 0; i < spec.types.size(); ++i) {
    Json p;
    p["actions"] = spec.action_labels[i];
    Json ts = Json::array();
    for (TypeId t = 0; t < spec.types[i].size(); ++t) {
      Json entry = TypesHeader(spec.types[i], t);
      entry["available"] = spec.available[i][t];
      entry["payoffs"] = spec.payoffs[i][t];
      ts.push_back(entry);
    }
    p["types"] = ts;
    players.push_back(p);
  }
  doc["players"] = players;
  return doc;
}

std::unique_ptr<BayesianGame> ParseItemAuction(
    const Node& doc, std::vector<std::string>* warnings) {
  ItemAuctionSpec spec;
  spec.pricing = AtPath(doc["pricing"],
                        [&] { return ParsePricing(doc["pricing"].String()); });
  spec.items = ParseItems(doc);
  spec.grid = ParseGrid(doc["grid"]);
  if (doc.Has("no_overbidding")) {
    spec.no_overbidding = doc["no_overbidding"].Bool();
  }
  ParseBidders(doc["bidders"], spec.items, &spec.types, &spec.valuations,
               warnings);
  return AtPath(doc, [&]() -> std::unique_ptr<BayesianGame> {
    return std::make_unique<ItemAuction>(std::move(spec));
  });
}

Json ItemAuctionJson(const ItemAuction& game) {
  const auto& spec = game.spec();
  Json doc;
  doc["family"] = "item-auction";
  doc["pricing"] = PricingName(spec.pricing);
  doc["items"] = spec.items;
  doc["grid"] = GridJson(spec.grid);
  doc["no_overbidding"] = game.no_overbidding();
  doc["bidders"] = BiddersJson(spec.types, spec.valuations);
  return doc;
}

Feasibility ParseFeasibility(const Node& node, int players, int items) {
  const std::string kind = node["kind"].String();
  if (kind == "disjoint-sets") return Feasibility::DisjointSets();
  if (kind == "unrestricted") return Feasibility::Unrestricted();
  if (kind == "explicit") {
    std::vector<std::vector<ItemSet>> allocations;
    for (const Node& a : node["allocations"].Items()) {
      if (a.size() != static_cast<std::size_t>(players)) {
        a.Fail("allocation needs one set per bidder");
      }
      std::vector<ItemSet> sets;
      for (const Node& s : a.Items()) sets.push_back(ParseSet(s, items));
      allocations.push_back(sets);
    }
    return AtPath(node, [&] {
      return Feasibility::Explicit(players, items, allocations);
    });
  }
  node["kind"].Fail(
      "feasibility kind must be 'disjoint-sets', 'unrestricted' or 'explicit'");
}

std::unique_ptr<BayesianGame> ParseGreedyAuction(
    const Node& doc, std::vector<std::string>* warnings) {
  GreedyAuctionSpec spec;
  spec.items = ParseItems(doc);
  spec.priority = AtPath(doc["priority"],
                         [&] { return ParsePriority(doc["priority"].String()); });
  if (doc.Has("language")) {
    spec.language = AtPath(doc["language"], [&] {
      return ParseBidLanguage(doc["language"].String());
    });
  }
  spec.grid = ParseGrid(doc["grid"]);
  ParseBidders(doc["bidders"], spec.items, &spec.types, &spec.valuations,
               warnings);
  spec.feasibility =
      doc.Has("feasibility")
          ? ParseFeasibility(doc["feasibility"],
                             static_cast<int>(spec.types.size()), spec.items)
          : Feasibility::DisjointSets();
  return AtPath(doc, [&]() -> std::unique_ptr<BayesianGame> {
    return std::make_unique<GreedyAuction>(std::move(spec));
  });
}

Json GreedyAuctionJson(const GreedyAuction& game) {
  const auto& spec = game.spec();
  Json doc;
  doc["family"] = "greedy-auction";
  doc["items"] = spec.items;
  doc["priority"] = PriorityName(spec.priority);
  doc["language"] = BidLanguageName(spec.language);
  doc["grid"] = GridJson(spec.grid);
  Json feasibility;
  feasibility["kind"] = spec.feasibility.name();
  if (spec.feasibility.kind() == Feasibility::Kind::kExplicit) {
    Json allocations = Json::array();
    for (const auto& alloc : spec.feasibility.listed()) {
      Json sets = Json::array();
      for (ItemSet s : alloc) sets.push_back(SetJson(s));
      allocations.push_back(sets);
    }
    feasibility["allocations"] = allocations;
  }
  doc["feasibility"] = feasibility;
  doc["bidders"] = BiddersJson(spec.types, spec.valuations);
  return doc;
}

std::unique_ptr<BayesianGame> ParseCongestion(
    const Node& doc, std::vector<std::string>* warnings) {
  CongestionSpec spec;
  for (const Node& e : doc["edges"].Items()) {
    const auto coefficients = e.Numbers();
    spec.edges.push_back(AtPath(e, [&] { return Polynomial(coefficients); }));
  }
  const Node players = doc["players"];
  for (const Node& p : players.Items()) {
    std::vector<std::vector<int>> paths;
    for (const Node& path : p["paths"].Items()) paths.push_back(path.Ints());
    spec.paths.push_back(paths);
    const Node ts = p["types"];
    spec.types.push_back(ParseTypes(ts, warnings));
    std::vector<double> weights;
    for (const Node& t : ts.Items()) weights.push_back(t["weight"].Number());
    spec.weights.push_back(weights);
  }
  return AtPath(doc, [&]() -> std::unique_ptr<BayesianGame> {
    return std::make_unique<CongestionGame>(std::move(spec));
  });
}

Json CongestionJson(const CongestionGame& game) {
  const auto& spec = game.spec();
  Json doc;
  doc["family"] = "congestion";
  Json edges = Json::array();
  for (const auto& e : spec.edges) edges.push_back(e.coefficients());
  doc["edges"] = edges;
  Json players = Json::array();
  for (std::size_t i = 0; i < spec.types.size(); ++i) {
    Json p;
    p["paths"] = spec.paths[i];
    Json ts = Json::array();
    for (TypeId t = 0; t < spec.types[i].size(); ++t) {
      Json entry = TypesHeader(spec.types[i], t);
      entry["weight"] = spec.weights[i][t];
      ts.push_back(entry);
    }
    p["types"] = ts;
    players.push_back(p);
  }
  doc["players"] = players;
  return doc;
}

ConcaveValue ParseProject(const Node& node) {
  return AtPath(node, [&] {
    if (node.Has("breakpoints")) {
      std::vector<double> xs;
      std::vector<double> ys;
      for (const Node& bp : node["breakpoints"].Items()) {
        if (bp.size() != 2) bp.Fail("breakpoint must be [x, y]");
        xs.push_back(bp[0].Number());
        ys.push_back(bp[1].Number());
      }
      return ConcaveValue(xs, ys);
    }
    const std::string kind = node["kind"].String();
    if (kind == "linear") return ConcaveValue::Linear(node["slope"].Number());
    if (kind == "capped") return ConcaveValue::Capped(node["cap"].Number());
    if (kind == "sqrt" || kind == "log1p") {
      const double max = node["max"].Number();
      const int pieces = node["pieces"].Int();
      return kind == "sqrt" ? ConcaveValue::Sqrt(max, pieces)
                            : ConcaveValue::Log1p(max, pieces);
    }
    node["kind"].Fail(
        "project kind must be 'linear', 'capped', 'sqrt' or 'log1p'");
  });
}

std::unique_ptr<BayesianGame> ParseEffort(const Node& doc,
                                          std::vector<std::string>* warnings) {
  EffortSpec spec;
  spec.delta = doc["delta"].Number();
  for (const Node& p : doc["projects"].Items()) {
    spec.projects.push_back(ParseProject(p));
  }
  for (const Node& p : doc["players"].Items()) {
    const Node ts = p["types"];
    spec.types.push_back(ParseTypes(ts, warnings));
    std::vector<EffortType> kinds;
    for (const Node& t : ts.Items()) {
      kinds.push_back({t["ability"].Numbers(), t["budget"].Number()});
    }
    spec.kinds.push_back(kinds);
  }
  return AtPath(doc, [&]() -> std::unique_ptr<BayesianGame> {
    return std::make_unique<EffortGame>(std::move(spec));
  });
}

Json EffortJson(const EffortGame& game) {
  const auto& spec = game.spec();
  Json doc;
  doc["family"] = "effort";
  doc["delta"] = spec.delta;
  Json projects = Json::array();
  for (const auto& v : spec.projects) {
    Json bps = Json::array();
    for (std::size_t k = 0; k < v.xs().size(); ++k) {
      bps.push_back(Json::array({v.xs()[k], v.ys()[k]}));
    }
    Json p;
    p["breakpoints"] = bps;
    projects.push_back(p);
  }
  doc["projects"] = projects;
  Json players = Json::array();
  for (std::size_t i = 0; i < spec.types.size(); ++i) {
    Json ts = Json::array();
    for (TypeId t = 0; t < spec.types[i].size(); ++t) {
      Json entry = TypesHeader(spec.types[i], t);
      entry["ability"] = spec.kinds[i][t].ability;
      entry["budget"] = spec.kinds[i][t].budget;
      ts.push_back(entry);
    }
    Json p;
    p["types"] = ts;
    players.push_back(p);
  }
  doc["players"] = players;
  return doc;
}

}  // namespace

Instance ParseInstance(const Json& document) {
  const Node doc(document, "");
  if (!document.is_object()) doc.Fail("instance must be a JSON object");
  Instance out;
  if (doc.Has("name")) out.name = doc["name"].String();
  const std::string family = doc["family"].String();
  if (family == "explicit") {
    out.game = ParseExplicit(doc, &out.warnings);
  } else if (family == "item-auction") {
    out.game = ParseItemAuction(doc, &out.warnings);
  } else if (family == "greedy-auction") {
    out.game = ParseGreedyAuction(doc, &out.warnings);
  } else if (family == "congestion") {
    out.game = ParseCongestion(doc, &out.warnings);
  } else if (family == "effort") {
    out.game = ParseEffort(doc, &out.warnings);
  } else {
    doc["family"].Fail("unknown family '" + family + "'");
  }
  return out;
}

Json ReadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path, "cannot open file");
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return Json::parse(buffer.str());
  } catch (const Json::parse_error& e) {
    throw InputError(path, std::string("malformed JSON: ") + e.what());
  }
}

Instance LoadInstance(const std::string& path) {
  return ParseInstance(ReadJsonFile(path));
}

Json SerializeInstance(const BayesianGame& game, const std::string& name) {
  Json doc;
  if (auto* g = dynamic_cast<const ExplicitGame*>(&game)) {
    doc = ExplicitJson(*g);
  } else if (auto* g = dynamic_cast<const ItemAuction*>(&game)) {
    doc = ItemAuctionJson(*g);
  } else if (auto* g = dynamic_cast<const GreedyAuction*>(&game)) {
    doc = GreedyAuctionJson(*g);
  } else if (auto* g = dynamic_cast<const CongestionGame*>(&game)) {
    doc = CongestionJson(*g);
  } else if (auto* g = dynamic_cast<const EffortGame*>(&game)) {
    doc = EffortJson(*g);
  } else {
    throw InputError("family '" + game.family() + "' cannot be serialized");
  }
  if (name.empty()) return doc;
  Json named;
  named["name"] = name;
  named.update(doc);
  return named;
}

double FamilyEpsilonSlack(const BayesianGame& game) {
  if (auto* g = dynamic_cast<const ItemAuction*>(&game)) return g->grid().step();
  if (auto* g = dynamic_cast<const GreedyAuction*>(&game)) {
    return g->mechanism().grid().step();
  }
  if (auto* g = dynamic_cast<const EffortGame*>(&game)) {
    double slope = 0.0;
    for (const auto& v : g->spec().projects) {
      slope = std::max(slope, (v.ys()[1] - v.ys()[0]) / (v.xs()[1] - v.xs()[0]));
    }
    double ability = 0.0;
    for (const auto& kinds : g->spec().kinds) {
      for (const auto& k : kinds) {
        for (double a : k.ability) ability = std::max(ability, a);
      }
    }
    const double slack = g->spec().delta * slope * ability;
    return slack > 0.0 ? slack : g->spec().delta;
  }
  const double scale = std::abs(ExpectedOptimalWelfare(game));
  return scale > 0.0 ? 0.01 * scale : 0.01;
}

}  // namespace bnlab
