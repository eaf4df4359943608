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


#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bnlab/congestion.hpp"
#include "bnlab/equilibrium.hpp"
#include "bnlab/instance.hpp"
#include "bnlab/item_auction.hpp"
#include "bnlab/pipeline.hpp"
#include "bnlab/valuations.hpp"

namespace py = pybind11;

namespace bnlab {
namespace {

// Owns one parsed instance; dictionaries cross the boundary as JSON text.
class PyGame {
 public:
  explicit PyGame(Instance instance) : instance_(std::move(instance)) {}

  static PyGame FromJson(const std::string& text) {
    return PyGame(ParseInstance(Parse(text)));
  }
  static PyGame Load(const std::string& path) { return PyGame(LoadInstance(path)); }

  const std::string& name() const { return instance_.name; }
  std::string family() const { return game().family(); }
  int num_players() const { return game().num_players(); }
  int num_strategic_players() const { return game().num_strategic_players(); }
  std::string objective() const { return ObjectiveName(game().objective()); }
  std::vector<std::string> warnings() const { return instance_.warnings; }

  std::string ToJson() const { return SerializeInstance(game(), instance_.name).dump(); }
  double ExpectedOptimal() const { return ExpectedOptimalWelfare(game()); }
  double EpsilonSlack() const { return FamilyEpsilonSlack(game()); }

  std::string IsBne(const std::string& strategy, double epsilon) const {
    const StrategyProfile s = ParseStrategy(game(), Parse(strategy));
    const BneVerdict v = IsPureBne(game(), s, epsilon);
    Json out;
    out["pass"] = v.pass;
    out["max_regret"] = NumberJson(v.max_regret);
    out["expected_welfare"] = NumberJson(ExpectedWelfare(game(), s));
    return out.dump();
  }

  std::string Enumerate(double epsilon, int threads) const {
    EnumerateOptions o;
    o.epsilon = epsilon;
    o.threads = threads;
    Json out = Json::array();
    for (const Equilibrium& e : EnumeratePureBne(game(), o)) {
      Json j;
      j["strategy"] = StrategyJson(game(), e.strategy);
      j["regret"] = NumberJson(e.regret);
      j["welfare"] = NumberJson(ExpectedWelfare(game(), e.strategy));
      out.push_back(j);
    }
    return out.dump();
  }

  std::string Poa(std::optional<double> epsilon, int threads) const {
    EnumerateOptions o;
    o.threads = threads;
    PoaResult r;
    if (epsilon) {
      o.epsilon = *epsilon;
      r = BayesNashPoa(game(), o);
    } else {
      const std::vector<double> ladder = EpsilonLadder(FamilyEpsilonSlack(game()));
      r = BayesNashPoaOnLadder(game(), ladder, o);
    }
    Json out;
    out["found"] = r.found;
    out["epsilon"] = NumberJson(r.epsilon);
    out["count"] = r.equilibria.size();
    out["optimal_welfare"] = NumberJson(r.optimal_welfare);
    if (r.found) {
      out["worst_welfare"] = NumberJson(r.worst_welfare);
      out["poa"] = NumberJson(r.poa);
    }
    return out.dump();
  }

  // (report JSON, exit code, {table name: CSV text}).
  py::tuple Run(const std::string& pipeline, std::optional<std::uint64_t> seed,
                int threads, std::optional<double> epsilon) const {
    PipelineOptions o;
    o.seed = seed;
    o.threads = threads;
    o.epsilon = epsilon;
    const PipelineResult r = RunPipeline(instance_, Parse(pipeline), o);
    py::dict tables;
    for (const CsvTable& t : r.tables) tables[py::str(t.name)] = t.content;
    return py::make_tuple(r.report.dump(), r.exit_code, tables);
  }

 private:
  static Json Parse(const std::string& text) {
    try {
      return Json::parse(text);
    } catch (const Json::parse_error& e) {
      throw InputError(std::string("malformed JSON: ") + e.what());
    }
  }
  const BayesianGame& game() const { return *instance_.game; }

  Instance instance_;
};

double Beta(int items, std::vector<double> values) {
  return BetaFractionallySubadditive(TableValuation(items, std::move(values)));
}

py::tuple DelayParametersFor(std::vector<int> degrees) {
  const DelayParameters p = BestDelayParameters(degrees);
  return py::make_tuple(p.bounded, p.lambda, p.mu, p.bound);
}

}  // namespace
}  // namespace bnlab

PYBIND11_MODULE(_core, m) {
  using bnlab::PyGame;
  m.doc() = "Bayes-Nash equilibrium and smoothness laboratory";

  py::register_exception<bnlab::Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<bnlab::InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<bnlab::GuardExceededError>(m, "GuardExceededError",
                                                    PyExc_RuntimeError);

  m.attr("EXIT_OK") = bnlab::kExitOk;
  m.attr("EXIT_CERTIFICATE_FAILURE") = bnlab::kExitCertificateFailure;
  m.attr("EXIT_INPUT_ERROR") = bnlab::kExitInputError;
  m.attr("EXIT_GUARD_REFUSAL") = bnlab::kExitGuardRefusal;

  py::class_<PyGame>(m, "Game")
      .def_static("from_json", &PyGame::FromJson, py::arg("text"))
      .def_static("load", &PyGame::Load, py::arg("path"))
      .def_property_readonly("name", &PyGame::name)
      .def_property_readonly("family", &PyGame::family)
      .def_property_readonly("num_players", &PyGame::num_players)
      .def_property_readonly("num_strategic_players", &PyGame::num_strategic_players)
      .def_property_readonly("objective", &PyGame::objective)
      .def_property_readonly("warnings", &PyGame::warnings)
      .def("to_json", &PyGame::ToJson)
      .def("expected_optimal_welfare", &PyGame::ExpectedOptimal)
      .def("epsilon_slack", &PyGame::EpsilonSlack)
      .def("is_bne", &PyGame::IsBne, py::arg("strategy"), py::arg("epsilon") = 0.0)
      .def("enumerate_bne", &PyGame::Enumerate, py::arg("epsilon") = 0.0,
           py::arg("threads") = 1)
      .def("poa", &PyGame::Poa, py::arg("epsilon") = std::nullopt,
           py::arg("threads") = 1)
      .def("run", &PyGame::Run, py::arg("pipeline"), py::arg("seed") = std::nullopt,
           py::arg("threads") = 1, py::arg("epsilon") = std::nullopt);

  m.def("beta_fractionally_subadditive", &bnlab::Beta, py::arg("items"),
        py::arg("values"));
  m.def("randomized_bid_utility", &bnlab::RandomizedBidUtility, py::arg("value"),
        py::arg("threshold"));
  m.def("best_delay_parameters", &bnlab::DelayParametersFor, py::arg("degrees"));
}
