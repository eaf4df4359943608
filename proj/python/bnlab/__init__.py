# Copyright 2026 The bnlab Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Python access to the bnlab equilibrium and smoothness library."""

import json
from typing import Any, Dict, List, NamedTuple, Optional, Union

from bnlab import _core
from bnlab._core import (
    EXIT_CERTIFICATE_FAILURE,
    EXIT_GUARD_REFUSAL,
    EXIT_INPUT_ERROR,
    EXIT_OK,
    Error,
    GuardExceededError,
    InputError,
    beta_fractionally_subadditive,
    randomized_bid_utility,
)

__all__ = [
    "DelayParameters", "EXIT_CERTIFICATE_FAILURE", "EXIT_GUARD_REFUSAL",
    "EXIT_INPUT_ERROR", "EXIT_OK", "Error", "Game", "GuardExceededError",
    "InputError", "PipelineResult", "beta_fractionally_subadditive",
    "best_delay_parameters", "load", "randomized_bid_utility",
]

Document = Union[str, Dict[str, Any]]


def _text(document: Document) -> str:
  return document if isinstance(document, str) else json.dumps(document)


class PipelineResult(NamedTuple):
  report: Dict[str, Any]
  exit_code: int
  tables: Dict[str, str]


class DelayParameters(NamedTuple):
  bounded: bool
  lam: float
  mu: float
  bound: float


class Game:
  """A game parsed from an instance document."""

  def __init__(self, document: Document):
    self._game = _core.Game.from_json(_text(document))

  @classmethod
  def load(cls, path: str) -> "Game":
    game = cls.__new__(cls)
    game._game = _core.Game.load(path)
    return game

  @property
  def name(self) -> str:
    return self._game.name

  @property
  def family(self) -> str:
    return self._game.family

  @property
  def num_players(self) -> int:
    return self._game.num_players

  @property
  def num_strategic_players(self) -> int:
    return self._game.num_strategic_players

  @property
  def objective(self) -> str:
    return self._game.objective

  @property
  def warnings(self) -> List[str]:
    return list(self._game.warnings)

  def to_dict(self) -> Dict[str, Any]:
    return json.loads(self._game.to_json())

  def expected_optimal_welfare(self) -> float:
    return self._game.expected_optimal_welfare()

  def epsilon_slack(self) -> float:
    return self._game.epsilon_slack()

  def is_bne(self, strategy: Any, epsilon: float = 0.0) -> Dict[str, Any]:
    return json.loads(self._game.is_bne(json.dumps(strategy), epsilon))

  def enumerate_bne(self, epsilon: float = 0.0,
                    threads: int = 1) -> List[Dict[str, Any]]:
    return json.loads(self._game.enumerate_bne(epsilon, threads))

  def poa(self, epsilon: Optional[float] = None,
          threads: int = 1) -> Dict[str, Any]:
    return json.loads(self._game.poa(epsilon, threads))

  def run(self, pipeline: Document, seed: Optional[int] = None,
          threads: int = 1, epsilon: Optional[float] = None) -> PipelineResult:
    report, code, tables = self._game.run(_text(pipeline), seed, threads,
                                          epsilon)
    return PipelineResult(json.loads(report), code, dict(tables))


def load(path: str) -> Game:
  return Game.load(path)


def best_delay_parameters(degrees: List[int]) -> DelayParameters:
  return DelayParameters(*_core.best_delay_parameters(list(degrees)))
