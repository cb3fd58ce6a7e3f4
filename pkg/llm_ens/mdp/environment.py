from __future__ import annotations

from abc import ABC, abstractmethod
from collections.abc import Callable, Iterable
from dataclasses import dataclass

import numpy as np

from llm_ens.errors import (EpisodeFinishedError, InvalidActionError,
                            UnsupportedDynamicsError)
from llm_ens.utils.seeding import WORLD_STREAM, make_rng

from .types import EnvSpec, StateObs, StepResult


@dataclass(frozen=True)
class DeterministicModel:
    start_id: int
    transition: Callable[[int, int], tuple[int, float]]
    is_terminal: Callable[[int], bool]
    action_count: int
    horizon: int


class Environment(ABC):
    """
    A discrete, fixed-start MDP whose states are plain integers.

    The instance owns the world RNG stream (hazards, respawns); `reset`
    reseeds it, so one instance runs one episode at a time.
    """

    spec: EnvSpec

    def __init__(self):
        self._world_rng: np.random.Generator = make_rng(0, WORLD_STREAM)
        self._start_id: int | None = None

    def __str__(self):
        return f"{self.__class__.__name__}[{self.spec.name}]"

    @property
    def name(self) -> str:
        return self.spec.name

    @property
    def action_count(self) -> int:
        return self.spec.action_count

    def reset(self, seed: int) -> StateObs:
        self._world_rng = make_rng(seed, WORLD_STREAM)
        self._start_id = self._initial_state_id()
        return StateObs(self._start_id, 0, False)

    def step(self, state: StateObs, action: int) -> StepResult:
        if state.done:
            raise EpisodeFinishedError(
                f"{self.name}: cannot step from a finished state")
        if not 0 <= action < self.action_count:
            raise InvalidActionError(
                f"{self.name}: action {action} outside 0..{self.action_count - 1}"
            )

        next_id, reward = self._transition(state.state_id, action)
        step_index = state.step_index + 1
        done = self.is_terminal(next_id) or step_index >= self.spec.max_steps
        return StepResult(StateObs(next_id, step_index, done), float(reward),
                          done)

    def deterministic_model(self) -> DeterministicModel:
        if not self.is_deterministic():
            raise UnsupportedDynamicsError(
                f"{self.name}: transitions depend on the world RNG stream")
        if self._start_id is None:
            self.reset(0)
        return DeterministicModel(
            start_id=self._start_id,
            transition=self._transition,
            is_terminal=self.is_terminal,
            action_count=self.action_count,
            horizon=self.spec.max_steps,
        )

    def enumerable_states(self) -> Iterable[int]:
        raise UnsupportedDynamicsError(
            f"{self.name}: state space is too large to enumerate")

    def is_deterministic(self) -> bool:
        return False

    @abstractmethod
    def _initial_state_id(self) -> int:
        ...

    @abstractmethod
    def _transition(self, state_id: int, action: int) -> tuple[int, float]:
        ...

    @abstractmethod
    def is_terminal(self, state_id: int) -> bool:
        ...

    @abstractmethod
    def render_text(self, state: StateObs) -> str:
        ...

    @abstractmethod
    def oracle_situation(self, state: StateObs) -> int:
        ...

    @abstractmethod
    def oracle_situations(self) -> list[tuple[str, str]]:
        """(name, description) of every ground-truth situation, in id order."""
