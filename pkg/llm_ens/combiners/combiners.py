"""
Rule-based ensemble combiners: voting, rank voting, aggregation and the two
Boltzmann fusions. Every function is pure apart from draws on the
caller-owned RNG.
"""
from __future__ import annotations

from collections.abc import Callable, Sequence
from dataclasses import dataclass

import numpy as np

from llm_ens.agents import TrainedAgent, argmax_uniform, boltzmann
from llm_ens.errors import UnknownCombinerError
from llm_ens.mdp import StateObs

# probability sums that differ by less than this count as tied
TIE_TOLERANCE = 1e-12


@dataclass(frozen=True)
class CombinerInput:
    preferences: np.ndarray  # (agents, actions) raw Q rows
    probabilities: np.ndarray  # (agents, actions) Boltzmann rows
    rng: np.random.Generator
    temperature: float = 1.0

    def __post_init__(self):
        if self.preferences.ndim != 2 or len(self.preferences) < 1:
            raise ValueError("need a 2-D preference array with at least one agent")
        if self.preferences.shape != self.probabilities.shape:
            raise ValueError("preferences and probabilities differ in shape")
        if self.temperature <= 0:
            raise ValueError(f"temperature must be positive, got {self.temperature}")

    @property
    def action_count(self) -> int:
        return self.preferences.shape[1]

    @property
    def agent_count(self) -> int:
        return self.preferences.shape[0]

    @classmethod
    def from_rows(cls, rows, rng: np.random.Generator,
                  temperature: float = 1.0) -> "CombinerInput":
        preferences = np.asarray(rows, dtype=float)
        probabilities = np.array(
            [boltzmann(row, temperature) for row in preferences])
        return cls(preferences, probabilities, rng, temperature)

    @classmethod
    def from_agents(cls, agents: Sequence[TrainedAgent], state: StateObs,
                    rng: np.random.Generator,
                    temperature: float = 1.0) -> "CombinerInput":
        return cls.from_rows([a.q_row(state.state_id) for a in agents], rng,
                             temperature)


@dataclass(frozen=True)
class CombinerOutput:
    chosen_action: int
    fused_distribution: np.ndarray | None = None


def majority_vote(inp: CombinerInput) -> CombinerOutput:
    votes = [argmax_uniform(row, inp.rng) for row in inp.preferences]
    counts = np.bincount(votes, minlength=inp.action_count)
    return CombinerOutput(argmax_uniform(counts, inp.rng))


def borda_scores(row: np.ndarray) -> np.ndarray:
    """
    Borda score of every action for one agent. Rank j (0 = best) scores
    n-1-j; tied values share the mean score of the positions they occupy.
    """
    below = (row[None, :] < row[:, None]).sum(axis=1)
    tied = (row[None, :] == row[:, None]).sum(axis=1) - 1
    return below + tied / 2.0


def rank_vote(inp: CombinerInput) -> CombinerOutput:
    totals = sum(borda_scores(row) for row in inp.preferences)
    return CombinerOutput(argmax_uniform(totals, inp.rng))


def aggregate(inp: CombinerInput) -> CombinerOutput:
    summed = inp.probabilities.sum(axis=0)
    return CombinerOutput(argmax_uniform(summed, inp.rng, TIE_TOLERANCE),
                          summed / inp.agent_count)


def boltzmann_addition(inp: CombinerInput,
                       sample: bool = False) -> CombinerOutput:
    summed = inp.probabilities.sum(axis=0)
    fused = summed / summed.sum()
    if sample:
        action = int(inp.rng.choice(inp.action_count, p=fused))
    else:
        action = argmax_uniform(fused, inp.rng, TIE_TOLERANCE)
    return CombinerOutput(action, fused)


def boltzmann_multiplication(inp: CombinerInput) -> CombinerOutput:
    """
    Normalized product of the Boltzmann rows, computed in the log domain
    from the preferences: sum_m (Q_m - max Q_m) / tau, max-shifted.
    """
    shifted = inp.preferences - inp.preferences.max(axis=1, keepdims=True)
    logits = (shifted / inp.temperature).sum(axis=0)
    fused = np.exp(logits - logits.max())
    fused /= fused.sum()
    action = int(inp.rng.choice(inp.action_count, p=fused))
    return CombinerOutput(action, fused)


COMBINERS: dict[str, Callable[..., CombinerOutput]] = {
    "majority": majority_vote,
    "rank": rank_vote,
    "aggregate": aggregate,
    "boltzmann-add": boltzmann_addition,
    "boltzmann-mul": boltzmann_multiplication,
}


def get_combiner(name: str) -> Callable[..., CombinerOutput]:
    try:
        return COMBINERS[name]
    except KeyError:
        raise UnknownCombinerError(name) from None


def combine(name: str, inp: CombinerInput,
            add_samples: bool = False) -> CombinerOutput:
    combiner = get_combiner(name)
    if combiner is boltzmann_addition:
        return boltzmann_addition(inp, sample=add_samples)
    return combiner(inp)
