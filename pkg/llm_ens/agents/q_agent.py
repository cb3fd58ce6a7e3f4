from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from llm_ens.errors import AgentEnvironmentMismatchError, InvalidActionError
from llm_ens.mdp import Environment, StateObs
from llm_ens.utils.seeding import (EPISODE_STREAM, TRAINING_STREAM,
                                   derive_seed, make_rng)

from .config import AgentConfig

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TrainedAgent:
    """
    A Q-table plus where it came from. Rows are read-only numpy arrays;
    states never visited read as all zeros.
    """

    agent_id: str
    env_name: str
    action_count: int
    config: AgentConfig
    train_seed: int
    q_table: dict[int, np.ndarray] = field(default_factory=dict, repr=False)

    def __str__(self):
        return f"TrainedAgent[{self.agent_id}, {len(self.q_table)} states]"

    def q_row(self, state_id: int) -> np.ndarray:
        row = self.q_table.get(state_id)
        if row is None:
            return np.zeros(self.action_count)
        return row

    def q_value(self, state_id: int, action: int) -> float:
        return float(self.q_row(state_id)[action])

    def check_environment(self, env: Environment) -> None:
        if self.env_name != env.name:
            raise AgentEnvironmentMismatchError(self.agent_id, self.env_name,
                                                env.name)


def argmax_uniform(values: np.ndarray, rng: np.random.Generator,
                   atol: float = 0.0) -> int:
    """Index of the maximum, ties broken uniformly with `rng`."""
    best = np.flatnonzero(values >= np.max(values) - atol)
    if len(best) == 1:
        return int(best[0])
    return int(best[rng.integers(len(best))])


def boltzmann(values: np.ndarray, temperature: float = 1.0) -> np.ndarray:
    """Max-shifted softmax of `values` at `temperature`."""
    if temperature <= 0:
        raise ValueError(f"temperature must be positive, got {temperature}")
    values = np.asarray(values, dtype=float)
    weights = np.exp((values - np.max(values)) / temperature)
    return weights / np.sum(weights)


def act_greedy(agent: TrainedAgent, state: StateObs,
               rng: np.random.Generator) -> int:
    return argmax_uniform(agent.q_row(state.state_id), rng)


def action_probabilities(agent: TrainedAgent, state: StateObs,
                         temperature: float = 1.0) -> np.ndarray:
    return boltzmann(agent.q_row(state.state_id), temperature)


def train_q_learning(env: Environment,
                     config: AgentConfig,
                     seed: int,
                     agent_id: str | None = None) -> TrainedAgent:
    """
    One-step Q-learning with an epsilon-greedy behaviour policy whose
    epsilon decays multiplicatively every step down to `epsilon_min`.

    Episode layouts and exploration draw from separate streams derived from
    `seed`, so the same (config, seed) always yields the same table.
    """
    agent_id = agent_id or f"{env.name}-q-seed{seed}"
    rng = make_rng(seed, TRAINING_STREAM)
    n_actions = env.action_count
    q: dict[int, np.ndarray] = {}
    epsilon = config.epsilon_start
    alpha, gamma = config.learning_rate, config.gamma

    def row(state_id):
        if state_id not in q:
            q[state_id] = np.zeros(n_actions)
        return q[state_id]

    for episode in range(config.training_episodes):
        state = env.reset(derive_seed(seed, EPISODE_STREAM, episode))
        episode_return = 0.0
        while not state.done:
            values = row(state.state_id)
            if rng.random() < epsilon:
                action = int(rng.integers(n_actions))
            else:
                action = argmax_uniform(values, rng)

            result = env.step(state, action)
            target = result.reward
            if not env.is_terminal(result.next_state.state_id):
                target += gamma * np.max(row(result.next_state.state_id))
            values[action] += alpha * (target - values[action])

            epsilon = max(config.epsilon_min,
                          epsilon * config.epsilon_decay_per_step)
            episode_return += result.reward
            state = result.next_state

        if (episode + 1) % 1000 == 0:
            logger.debug("%s: episode %d return %.3g epsilon %.4f", agent_id,
                         episode + 1, episode_return, epsilon)

    for values in q.values():
        values.flags.writeable = False

    logger.info("%s: trained %d episodes, %d states visited", agent_id,
                config.training_episodes, len(q))
    return TrainedAgent(agent_id=agent_id,
                        env_name=env.name,
                        action_count=n_actions,
                        config=config,
                        train_seed=seed,
                        q_table=q)


def constant_action_agent(env: Environment, action: int,
                          agent_id: str | None = None) -> TrainedAgent:
    """
    A hand-built agent preferring `action` in every state of a small
    environment (value 1.0 on that action, 0.0 elsewhere).
    """
    if not 0 <= action < env.action_count:
        raise InvalidActionError(
            f"{env.name}: action {action} outside 0..{env.action_count - 1}")
    name = env.spec.action_names[action]
    row = np.zeros(env.action_count)
    row[action] = 1.0
    row.flags.writeable = False
    return TrainedAgent(agent_id=agent_id or f"always-{name}",
                        env_name=env.name,
                        action_count=env.action_count,
                        config=AgentConfig(training_episodes=0),
                        train_seed=0,
                        q_table={s: row for s in env.enumerable_states()})
