from __future__ import annotations

import logging
from collections.abc import Callable, Sequence
from concurrent.futures import ThreadPoolExecutor

from llm_ens.agents import TrainedAgent, act_greedy
from llm_ens.combiners import CombinerInput, combine, get_combiner
from llm_ens.errors import CategorizerError, EpisodeAbortedError
from llm_ens.mdp import EpisodeTrace, Environment
from llm_ens.profile import RewardDistribution
from llm_ens.situations import Categorizer, should_categorize
from llm_ens.utils.seeding import POLICY_STREAM, make_rng

from .result import EnsembleConfig, RunResult

logger = logging.getLogger(__name__)


def _check_agents(agents: Sequence[TrainedAgent], env: Environment) -> None:
    if not agents:
        raise ValueError("at least one agent is required")
    ids = [a.agent_id for a in agents]
    if len(set(ids)) != len(ids):
        raise ValueError(f"agent ids must be unique, got {ids}")
    for agent in agents:
        agent.check_environment(env)


def run_single_agent_episode(agent: TrainedAgent, env: Environment,
                             seed: int) -> RunResult:
    _check_agents([agent], env)
    state = env.reset(seed)
    rng = make_rng(seed, POLICY_STREAM)
    trace = EpisodeTrace()
    while not state.done:
        action = act_greedy(agent, state, rng)
        result = env.step(state, action)
        trace.append(state, action, result.reward)
        state = result.next_state
    return RunResult(method=agent.agent_id,
                     seed=seed,
                     trace=trace,
                     selection_timeline=[(0, agent.agent_id)])


def run_llm_ens_episode(agents: Sequence[TrainedAgent],
                        dist: RewardDistribution, categorizer: Categorizer,
                        env: Environment, config: EnsembleConfig) -> RunResult:
    """
    Every K steps, categorize the state and hand control to the agent with
    the best average reward in that situation; that agent acts greedily
    until the next categorization.
    """
    _check_agents(agents, env)
    by_id = {a.agent_id: a for a in agents}
    ids = list(by_id)

    seed = config.rng_seed
    state = env.reset(seed)
    rng = make_rng(seed, POLICY_STREAM)
    result = RunResult(method="llm-ens", seed=seed, trace=EpisodeTrace())
    situation = None
    selected = agents[0]

    while not state.done:
        if should_categorize(state.step_index, config.cadence):
            try:
                situation = categorizer.categorize(state)
            except CategorizerError as e:
                if (config.on_categorizer_failure == "hold-previous"
                        and situation is not None):
                    logger.warning("step %d: %s; holding situation %d",
                                   state.step_index, e, situation)
                else:
                    raise EpisodeAbortedError(state.step_index, e) from e
            result.situation_timeline.append((state.step_index, situation))

            chosen = dist.best_agent_for(situation, ids)
            result.selection_timeline.append((state.step_index, chosen))
            selected = by_id[chosen]

        action = act_greedy(selected, state, rng)
        step = env.step(state, action)
        result.trace.append(state, action, step.reward)
        state = step.next_state

    result.categorizer_call_count = len(result.situation_timeline)
    return result


def run_combiner_episode(agents: Sequence[TrainedAgent],
                         combiner_name: str,
                         env: Environment,
                         seed: int,
                         temperature: float = 1.0,
                         add_samples: bool = False) -> RunResult:
    """Fuse all agents with a rule-based combiner at every step."""
    get_combiner(combiner_name)
    _check_agents(agents, env)

    state = env.reset(seed)
    rng = make_rng(seed, POLICY_STREAM)
    trace = EpisodeTrace()
    while not state.done:
        inp = CombinerInput.from_agents(agents, state, rng, temperature)
        action = combine(combiner_name, inp, add_samples).chosen_action
        step = env.step(state, action)
        trace.append(state, action, step.reward)
        state = step.next_state
    return RunResult(method=combiner_name, seed=seed, trace=trace)


def evaluate_runs(run_fn: Callable[[int], RunResult],
                  episodes: int,
                  seed_base: int,
                  max_workers: int | None = None) -> list[RunResult]:
    """
    Run seeds seed_base .. seed_base+episodes-1 and return results in seed
    order. With `max_workers`, `run_fn` must not share an Environment
    between calls.
    """
    if episodes < 1:
        raise ValueError("episodes must be positive")
    seeds = range(seed_base, seed_base + episodes)
    if max_workers is None or max_workers <= 1:
        return [run_fn(seed) for seed in seeds]
    with ThreadPoolExecutor(max_workers=max_workers) as pool:
        return list(pool.map(run_fn, seeds))


def evaluate(run_fn: Callable[[int], RunResult],
             episodes: int,
             seed_base: int,
             max_workers: int | None = None) -> list[float]:
    return [
        r.episode_return
        for r in evaluate_runs(run_fn, episodes, seed_base, max_workers)
    ]
