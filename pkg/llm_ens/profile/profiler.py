from __future__ import annotations

import logging
from collections.abc import Sequence

from llm_ens.agents import TrainedAgent, act_greedy
from llm_ens.mdp import Environment
from llm_ens.situations import Categorizer, CategorizerConfig, should_categorize
from llm_ens.utils.seeding import POLICY_STREAM, make_rng

from .distribution import RewardDistribution, SegmentRecord

logger = logging.getLogger(__name__)


def profile_agent(agent: TrainedAgent, env: Environment,
                  categorizer: Categorizer, config: CategorizerConfig,
                  episodes: int, seed: int) -> list[SegmentRecord]:
    """
    Greedy rollouts cut into segments at every categorization point; each
    segment is labelled with the situation seen when it opened and carries
    the reward summed until the next point or the episode end.

    Episode i runs with seed `seed + i`.
    """
    if episodes < 1:
        raise ValueError("episodes must be positive")
    agent.check_environment(env)

    records = []
    for episode in range(episodes):
        episode_seed = seed + episode
        state = env.reset(episode_seed)
        rng = make_rng(episode_seed, POLICY_STREAM)
        situation, reward, segment = None, 0.0, -1

        while not state.done:
            if should_categorize(state.step_index, config.cadence):
                if situation is not None:
                    records.append(SegmentRecord(agent.agent_id, situation,
                                                 segment, episode, reward))
                situation = categorizer.categorize(state)
                reward, segment = 0.0, segment + 1
            result = env.step(state, act_greedy(agent, state, rng))
            reward += result.reward
            state = result.next_state

        if situation is not None:
            records.append(SegmentRecord(agent.agent_id, situation, segment,
                                         episode, reward))

    logger.info("%s: %d segments over %d episodes", agent.agent_id,
                len(records), episodes)
    return records


def profile_agents(agents: Sequence[TrainedAgent], env: Environment,
                   categorizer: Categorizer, config: CategorizerConfig,
                   episodes: int, seed: int) -> tuple[RewardDistribution,
                                                      list[SegmentRecord]]:
    records = []
    for agent in agents:
        records += profile_agent(agent, env, categorizer, config, episodes,
                                 seed)
    return RewardDistribution.from_records(records), records
