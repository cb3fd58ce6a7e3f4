import json

import numpy as np
import pytest

from llm_ens.agents import AgentConfig, train_q_learning
from llm_ens.errors import ProfileFormatError, StaleProfileError
from llm_ens.profile import (RewardDistribution, SegmentRecord, load_profile,
                             merge, profile_agent, profile_agents,
                             save_profile, update)
from llm_ens.situations import (CatalogSource, CategorizerConfig,
                                OracleCategorizer, SituationCatalog)


def profile(agent, env, cadence=3, episodes=1):
    return profile_agent(agent, env, OracleCategorizer(env),
                         CategorizerConfig(cadence=cadence), episodes, 0)


class TestProfiler:

    def test_segments_by_hand(self, corridor, forward_agent, jump_agent):
        forward = profile(forward_agent, corridor)
        jump = profile(jump_agent, corridor)
        assert [r.situation_id for r in forward] == [1, 1, 2, 2]
        assert [r.accumulated_reward for r in forward] == [3, 3, 0, 0]
        assert [r.accumulated_reward for r in jump] == [0, 0, 3, 2]
        assert [r.segment_index for r in jump] == [0, 1, 2, 3]

    def test_distribution_by_hand(self, corridor, forward_agent, jump_agent):
        dist, records = profile_agents([forward_agent, jump_agent], corridor,
                                       OracleCategorizer(corridor),
                                       CategorizerConfig(cadence=3), 1, 0)
        assert len(records) == 8
        assert dist.average("always-FORWARD", 1) == 3.0
        assert dist.average("always-FORWARD", 2) == 0.0
        assert dist.average("always-JUMP", 1) == 0.0
        assert dist.average("always-JUMP", 2) == 2.5
        assert dist.best_agent_for(1, ["always-FORWARD", "always-JUMP"]) == "always-FORWARD"
        assert dist.best_agent_for(2, ["always-FORWARD", "always-JUMP"]) == "always-JUMP"

    def test_segment_rewards_sum_to_return(self, corridor, forward_agent):
        assert sum(r.accumulated_reward for r in profile(forward_agent, corridor,
                                                         cadence=30)) == 6
        assert len(profile(forward_agent, corridor, cadence=30)) == 1

    def test_cells_account_for_every_logged_reward(self, four_rooms):
        agents = [train_q_learning(four_rooms,
                                   AgentConfig(training_episodes=20), seed)
                  for seed in (0, 1)]
        dist, records = profile_agents(agents, four_rooms,
                                       OracleCategorizer(four_rooms),
                                       CategorizerConfig(cadence=7), 3, 0)
        for agent in agents:
            logged = sum(r.accumulated_reward for r in records
                         if r.agent_id == agent.agent_id)
            situations = range(1, len(four_rooms.oracle_situations()) + 1)
            weighted = sum(dist.count(agent.agent_id, s) *
                           (dist.average(agent.agent_id, s) or 0.0)
                           for s in situations)
            assert weighted == pytest.approx(logged)
            assert dist.total_reward(agent.agent_id) == pytest.approx(logged)
        assert dist.total_reward("nobody") == 0

    def test_episodes(self, corridor, jump_agent):
        records = profile(jump_agent, corridor, cadence=4, episodes=3)
        assert [r.episode_index for r in records] == [0] * 3 + [1] * 3 + [2] * 3

    def test_rejects_zero_episodes(self, corridor, jump_agent):
        with pytest.raises(ValueError):
            profile(jump_agent, corridor, episodes=0)


class TestRewardDistribution:

    def test_matches_group_by(self):
        rng = np.random.default_rng(7)
        for _ in range(100):
            records = [
                SegmentRecord(f"agent-{rng.integers(3)}", int(rng.integers(1, 4)),
                              i, 0, float(rng.normal()))
                for i in range(int(rng.integers(1, 40)))
            ]
            dist = RewardDistribution.from_records(records)
            groups = {}
            for r in records:
                groups.setdefault((r.agent_id, r.situation_id),
                                  []).append(r.accumulated_reward)
            assert dist.keys() == sorted(groups)
            for (agent, situation), rewards in groups.items():
                assert dist.average(agent, situation) == pytest.approx(
                    sum(rewards) / len(rewards))
                assert dist.count(agent, situation) == len(rewards)

    def test_unseen_is_none(self):
        dist = RewardDistribution()
        assert dist.average("a", 1) is None
        assert dist.count("a", 1) == 0

    def test_update_and_merge(self):
        first = update(RewardDistribution(), SegmentRecord("a", 1, 0, 0, 2.0))
        second = RewardDistribution.from_records(
            [SegmentRecord("a", 1, 0, 0, 4.0), SegmentRecord("b", 2, 0, 0, 1.0)])
        merged = merge(first, second)
        assert merged.cell("a", 1) == (6.0, 2)
        assert merged.cell("b", 2) == (1.0, 1)
        assert first.cell("a", 1) == (2.0, 1)

    def test_non_finite_reward(self):
        with pytest.raises(ValueError):
            SegmentRecord("a", 1, 0, 0, float("nan"))

    def test_ties_go_to_smallest_id(self):
        dist = RewardDistribution.from_records(
            [SegmentRecord("b", 1, 0, 0, 1.0), SegmentRecord("a", 1, 0, 0, 1.0)])
        assert dist.best_agent_for(1, ["b", "a"]) == "a"

    def test_unseen_situation_uses_pooled_mean(self):
        dist = RewardDistribution.from_records([
            SegmentRecord("a", 1, 0, 0, 1.0),
            SegmentRecord("b", 1, 0, 0, 0.0),
            SegmentRecord("b", 2, 1, 0, 4.0),
        ])
        assert dist.best_agent_for(3, ["a", "b"]) == "b"
        assert dist.best_agent_for(3, ["c", "d"]) == "c"

    def test_agent_ids_required(self):
        with pytest.raises(ValueError):
            RewardDistribution().best_agent_for(1, [])


class TestPersistence:

    @pytest.fixture
    def dist(self):
        return RewardDistribution.from_records([
            SegmentRecord("always-FORWARD", 1, 0, 0, 3.0),
            SegmentRecord("always-JUMP", 2, 2, 0, 2.5),
        ])

    def test_save_and_load(self, dist, corridor_catalog, tmp_path):
        path = tmp_path / "profile.json"
        save_profile(dist, path, corridor_catalog)
        assert load_profile(path, corridor_catalog) == dist
        assert load_profile(path) == dist

    def test_stale(self, dist, corridor_catalog, tmp_path):
        path = tmp_path / "profile.json"
        save_profile(dist, path, corridor_catalog)
        other = SituationCatalog.from_pairs(
            corridor_catalog.env_name,
            [("Early", "first half"), ("Late", "second half")],
            CatalogSource.LLM)
        with pytest.raises(StaleProfileError):
            load_profile(path, other)

    @pytest.mark.parametrize("content", [
        "[]",
        '{"format_version": 2, "catalog_hash": "x", "rows": []}',
        '{"format_version": 1, "rows": []}',
        '{"format_version": 1, "catalog_hash": "x", "rows": '
        '[{"agent_id": "a", "situation_id": 1, "reward_sum": 1.0, "count": 0}]}',
        "not json",
    ])
    def test_malformed(self, tmp_path, content):
        path = tmp_path / "profile.json"
        path.write_text(content)
        with pytest.raises(ProfileFormatError):
            load_profile(path)

    def test_rows_are_sorted(self, dist, corridor_catalog, tmp_path):
        path = tmp_path / "profile.json"
        save_profile(dist, path, corridor_catalog)
        rows = json.loads(path.read_text())["rows"]
        assert [r["agent_id"] for r in rows] == ["always-FORWARD", "always-JUMP"]
