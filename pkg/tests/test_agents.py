import json

import numpy as np
import pytest
from numpy.testing import assert_allclose, assert_array_equal
from pydantic import ValidationError

from llm_ens.agents import (AgentConfig, act_greedy, action_probabilities,
                            argmax_uniform, boltzmann, constant_action_agent,
                            load_agent, read_agent, save_agent,
                            train_q_learning, write_agent)
from llm_ens.errors import (AgentEnvironmentMismatchError, AgentFormatError,
                            InvalidActionError)
from llm_ens.mdp import FORWARD, JUMP, StateObs, TwoZoneCorridor
from llm_ens.runtime import run_single_agent_episode

# small enough to keep the suite fast, long enough to converge on 12 states
CORRIDOR_CONFIG = AgentConfig(training_episodes=1500,
                              epsilon_decay_per_step=0.9995,
                              learning_rate=0.5)


class TestAgentConfig:

    def test_defaults(self):
        config = AgentConfig()
        assert config.learning_rate == 0.1 and config.gamma == 0.99
        assert config.epsilon_min == 0.1 and config.training_episodes == 5000

    @pytest.mark.parametrize("field,value", [("learning_rate", 0.0),
                                             ("gamma", 1.5),
                                             ("training_episodes", -1)])
    def test_rejects_out_of_range(self, field, value):
        with pytest.raises(ValidationError):
            AgentConfig(**{field: value})

    def test_epsilon_min_above_start(self):
        with pytest.raises(ValidationError):
            AgentConfig(epsilon_start=0.05, epsilon_min=0.1)


class TestActionSelection:

    def test_boltzmann_uniform_on_equal_values(self):
        assert_allclose(boltzmann(np.zeros(4)), np.full(4, 0.25))

    def test_boltzmann_shift_invariant(self):
        values = np.array([1.0, -2.0, 0.5])
        assert_allclose(boltzmann(values), boltzmann(values + 1000.0),
                        atol=1e-12)

    def test_boltzmann_two_actions(self):
        assert_allclose(boltzmann(np.array([1.0, 0.0])),
                        [np.e / (np.e + 1), 1 / (np.e + 1)])

    def test_boltzmann_large_values_stay_finite(self):
        probs = boltzmann(np.array([1000.0, 0.0]))
        assert np.all(np.isfinite(probs)) and probs[0] == pytest.approx(1.0)

    def test_boltzmann_temperature(self):
        with pytest.raises(ValueError):
            boltzmann(np.zeros(2), 0.0)

    def test_softmax_sampling_frequency(self):
        rng = np.random.default_rng(0)
        probs = boltzmann(np.array([1.0, 0.0]))
        draws = rng.choice(2, size=20000, p=probs)
        assert np.mean(draws == 0) == pytest.approx(0.731, abs=0.01)

    def test_tie_break_is_uniform(self):
        rng = np.random.default_rng(1)
        picks = [argmax_uniform(np.array([1.0, 1.0, 0.0]), rng)
                 for _ in range(10000)]
        assert 2 not in picks
        assert np.mean(np.array(picks) == 0) == pytest.approx(0.5, abs=0.02)

    def test_unique_max_ignores_rng(self):
        rng = np.random.default_rng(2)
        assert argmax_uniform(np.array([0.0, 3.0, 1.0]), rng) == 1


class TestConstantAgent:

    def test_one_hot_rows(self, corridor):
        agent = constant_action_agent(corridor, JUMP)
        assert agent.agent_id == "always-JUMP"
        assert len(agent.q_table) == 12
        assert_array_equal(agent.q_row(5), [0.0, 1.0])

    def test_greedy_follows_action(self, forward_agent):
        rng = np.random.default_rng(0)
        assert act_greedy(forward_agent, StateObs(8), rng) == FORWARD

    def test_unknown_state_reads_zeros(self, forward_agent):
        assert_array_equal(forward_agent.q_row(999), [0.0, 0.0])
        assert_allclose(action_probabilities(forward_agent, StateObs(999)),
                        [0.5, 0.5])

    def test_invalid_action(self, corridor):
        with pytest.raises(InvalidActionError):
            constant_action_agent(corridor, 2)


class TestQLearning:

    @pytest.mark.parametrize("seed", range(5))
    def test_converges_to_optimal_return(self, corridor, seed):
        agent = train_q_learning(corridor, CORRIDOR_CONFIG, seed)
        assert run_single_agent_episode(agent, corridor, 0).episode_return == 11.0

    @pytest.mark.parametrize("seed", range(5))
    def test_default_config_reaches_optimum(self, corridor, seed):
        agent = train_q_learning(corridor, AgentConfig(), seed)
        assert run_single_agent_episode(agent, corridor, 0).episode_return == 11.0

    def test_deterministic_in_seed(self, corridor):
        config = AgentConfig(training_episodes=50)
        first = train_q_learning(corridor, config, 3)
        second = train_q_learning(corridor, config, 3)
        assert first.q_table.keys() == second.q_table.keys()
        for state_id in first.q_table:
            assert_array_equal(first.q_row(state_id), second.q_row(state_id))

    def test_rows_are_read_only(self, corridor):
        agent = train_q_learning(corridor, AgentConfig(training_episodes=5), 0)
        with pytest.raises(ValueError):
            agent.q_row(0)[0] = 1.0

    def test_zero_episodes_gives_empty_table(self, corridor):
        agent = train_q_learning(corridor, AgentConfig(training_episodes=0), 0)
        assert agent.q_table == {}
        assert agent.agent_id == "two-zone-corridor-q-seed0"

    def test_mismatched_environment(self, forward_agent, four_rooms):
        with pytest.raises(AgentEnvironmentMismatchError):
            run_single_agent_episode(forward_agent, four_rooms, 0)


class TestSerialization:

    def test_save_and_load(self, corridor, tmp_path):
        agent = train_q_learning(corridor, AgentConfig(training_episodes=20), 1)
        write_agent(agent, tmp_path / "agent.json")
        loaded = read_agent(tmp_path / "agent.json")
        assert not loaded.unknown_env
        assert loaded.agent.agent_id == agent.agent_id
        assert loaded.agent.config == agent.config
        for state_id, row in agent.q_table.items():
            assert_array_equal(loaded.agent.q_row(state_id), row)

    def test_unknown_environment_is_flagged(self, forward_agent):
        record = save_agent(forward_agent)
        record["env_name"] = "retired-env"
        assert load_agent(record).unknown_env

    @pytest.mark.parametrize("mutate", [
        lambda r: r.pop("q_table"),
        lambda r: r.update(format_version=99),
        lambda r: r["q_table"].append([0, 5, 1.0]),
        lambda r: r["q_table"].append([0, 0, float("nan")]),
    ])
    def test_corrupt_records(self, forward_agent, mutate):
        record = json.loads(json.dumps(save_agent(forward_agent)))
        mutate(record)
        with pytest.raises(AgentFormatError):
            load_agent(record)

    def test_invalid_json_file(self, tmp_path):
        path = tmp_path / "agent.json"
        path.write_text("{not json")
        with pytest.raises(AgentFormatError):
            read_agent(path)
