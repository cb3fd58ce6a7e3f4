"""
End-to-end experiment: train or build agents, obtain a situation catalog,
profile every agent, evaluate every method and write the artifacts.
"""
from __future__ import annotations

import logging
from collections.abc import Iterator, Sequence
from contextlib import contextmanager
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from llm_ens.agents import (TrainedAgent, constant_action_agent,
                            train_q_learning)
from llm_ens.errors import (CatalogParseError, ExperimentStageError,
                            LLMEnsError)
from llm_ens.gateway import LLMGateway, load_mock_script
from llm_ens.mdp import Environment, make_environment
from llm_ens.profile import (RewardDistribution, SegmentRecord, profile_agent,
                             save_profile)
from llm_ens.runtime import (EnsembleConfig, RunResult, evaluate_runs,
                             run_combiner_episode, run_llm_ens_episode,
                             run_single_agent_episode)
from llm_ens.situations import (Categorizer, CategorizerConfig,
                                LLMCategorizer, OracleCategorizer,
                                SituationCatalog, generate_situations,
                                load_catalog, oracle_catalog, save_catalog)
from llm_ens.utils.seeding import derive_seed

from . import report
from .plan import BEST_SINGLE, LLM_ENS, ExperimentPlan, override_label
from .results import HeatmapGrid, ResultTable
from .summary import (HEATMAP_GROUP, TABLE_GROUP, heatmap_from_runs,
                      run_record, table_from_runs)

logger = logging.getLogger(__name__)


@dataclass
class ExperimentResult:
    table: ResultTable
    heatmap: HeatmapGrid | None
    runs: list[dict[str, Any]]
    catalog: SituationCatalog
    profile: RewardDistribution
    output_dir: Path


@contextmanager
def stage(name: str) -> Iterator[None]:
    logger.info("stage %s", name)
    try:
        yield
    except ExperimentStageError:
        raise
    except (LLMEnsError, ValueError, OSError) as e:
        raise ExperimentStageError(name, e) from e


class Experiment:

    def __init__(self, plan: ExperimentPlan):
        self.plan = plan
        self.cat_config = CategorizerConfig(
            cadence=plan.cadence, fallback_situation=plan.fallback_situation)
        self._gateway = None
        self.catalog = None
        self.categorizer = None

    def make_env(self) -> Environment:
        return make_environment(self.plan.env_name, **self.plan.env_options)

    @property
    def gateway(self) -> LLMGateway:
        if self._gateway is None:
            transport = (load_mock_script(self.plan.mock_script)
                         if self.plan.mock_script else None)
            self._gateway = LLMGateway(self.plan.gateway, transport)
        return self._gateway

    @property
    def workers(self) -> int | None:
        # the llm categorizer keeps per-call state
        return self.plan.max_workers if self.plan.categorizer == "oracle" else None

    # stages

    def build_agents(self, replicate: int | None = None) -> list[TrainedAgent]:
        """
        The plan's agents. With `replicate`, trained agents are retrained
        from seeds derived from (agent seed, replicate) under unchanged ids.
        """
        env = self.make_env()
        plan = self.plan
        if plan.constant_actions is not None:
            return [constant_action_agent(env, a) for a in plan.constant_actions]
        agents = []
        for seed in plan.agent_seeds:
            train_seed = seed if replicate is None else derive_seed(seed, replicate)
            agents.append(train_q_learning(env, plan.agent_config, train_seed,
                                           f"{env.name}-q-seed{seed}"))
        return agents

    def grid_agents(self) -> dict[str, list[TrainedAgent]]:
        env = self.make_env()
        grid = {}
        for override in self.plan.agent_hyperparam_grid:
            label = override_label(override)
            config = self.plan.config_for(override)
            grid[label] = [
                train_q_learning(env, config, seed,
                                 f"{env.name}-q-{label}-seed{seed}")
                for seed in self.plan.agent_seeds[:2]
            ]
        return grid

    def load_situations(self) -> None:
        plan = self.plan
        env = self.make_env()
        if plan.catalog_path is not None:
            catalog = load_catalog(plan.catalog_path)
            if catalog.env_name and catalog.env_name != env.name:
                raise CatalogParseError(
                    f"{plan.catalog_path} describes {catalog.env_name!r}, "
                    f"not {env.name!r}")
        elif plan.categorizer == "llm":
            catalog = generate_situations(env, self.gateway)
        else:
            catalog = oracle_catalog(env)

        if plan.categorizer == "oracle":
            if catalog.count != len(env.oracle_situations()):
                raise ValueError(
                    f"the oracle categorizer of {env.name} knows "
                    f"{len(env.oracle_situations())} situations, the catalog "
                    f"has {catalog.count}")
            categorizer: Categorizer = OracleCategorizer(env)
        else:
            categorizer = LLMCategorizer(self.gateway, catalog, env,
                                         self.cat_config)
        self.catalog, self.categorizer = catalog, categorizer

    def profile(self, agents: Sequence[TrainedAgent]) -> list[SegmentRecord]:
        records = []
        for agent in agents:
            records += profile_agent(agent, self.make_env(), self.categorizer,
                                     self.cat_config,
                                     self.plan.profile_episodes,
                                     self.plan.profile_seed)
        return records

    # evaluation

    def _runs(self, run_fn, seed_base: int, episodes: int) -> list[RunResult]:
        return evaluate_runs(run_fn, episodes, seed_base, self.workers)

    def run_singles(self, agents: Sequence[TrainedAgent], seed_base: int,
                    episodes: int) -> dict[str, list[RunResult]]:
        return {
            agent.agent_id: self._runs(
                lambda seed, agent=agent: run_single_agent_episode(
                    agent, self.make_env(), seed), seed_base, episodes)
            for agent in agents
        }

    def run_llm_ens(self, agents: Sequence[TrainedAgent],
                    dist: RewardDistribution, seed_base: int,
                    episodes: int) -> list[RunResult]:
        plan = self.plan

        def run(seed):
            config = EnsembleConfig(
                cadence=plan.cadence,
                categorizer=plan.categorizer,
                combiner_temperature=plan.temperature,
                rng_seed=seed,
                on_categorizer_failure=plan.on_categorizer_failure)
            return run_llm_ens_episode(agents, dist, self.categorizer,
                                       self.make_env(), config)

        return self._runs(run, seed_base, episodes)

    def run_combiner(self, agents: Sequence[TrainedAgent], name: str,
                     seed_base: int, episodes: int) -> list[RunResult]:
        return self._runs(
            lambda seed: run_combiner_episode(
                agents, name, self.make_env(), seed, self.plan.temperature,
                self.plan.boltzmann_add_sample), seed_base, episodes)

    def run_methods(self, agents: Sequence[TrainedAgent],
                    dist: RewardDistribution, seed_base: int,
                    episodes: int) -> list[dict[str, Any]]:
        env_name = self.plan.env_name
        records = []
        for method in self.plan.methods:
            if method == BEST_SINGLE:
                for agent_id, runs in self.run_singles(agents, seed_base,
                                                       episodes).items():
                    records += [run_record(env_name, r.to_json(), TABLE_GROUP,
                                           agent_id) for r in runs]
            elif method == LLM_ENS:
                runs = self.run_llm_ens(agents, dist, seed_base, episodes)
                records += [run_record(env_name, r.to_json(), TABLE_GROUP)
                            for r in runs]
            else:
                runs = self.run_combiner(agents, method, seed_base, episodes)
                records += [run_record(env_name, r.to_json(), TABLE_GROUP)
                            for r in runs]
        return records

    def run_heatmap(self, grid: dict[str, list[TrainedAgent]],
                    segments: dict[str, list[SegmentRecord]]) -> list[dict[str, Any]]:
        """
        For every (x, y) pair of grid points, ensemble the agents of both
        points and evaluate it next to each member alone.
        """
        plan = self.plan
        base, episodes = plan.eval_seed_base, plan.eval_episodes
        singles = {}
        for agents in grid.values():
            singles.update(self.run_singles(agents, base, episodes))

        records = []
        for y in grid:
            for x in grid:
                members = grid[x] + (grid[y] if y != x else [])
                dist = RewardDistribution.from_records(
                    rec for a in members for rec in segments[a.agent_id])
                logger.info("heatmap cell (%s | %s): %d agents", x, y,
                            len(members))
                for agent in members:
                    records += [run_record(plan.env_name, r.to_json(),
                                           HEATMAP_GROUP, agent.agent_id, (x, y))
                                for r in singles[agent.agent_id]]
                records += [run_record(plan.env_name, r.to_json(),
                                       HEATMAP_GROUP, cell=(x, y))
                            for r in self.run_llm_ens(members, dist, base,
                                                      episodes)]
        return records

    # driver

    def run(self) -> ExperimentResult:
        plan = self.plan

        with stage("situations"):
            self.load_situations()

        if plan.retrain_per_seed:
            records, segments = [], []
            for i in range(plan.eval_episodes):
                with stage("train"):
                    agents = self.build_agents(replicate=i)
                with stage("profile"):
                    replicate_segments = self.profile(agents)
                    segments += replicate_segments
                with stage("evaluate"):
                    records += self.run_methods(
                        agents,
                        RewardDistribution.from_records(replicate_segments),
                        plan.eval_seed_base + i, 1)
        elif plan.heatmap_mode:
            with stage("train"):
                grid = self.grid_agents()
                agents = [a for members in grid.values() for a in members]
            with stage("profile"):
                by_agent = {a.agent_id: self.profile([a]) for a in agents}
                segments = [s for v in by_agent.values() for s in v]
            with stage("evaluate"):
                records = self.run_methods(
                    agents, RewardDistribution.from_records(segments),
                    plan.eval_seed_base, plan.eval_episodes)
                records += self.run_heatmap(grid, by_agent)
        else:
            with stage("train"):
                agents = self.build_agents()
            with stage("profile"):
                segments = self.profile(agents)
            with stage("evaluate"):
                records = self.run_methods(
                    agents, RewardDistribution.from_records(segments),
                    plan.eval_seed_base, plan.eval_episodes)

        return self.write_artifacts(records,
                                    RewardDistribution.from_records(segments))

    def compare(self, agents: Sequence[TrainedAgent],
                dist: RewardDistribution) -> ExperimentResult:
        """Evaluate saved agents and a saved profile without training."""
        if self.catalog is None:
            with stage("situations"):
                self.load_situations()
        with stage("evaluate"):
            records = self.run_methods(agents, dist, self.plan.eval_seed_base,
                                       self.plan.eval_episodes)
        return self.write_artifacts(records, dist)

    def write_artifacts(self, records: list[dict[str, Any]],
                        profile: RewardDistribution) -> ExperimentResult:
        plan = self.plan
        heatmap = None
        with stage("report"):
            table = table_from_runs(records, plan.env_name, plan.methods)
            out = plan.output_dir
            save_catalog(self.catalog, out / report.CATALOG_FILE)
            save_profile(profile, out / report.PROFILE_FILE, self.catalog)
            report.write_runs(records, out)
            report.emit_table(table, out)
            if plan.heatmap_mode:
                labels = [override_label(o) for o in plan.agent_hyperparam_grid]
                heatmap = heatmap_from_runs(records, plan.env_name, labels)
                report.emit_heatmap(heatmap, out)

        logger.info("%s: wrote %d runs to %s", plan.env_name, len(records), out)
        return ExperimentResult(table, heatmap, records, self.catalog, profile,
                                out)


def run_experiment(plan: ExperimentPlan) -> ExperimentResult:
    return Experiment(plan).run()
