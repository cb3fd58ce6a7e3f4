import argparse
import logging
import sys
from pathlib import Path

from pydantic import ValidationError

from llm_ens.agents import (AgentConfig, TrainedAgent, constant_action_agent,
                            read_agent, train_q_learning, write_agent)
from llm_ens.errors import LLMEnsError
from llm_ens.harness import (BEST_SINGLE, LLM_ENS, METHODS, Experiment,
                             ExperimentPlan, audit, plan_from_data,
                             regenerate_report, render_heatmap, render_table,
                             run_experiment)
from llm_ens.harness.report import PROFILE_FILE, RUNS_FILE
from llm_ens.harness.experiment import stage
from llm_ens.mdp import make_environment, registered_environments
from llm_ens.profile import RewardDistribution, load_profile, save_profile
from llm_ens.situations import save_catalog

from .json_file_action import JsonFileAction

logger = logging.getLogger(__name__)

DEFAULT_ENV = "two-zone-corridor"
DEFAULT_K = 30
DEFAULT_OUT = Path("out")
# profiling seeds start this far above the evaluation seeds
PROFILE_SEED_OFFSET = 1000


class Cli:

    def __init__(self, argv=None):
        common = argparse.ArgumentParser(add_help=False)
        common.add_argument(
            "--env",
            choices=registered_environments(),
            help=f"Environment name (default {DEFAULT_ENV})",
        )
        common.add_argument(
            "--seed",
            type=int,
            help="Training seed, or first evaluation seed",
        )
        common.add_argument(
            "--profile-seed",
            type=int,
            help=f"First profiling seed (default seed + {PROFILE_SEED_OFFSET})",
        )
        common.add_argument(
            "--k",
            type=int,
            help=f"Categorization interval in steps (default {DEFAULT_K})",
        )
        common.add_argument(
            "--categorizer",
            choices=["oracle", "llm"],
            help="Who classifies states into situations (default oracle)",
        )
        common.add_argument(
            "--catalog",
            type=Path,
            help="Situation catalog file",
        )
        common.add_argument(
            "--out",
            type=Path,
            help=f"Output directory (default {DEFAULT_OUT})",
        )
        common.add_argument(
            "--temperature",
            type=float,
            help="Boltzmann temperature of the combiners, not of the LLM "
            "(default 1.0)",
        )
        common.add_argument(
            "--llm-temperature",
            type=float,
            help="Sampling temperature sent to the LLM (default 1.0)",
        )
        common.add_argument(
            "--mock-llm",
            type=Path,
            metavar="SCRIPT",
            help="Answer LLM calls from a JSON script instead of the network",
        )
        common.add_argument(
            "--verbose",
            "-v",
            help="increase output verbosity",
            action="count",
            default=0,
        )

        self.parser = argparse.ArgumentParser(
            prog="llm_ens",
            description="Ensemble RL agents by switching between them per "
            "situation, and compare against rule-based combiners",
        )
        self.parser.add_argument(
            "--version",
            action="version",
            version="%(prog)s 0.1",
        )
        commands = self.parser.add_subparsers(dest="command", required=True)

        train = commands.add_parser("train",
                                    parents=[common],
                                    help="Train one tabular Q-learning agent")
        train.add_argument(
            "--config",
            action=JsonFileAction,
            help="JSON file with agent hyperparameters",
        )
        train.add_argument(
            "--episodes",
            type=int,
            help="Override the number of training episodes",
        )
        train.add_argument(
            "--constant-action",
            type=int,
            metavar="ACTION",
            help="Build a hand-made agent that always prefers ACTION",
        )

        commands.add_parser("gen-situations",
                            parents=[common],
                            help="Write the situation catalog of an environment")

        profile = commands.add_parser(
            "profile",
            parents=[common],
            help="Profile agents per situation into a reward distribution")
        profile.add_argument("--agents", nargs="+", type=Path, required=True)
        profile.add_argument(
            "--episodes",
            type=int,
            default=5,
            help="Profiling episodes per agent",
        )

        run = commands.add_parser("run",
                                  parents=[common],
                                  help="Run a full experiment from a plan file")
        run.add_argument(
            "--plan",
            action=JsonFileAction,
            required=True,
            help="JSON experiment plan",
        )
        run.add_argument(
            "--workers",
            type=int,
            help="Parallel evaluation workers (oracle categorizer only)",
        )

        compare = commands.add_parser(
            "compare",
            parents=[common],
            help="Evaluate saved agents and a saved profile across methods")
        compare.add_argument("--agents", nargs="+", type=Path, required=True)
        compare.add_argument("--profile", type=Path, required=True)
        compare.add_argument(
            "--methods",
            nargs="+",
            choices=METHODS,
            default=[BEST_SINGLE, LLM_ENS],
        )
        compare.add_argument("--episodes", type=int, default=5)

        commands.add_parser("report",
                            parents=[common],
                            help="Re-render the human tables of an output dir")
        commands.add_parser("audit",
                            parents=[common],
                            help="Recompute every reported number from the runs")

        self.args = vars(self.parser.parse_args(argv))

    # helpers

    @property
    def out(self) -> Path:
        return self.args["out"] or DEFAULT_OUT

    def _gateway(self, plan_data) -> dict | None:
        """Gateway settings of the plan with --llm-temperature applied."""
        if self.args["llm_temperature"] is None:
            return None
        base = plan_data.get("gateway") if isinstance(plan_data, dict) else None
        return {**(base if isinstance(base, dict) else {}),
                "temperature": self.args["llm_temperature"]}

    def _plan(self, env_name: str, read_catalog: bool = True,
              **fields) -> ExperimentPlan:
        seed = self.args["seed"] or 0
        profile_seed = self.args["profile_seed"]
        if profile_seed is None:
            profile_seed = seed + PROFILE_SEED_OFFSET
        updates = {
            "categorizer": self.args["categorizer"],
            "catalog_path": self.args["catalog"] if read_catalog else None,
            "temperature": self.args["temperature"],
            "mock_script": self.args["mock_llm"],
            "gateway": self._gateway({}),
            **fields,
        }
        return plan_from_data(
            {
                "env_name": env_name,
                "cadence": self.args["k"] or DEFAULT_K,
                "eval_seed_base": seed,
                "profile_seed": profile_seed,
                "output_dir": str(self.out),
            }, **updates)

    def _read_agents(self) -> tuple[str, list[TrainedAgent]]:
        agents = []
        for path in self.args["agents"]:
            loaded = read_agent(path)
            agents.append(loaded.agent)
        env_name = self.args["env"] or agents[0].env_name
        return env_name, agents

    # commands

    def train(self):
        env = make_environment(self.args["env"] or DEFAULT_ENV)
        if self.args["constant_action"] is not None:
            agent = constant_action_agent(env, self.args["constant_action"])
        else:
            data = dict(self.args["config"] or {})
            if self.args["episodes"] is not None:
                data["training_episodes"] = self.args["episodes"]
            try:
                config = AgentConfig.model_validate(data)
            except ValidationError as e:
                self.parser.error(f"invalid agent config: {e}")
            agent = train_q_learning(env, config, self.args["seed"] or 0)
        path = self.out / f"{agent.agent_id}.json"
        write_agent(agent, path)
        print(path)

    def gen_situations(self):
        plan = self._plan(self.args["env"] or DEFAULT_ENV, read_catalog=False)
        experiment = Experiment(plan)
        with stage("situations"):
            experiment.load_situations()
        path = self.args["catalog"] or self.out / "catalog.json"
        save_catalog(experiment.catalog, path)
        print(experiment.catalog.to_output_format_1())

    def profile(self):
        env_name, agents = self._read_agents()
        plan = self._plan(env_name, profile_episodes=self.args["episodes"])
        experiment = Experiment(plan)
        with stage("situations"):
            experiment.load_situations()
        with stage("profile"):
            dist = RewardDistribution.from_records(experiment.profile(agents))
        save_catalog(experiment.catalog, self.out / "catalog.json")
        save_profile(dist, self.out / PROFILE_FILE, experiment.catalog)
        for agent_id, situation_id in dist.keys():
            print(f"{agent_id}  situation {situation_id}: "
                  f"{dist.average(agent_id, situation_id):.4g} "
                  f"over {dist.count(agent_id, situation_id)} segments")

    def run_plan(self):
        seed = self.args["seed"]
        plan = plan_from_data(
            self.args["plan"],
            output_dir=self.args["out"] and str(self.args["out"]),
            cadence=self.args["k"],
            categorizer=self.args["categorizer"],
            catalog_path=self.args["catalog"] and str(self.args["catalog"]),
            temperature=self.args["temperature"],
            mock_script=self.args["mock_llm"] and str(self.args["mock_llm"]),
            eval_seed_base=seed,
            profile_seed=self.args["profile_seed"],
            gateway=self._gateway(self.args["plan"]),
            max_workers=self.args["workers"],
        )
        result = run_experiment(plan)
        print(render_table(result.table), end="")
        if result.heatmap is not None:
            print()
            print(render_heatmap(result.heatmap), end="")

    def compare(self):
        env_name, agents = self._read_agents()
        plan = self._plan(env_name,
                          methods=self.args["methods"],
                          eval_episodes=self.args["episodes"])
        experiment = Experiment(plan)
        with stage("situations"):
            experiment.load_situations()
        dist = load_profile(self.args["profile"], experiment.catalog)
        result = experiment.compare(agents, dist)
        print(render_table(result.table), end="")

    def report(self):
        for path in regenerate_report(self.out):
            print(path.read_text(encoding="utf-8"), end="")

    def audit(self):
        checked = audit(self.out)
        print(f"{checked} numbers match {self.out / RUNS_FILE}")

    def run(self):
        level = {0: logging.WARNING, 1: logging.INFO}.get(self.args["verbose"],
                                                          logging.DEBUG)
        logging.basicConfig(level=level,
                            format="%(levelname)s %(name)s: %(message)s")
        commands = {
            "train": self.train,
            "gen-situations": self.gen_situations,
            "profile": self.profile,
            "run": self.run_plan,
            "compare": self.compare,
            "report": self.report,
            "audit": self.audit,
        }
        commands[self.args["command"]]()


def main(argv=None):
    cli = Cli(argv)
    try:
        cli.run()
    except LLMEnsError as e:
        logger.error("%s", e)
        sys.exit(2)
    except KeyboardInterrupt:
        sys.exit(1)


if __name__ == "__main__":
    main()
