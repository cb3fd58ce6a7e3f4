from __future__ import annotations

from pathlib import Path
from typing import Any, Literal

from pydantic import (AliasChoices, BaseModel, ConfigDict, Field,
                      ValidationError, field_validator, model_validator)

from llm_ens.agents import AgentConfig
from llm_ens.combiners import COMBINERS
from llm_ens.errors import PlanError
from llm_ens.gateway import GatewayConfig
from llm_ens.mdp import is_registered
from llm_ens.utils.json_io import read_json_file

BEST_SINGLE = "best-single"
LLM_ENS = "llm-ens"
METHODS = (BEST_SINGLE, LLM_ENS, *COMBINERS)
ENSEMBLE_METHODS = frozenset(METHODS) - {BEST_SINGLE}


def override_label(override: dict[str, float | int]) -> str:
    return ",".join(f"{key}={value}" for key, value in sorted(override.items()))


class ExperimentPlan(BaseModel):
    """Everything `run_experiment` needs; loadable from a JSON plan file."""

    model_config = ConfigDict(frozen=True, extra="forbid", populate_by_name=True)

    env_name: str
    env_options: dict[str, bool | int | float] = Field(default_factory=dict)
    agent_seeds: list[int] = Field(default_factory=lambda: [0, 1, 2, 3, 4])
    agent_config: AgentConfig = Field(default_factory=AgentConfig)
    agent_hyperparam_grid: list[dict[str, float | int]] | None = None
    constant_actions: list[int] | None = None
    methods: list[str] = Field(default_factory=lambda: [BEST_SINGLE, LLM_ENS])
    eval_episodes: int = Field(5, ge=1)
    eval_seed_base: int = Field(0, ge=0)
    cadence: int = Field(30, ge=1, validation_alias=AliasChoices("cadence", "K", "k"))
    categorizer: Literal["oracle", "llm"] = "oracle"
    fallback_situation: int | None = Field(None, ge=1)
    on_categorizer_failure: Literal["abort", "hold-previous"] = "abort"
    profile_episodes: int = Field(5, ge=1)
    profile_seed: int = Field(1000, ge=0)
    temperature: float = Field(1.0, gt=0.0)
    boltzmann_add_sample: bool = False
    retrain_per_seed: bool = False
    max_workers: int | None = Field(None, ge=1)
    output_dir: Path = Path("out")
    catalog_path: Path | None = None
    gateway: GatewayConfig = Field(default_factory=GatewayConfig)
    mock_script: Path | None = None

    @field_validator("env_name")
    @classmethod
    def _check_env(cls, value):
        if not is_registered(value):
            raise ValueError(f"unknown environment {value!r}")
        return value

    @field_validator("methods")
    @classmethod
    def _check_methods(cls, value):
        unknown = [m for m in value if m not in METHODS]
        if unknown:
            raise ValueError(f"unknown methods {unknown}, expected {list(METHODS)}")
        if not value or len(set(value)) != len(value):
            raise ValueError("methods must be a non-empty list without repeats")
        return value

    @model_validator(mode="after")
    def _check_agents(self):
        if len(set(self.agent_seeds)) != len(self.agent_seeds):
            raise ValueError("agent_seeds must not repeat")
        if self.heatmap_mode:
            if self.constant_actions is not None:
                raise ValueError(
                    "constant_actions and agent_hyperparam_grid are exclusive")
            if len(self.agent_seeds) < 2:
                raise ValueError("heatmap mode needs two agent seeds")
            if self.retrain_per_seed:
                raise ValueError("heatmap mode trains once per grid point")
            labels = [override_label(o) for o in self.agent_hyperparam_grid]
            if len(set(labels)) != len(labels):
                raise ValueError("agent_hyperparam_grid entries must differ")
            for override in self.agent_hyperparam_grid:
                self.config_for(override)
        elif self.agent_count < 1:
            raise ValueError("the plan defines no agents")
        elif self.agent_count < 2 and ENSEMBLE_METHODS & set(self.methods):
            raise ValueError("ensemble methods need at least two agents")
        if self.constant_actions is not None and self.retrain_per_seed:
            raise ValueError("constant agents cannot be retrained")
        return self

    @model_validator(mode="after")
    def _check_seeds(self):
        profile = range(self.profile_seed, self.profile_seed + self.profile_episodes)
        evaluation = range(self.eval_seed_base,
                           self.eval_seed_base + self.eval_episodes)
        if profile.start < evaluation.stop and evaluation.start < profile.stop:
            raise ValueError(
                f"profiling seeds {profile.start}..{profile.stop - 1} overlap "
                f"evaluation seeds {evaluation.start}..{evaluation.stop - 1}")
        return self

    @property
    def heatmap_mode(self) -> bool:
        return bool(self.agent_hyperparam_grid)

    @property
    def agent_count(self) -> int:
        if self.constant_actions is not None:
            return len(self.constant_actions)
        return len(self.agent_seeds)

    def config_for(self, override: dict[str, float | int]) -> AgentConfig:
        return AgentConfig.model_validate({
            **self.agent_config.model_dump(),
            **override
        })


def plan_from_data(data: Any, **updates) -> ExperimentPlan:
    """Validate decoded plan JSON; non-None `updates` replace fields first."""
    if not isinstance(data, dict):
        raise PlanError("a plan must be a JSON object")
    data = {**data, **{k: v for k, v in updates.items() if v is not None}}
    if "cadence" in data:
        for alias in ("K", "k"):
            data.pop(alias, None)
    try:
        return ExperimentPlan.model_validate(data)
    except ValidationError as e:
        raise PlanError(f"invalid plan: {e}") from e


def load_plan(path: str | Path, **updates) -> ExperimentPlan:
    try:
        data = read_json_file(path)
    except (OSError, ValueError) as e:
        raise PlanError(f"{path}: {e}") from e
    return plan_from_data(data, **updates)
