from .corridor import FORWARD, JUMP, TwoZoneCorridor
from .dynamic_programming import dp_optimal_return
from .environment import DeterministicModel, Environment
from .four_rooms import FourRoomsForage
from .registry import (env_reset, env_step, is_registered, make_environment,
                       registered_environments, render_text)
from .types import EnvSpec, EpisodeTrace, StateObs, StepResult, TraceStep

__all__ = [
    "DeterministicModel",
    "EnvSpec",
    "Environment",
    "EpisodeTrace",
    "FORWARD",
    "FourRoomsForage",
    "JUMP",
    "StateObs",
    "StepResult",
    "TraceStep",
    "TwoZoneCorridor",
    "dp_optimal_return",
    "env_reset",
    "env_step",
    "is_registered",
    "make_environment",
    "registered_environments",
    "render_text",
]
