from collections.abc import Callable

from llm_ens.errors import UnknownEnvironmentError

from .corridor import TwoZoneCorridor
from .environment import Environment
from .four_rooms import FourRoomsForage
from .types import StateObs, StepResult

_REGISTRY: dict[str, Callable[..., Environment]] = {
    TwoZoneCorridor.spec.name: TwoZoneCorridor,
    FourRoomsForage.spec.name: FourRoomsForage,
}


def registered_environments() -> list[str]:
    return sorted(_REGISTRY)


def is_registered(name: str) -> bool:
    return name in _REGISTRY


def make_environment(name: str, **options) -> Environment:
    try:
        factory = _REGISTRY[name]
    except KeyError:
        raise UnknownEnvironmentError(name) from None
    return factory(**options)


def env_reset(env: Environment, seed: int) -> StateObs:
    return env.reset(seed)


def env_step(env: Environment, state: StateObs, action: int) -> StepResult:
    return env.step(state, action)


def render_text(env: Environment, state: StateObs) -> str:
    return env.render_text(state)
