from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, Field

from llm_ens.mdp import EpisodeTrace


class EnsembleConfig(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    cadence: int = Field(30, ge=1)
    categorizer: Literal["oracle", "llm"] = "oracle"
    combiner_temperature: float = Field(1.0, gt=0.0)
    rng_seed: int = Field(0, ge=0)
    on_categorizer_failure: Literal["abort", "hold-previous"] = "abort"


@dataclass
class RunResult:
    method: str
    seed: int
    trace: EpisodeTrace
    situation_timeline: list[tuple[int, int]] = field(default_factory=list)
    selection_timeline: list[tuple[int, str]] = field(default_factory=list)
    categorizer_call_count: int = 0

    @property
    def episode_return(self) -> float:
        return self.trace.total_return

    def to_json(self) -> dict[str, Any]:
        return {
            "method": self.method,
            "seed": self.seed,
            "episode_return": self.episode_return,
            "trace": [[s.state.state_id, s.state.step_index, s.action, s.reward]
                      for s in self.trace],
            "situation_timeline": [list(x) for x in self.situation_timeline],
            "selection_timeline": [list(x) for x in self.selection_timeline],
            "categorizer_call_count": self.categorizer_call_count,
        }

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> "RunResult":
        from llm_ens.mdp import StateObs

        trace = EpisodeTrace()
        for state_id, step_index, action, reward in data["trace"]:
            trace.append(StateObs(state_id, step_index), action, reward)
        return cls(method=data["method"],
                   seed=data["seed"],
                   trace=trace,
                   situation_timeline=[(int(s), int(x))
                                       for s, x in data["situation_timeline"]],
                   selection_timeline=[(int(s), str(a))
                                       for s, a in data["selection_timeline"]],
                   categorizer_call_count=data["categorizer_call_count"])
