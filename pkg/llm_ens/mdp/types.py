from __future__ import annotations

import json
from dataclasses import dataclass, field


@dataclass(frozen=True)
class EnvSpec:
    """
    Static description of a discrete environment.

    The five `*_details` strings fill the task-description prompt, so they
    are written as sentence fragments.
    """

    name: str
    action_count: int
    action_names: tuple[str, ...]
    task_details: str
    action_details: str
    reward_details: str
    end_conditions: str
    goal_details: str
    max_steps: int
    oracle_situation_count: int

    def __post_init__(self):
        if self.action_count < 1:
            raise ValueError("action_count must be positive")
        if self.action_count != len(self.action_names):
            raise ValueError(
                f"{self.name}: {self.action_count} actions but "
                f"{len(self.action_names)} action names")
        if self.max_steps < 1:
            raise ValueError("max_steps must be at least 1")
        if self.oracle_situation_count < 1:
            raise ValueError("oracle_situation_count must be positive")

    def placeholders(self) -> dict[str, str]:
        return {
            "TaskDetails": self.task_details,
            "ActionDetails": self.action_details,
            "RewardDetails": self.reward_details,
            "EndConditions": self.end_conditions,
            "GoalDetails": self.goal_details,
        }


@dataclass(frozen=True)
class StateObs:
    state_id: int
    step_index: int = 0
    done: bool = False


@dataclass(frozen=True)
class StepResult:
    next_state: StateObs
    reward: float
    done: bool


@dataclass(frozen=True)
class TraceStep:
    state: StateObs
    action: int
    reward: float


@dataclass
class EpisodeTrace:
    steps: list[TraceStep] = field(default_factory=list)

    def __len__(self):
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)

    def append(self, state: StateObs, action: int, reward: float) -> None:
        self.steps.append(TraceStep(state, action, reward))

    @property
    def total_return(self) -> float:
        return float(sum(s.reward for s in self.steps))

    @property
    def rewards(self) -> list[float]:
        return [s.reward for s in self.steps]

    def discounted_return(self, gamma: float) -> float:
        g = 0.0
        for step in reversed(self.steps):
            g = step.reward + gamma * g
        return g

    def to_jsonl(self) -> str:
        """One JSON object per step, newline terminated."""
        return "".join(
            json.dumps({
                "state_id": s.state.state_id,
                "step_index": s.state.step_index,
                "action": s.action,
                "reward": s.reward,
            }, sort_keys=True) + "\n" for s in self.steps)

    @classmethod
    def from_jsonl(cls, text: str) -> "EpisodeTrace":
        trace = cls()
        for line in text.splitlines():
            if not line.strip():
                continue
            row = json.loads(line)
            trace.append(StateObs(row["state_id"], row["step_index"]),
                         row["action"], row["reward"])
        return trace
