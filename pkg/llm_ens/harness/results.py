from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field

from .stats import mean_std


@dataclass(frozen=True)
class CellStats:
    mean: float
    std: float
    n: int


@dataclass
class ResultTable:
    """(env, method) -> mean/std/n. Methods keep insertion order."""

    cells: dict[tuple[str, str], CellStats] = field(default_factory=dict)

    def add(self, env_name: str, method: str,
            returns: Sequence[float]) -> CellStats:
        mean, std = mean_std(returns)
        cell = CellStats(mean, std, len(returns))
        self.cells[(env_name, method)] = cell
        return cell

    def envs(self) -> list[str]:
        return sorted({env for env, _ in self.cells})

    def methods(self, env_name: str) -> list[str]:
        return [m for env, m in self.cells if env == env_name]

    def row(self, env_name: str) -> dict[str, float]:
        return {m: self.cells[(env_name, m)].mean for m in self.methods(env_name)}

    def __getitem__(self, key: tuple[str, str]) -> CellStats:
        return self.cells[key]

    def __len__(self):
        return len(self.cells)


@dataclass
class HeatmapGrid:
    axis_x: list[str]
    axis_y: list[str]
    cells: dict[tuple[str, str], float | None] = field(default_factory=dict)

    def __getitem__(self, key: tuple[str, str]) -> float | None:
        return self.cells[key]

    def __len__(self):
        return len(self.cells)
