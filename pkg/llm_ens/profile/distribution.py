from __future__ import annotations

import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from pathlib import Path

from llm_ens.errors import ProfileFormatError, StaleProfileError
from llm_ens.situations import SituationCatalog
from llm_ens.utils.json_io import read_json_file, write_json_file

PROFILE_FORMAT_VERSION = 1


@dataclass(frozen=True)
class SegmentRecord:
    """Reward one agent collected during one K-step segment."""

    agent_id: str
    situation_id: int
    segment_index: int
    episode_index: int
    accumulated_reward: float

    def __post_init__(self):
        if not math.isfinite(self.accumulated_reward):
            raise ValueError("accumulated_reward must be finite")


class RewardDistribution:
    """
    Running (reward_sum, count) per (agent_id, situation_id). A missing key
    means "never observed", which is not the same as an average of zero.

    Single writer, many readers.
    """

    def __init__(self, cells: dict[tuple[str, int], tuple[float, int]] | None = None):
        self._cells: dict[tuple[str, int], tuple[float, int]] = dict(cells or {})

    def __repr__(self):
        return f"RewardDistribution({len(self._cells)} cells)"

    def __eq__(self, other):
        if not isinstance(other, RewardDistribution):
            return NotImplemented
        return self._cells == other._cells

    def __len__(self):
        return len(self._cells)

    def keys(self) -> list[tuple[str, int]]:
        return sorted(self._cells)

    def cell(self, agent_id: str, situation_id: int) -> tuple[float, int] | None:
        return self._cells.get((agent_id, situation_id))

    @classmethod
    def from_records(cls, records: Iterable[SegmentRecord]) -> "RewardDistribution":
        dist = cls()
        for record in records:
            dist.update(record)
        return dist

    def update(self, record: SegmentRecord) -> "RewardDistribution":
        key = (record.agent_id, record.situation_id)
        reward_sum, count = self._cells.get(key, (0.0, 0))
        self._cells[key] = (reward_sum + record.accumulated_reward, count + 1)
        return self

    def average(self, agent_id: str, situation_id: int) -> float | None:
        cell = self._cells.get((agent_id, situation_id))
        if cell is None:
            return None
        return cell[0] / cell[1]

    def count(self, agent_id: str, situation_id: int) -> int:
        cell = self._cells.get((agent_id, situation_id))
        return 0 if cell is None else cell[1]

    def total_reward(self, agent_id: str) -> float:
        return sum(s for (a, _), (s, _) in self._cells.items() if a == agent_id)

    def pooled_mean(self, agent_id: str) -> float | None:
        cells = [c for (a, _), c in self._cells.items() if a == agent_id]
        if not cells:
            return None
        return sum(s for s, _ in cells) / sum(n for _, n in cells)

    def best_agent_for(self, situation_id: int,
                       agent_ids: Sequence[str]) -> str:
        """
        argmax_m R_{m,s}, ties to the lexicographically smallest id. When no
        agent has seen the situation, the highest pooled mean wins.
        """
        if not agent_ids:
            raise ValueError("agent_ids must not be empty")

        scored = [(self.average(a, situation_id), a) for a in agent_ids]
        scored = [(v, a) for v, a in scored if v is not None]
        if not scored:
            scored = [(self.pooled_mean(a), a) for a in agent_ids]
            scored = [(v, a) for v, a in scored if v is not None]
        if not scored:
            return min(agent_ids)
        return min(scored, key=lambda va: (-va[0], va[1]))[1]

    def merged(self, other: "RewardDistribution") -> "RewardDistribution":
        cells = dict(self._cells)
        for key, (reward_sum, count) in other._cells.items():
            old_sum, old_count = cells.get(key, (0.0, 0))
            cells[key] = (old_sum + reward_sum, old_count + count)
        return RewardDistribution(cells)

    def to_rows(self) -> list[dict]:
        return [{
            "agent_id": agent_id,
            "situation_id": situation_id,
            "reward_sum": self._cells[(agent_id, situation_id)][0],
            "count": self._cells[(agent_id, situation_id)][1],
        } for agent_id, situation_id in self.keys()]

    @classmethod
    def from_rows(cls, rows: Iterable[dict]) -> "RewardDistribution":
        cells = {}
        for row in rows:
            count = int(row["count"])
            reward_sum = float(row["reward_sum"])
            if count < 1 or not math.isfinite(reward_sum):
                raise ProfileFormatError(f"invalid profile row {row}")
            cells[(str(row["agent_id"]), int(row["situation_id"]))] = (
                reward_sum, count)
        return cls(cells)


def update(dist: RewardDistribution, record: SegmentRecord) -> RewardDistribution:
    return dist.update(record)


def merge(first: RewardDistribution,
          second: RewardDistribution) -> RewardDistribution:
    return first.merged(second)


def save_profile(dist: RewardDistribution, path: str | Path,
                 catalog: SituationCatalog) -> None:
    write_json_file(path, {
        "format_version": PROFILE_FORMAT_VERSION,
        "catalog_hash": catalog.catalog_hash(),
        "rows": dist.to_rows(),
    })


def load_profile(path: str | Path,
                 catalog: SituationCatalog | None = None) -> RewardDistribution:
    """Load a profile; with `catalog`, reject profiles built for another one."""
    try:
        data = read_json_file(path)
        if data.get("format_version") != PROFILE_FORMAT_VERSION:
            raise ProfileFormatError(
                f"unsupported profile version {data.get('format_version')!r}")
        dist = RewardDistribution.from_rows(data["rows"])
        stored_hash = data["catalog_hash"]
    except ProfileFormatError:
        raise
    except (ValueError, KeyError, TypeError, AttributeError) as e:
        raise ProfileFormatError(f"{path}: malformed profile: {e}") from e

    if catalog is not None and stored_hash != catalog.catalog_hash():
        raise StaleProfileError(
            f"{path} was built against a different situation catalog")
    return dist
