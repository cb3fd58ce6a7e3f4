"""Tables and heatmaps computed from run records, shared by runs and audits."""
from __future__ import annotations

from collections.abc import Sequence
from typing import Any

from .plan import BEST_SINGLE, LLM_ENS
from .results import HeatmapGrid, ResultTable
from .stats import improvement_pct, mean_std, rank

TABLE_GROUP = "table"
HEATMAP_GROUP = "heatmap"
SINGLE = "single"


def run_record(env_name: str, result_json: dict[str, Any], group: str,
               agent_id: str | None = None,
               cell: Sequence[str] | None = None) -> dict[str, Any]:
    record = dict(result_json)
    record.update(group=group, env=env_name, agent_id=agent_id,
                  cell=list(cell) if cell is not None else None)
    if agent_id is not None:
        record["method"] = SINGLE
    return record


def _matching(records, env_name: str, cell: Sequence[str] | None):
    group = TABLE_GROUP if cell is None else HEATMAP_GROUP
    cell = list(cell) if cell is not None else None
    return [r for r in records
            if r["group"] == group and r["env"] == env_name and r["cell"] == cell]


def method_returns(records: Sequence[dict[str, Any]], env_name: str,
                   method: str,
                   cell: Sequence[str] | None = None) -> list[float]:
    """
    Episode returns of `method`. For best-single, the returns of the agent
    whose solo runs have the highest mean.
    """
    runs = _matching(records, env_name, cell)
    if method == BEST_SINGLE:
        by_agent: dict[str, list[float]] = {}
        for r in runs:
            if r["method"] == SINGLE:
                by_agent.setdefault(r["agent_id"], []).append(r["episode_return"])
        if not by_agent:
            raise ValueError(f"{env_name}: no single-agent runs recorded")
        means = {agent: mean_std(v)[0] for agent, v in by_agent.items()}
        return by_agent[rank(means)[0]]

    values = [r["episode_return"] for r in runs if r["method"] == method]
    if not values:
        raise ValueError(f"{env_name}: no runs recorded for {method!r}")
    return values


def table_from_runs(records: Sequence[dict[str, Any]], env_name: str,
                    methods: Sequence[str]) -> ResultTable:
    table = ResultTable()
    for method in methods:
        table.add(env_name, method, method_returns(records, env_name, method))
    return table


def heatmap_from_runs(records: Sequence[dict[str, Any]], env_name: str,
                      labels: Sequence[str]) -> HeatmapGrid:
    grid = HeatmapGrid(list(labels), list(labels))
    for y in labels:
        for x in labels:
            ens, _ = mean_std(method_returns(records, env_name, LLM_ENS, (x, y)))
            best, _ = mean_std(method_returns(records, env_name, BEST_SINGLE,
                                              (x, y)))
            grid.cells[(x, y)] = improvement_pct(ens, best)
    return grid
