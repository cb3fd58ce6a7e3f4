from __future__ import annotations

import logging
import math
from pathlib import Path

from llm_ens.errors import AuditMismatchError

from . import report
from .summary import HEATMAP_GROUP, heatmap_from_runs, table_from_runs

logger = logging.getLogger(__name__)

AUDIT_TOLERANCE = 1e-9


def _check(what: str, emitted: float | None, recomputed: float | None) -> None:
    if emitted is None or recomputed is None:
        if emitted is not recomputed:
            raise AuditMismatchError(
                f"{what}: emitted {emitted}, recomputed {recomputed}")
    elif not math.isclose(emitted, recomputed, rel_tol=0.0,
                          abs_tol=AUDIT_TOLERANCE):
        raise AuditMismatchError(
            f"{what}: emitted {emitted!r}, recomputed {recomputed!r}")


def audit(output_dir: str | Path) -> int:
    """
    Recompute every emitted number from the run log in `output_dir` and
    return how many were checked.
    """
    output_dir = Path(output_dir)
    records = report.read_runs(output_dir)
    checked = 0

    for i, record in enumerate(records):
        recomputed = sum(step[3] for step in record["trace"])
        _check(f"run {i} return", record["episode_return"], recomputed)
        if len(record["situation_timeline"]) != record["categorizer_call_count"]:
            raise AuditMismatchError(
                f"run {i}: {record['categorizer_call_count']} categorizer calls "
                f"for {len(record['situation_timeline'])} timeline entries")
        checked += 1

    table = report.read_table(output_dir / report.TABLE_CSV)
    for env in table.envs():
        try:
            fresh = table_from_runs(records, env, table.methods(env))
        except ValueError as e:
            raise AuditMismatchError(str(e)) from e
        for method in table.methods(env):
            emitted, recomputed = table[(env, method)], fresh[(env, method)]
            _check(f"{env}/{method} mean", emitted.mean, recomputed.mean)
            _check(f"{env}/{method} std", emitted.std, recomputed.std)
            if emitted.n != recomputed.n:
                raise AuditMismatchError(
                    f"{env}/{method}: emitted n={emitted.n}, runs hold {recomputed.n}")
            checked += 3

    heatmap_csv = output_dir / report.HEATMAP_CSV
    if heatmap_csv.exists():
        grid = report.read_heatmap(heatmap_csv)
        envs = {r["env"] for r in records if r["group"] == HEATMAP_GROUP}
        if len(envs) != 1:
            raise AuditMismatchError(
                f"heatmap runs cover {len(envs)} environments, expected 1")
        try:
            fresh_grid = heatmap_from_runs(records, envs.pop(), grid.axis_x)
        except ValueError as e:
            raise AuditMismatchError(str(e)) from e
        for key, value in grid.cells.items():
            _check(f"heatmap cell {key}", value, fresh_grid.cells.get(key))
            checked += 1

    logger.info("%s: %d numbers match the run log", output_dir, checked)
    return checked
