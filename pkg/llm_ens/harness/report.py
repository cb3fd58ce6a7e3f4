"""
Table and heatmap artifacts: a comma-delimited machine file and an aligned
human file per artifact, plus the per-episode run log they are computed from.
"""
from __future__ import annotations

import csv
import io
import json
import logging
from collections.abc import Iterable
from pathlib import Path
from typing import Any

from llm_ens.errors import ReportError
from llm_ens.utils.json_io import canonical_json

from .results import CellStats, HeatmapGrid, ResultTable
from .stats import format_cell, format_pct, improvement_pct, mark_best

logger = logging.getLogger(__name__)

TABLE_CSV = "results.csv"
TABLE_TXT = "results.txt"
HEATMAP_CSV = "heatmap.csv"
HEATMAP_TXT = "heatmap.txt"
RUNS_FILE = "runs.jsonl"
PROFILE_FILE = "profile.json"
CATALOG_FILE = "catalog.json"

TABLE_HEADER = ["env", "method", "mean", "std", "n"]
HEATMAP_HEADER = ["x", "y", "improvement"]
NOT_AVAILABLE = "n/a"


def _write(path: Path, text: str) -> Path:
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="") as f:
            f.write(text)
    except OSError as e:
        raise ReportError(f"cannot write {path}: {e}") from e
    logger.debug("wrote %s", path)
    return path


def _read_csv(path: Path, header: list[str]) -> list[list[str]]:
    try:
        with open(path, encoding="utf-8", newline="") as f:
            rows = list(csv.reader(f))
    except OSError as e:
        raise ReportError(f"cannot read {path}: {e}") from e
    if not rows or rows[0] != header:
        raise ReportError(f"{path}: expected header {','.join(header)}")
    return rows[1:]


def _csv_text(header: list[str], rows: Iterable[list[str]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


def _aligned(rows: list[list[str]]) -> list[str]:
    widths = [max(len(row[i]) for row in rows) for i in range(len(rows[0]))]
    return [
        "  ".join(cell.ljust(width) for cell, width in zip(row, widths)).rstrip()
        for row in rows
    ]


# tables


def render_table(table: ResultTable) -> str:
    """
    Aligned table: `*` marks the best method of an environment and `_` the
    second best, followed by the best method's improvement over the second.
    """
    rows = [["env", "method", "mean(std)", ""]]
    footer = []
    for env in table.envs():
        markers = {}
        row = table.row(env)
        if len(row) >= 2:
            best, second = mark_best(row)
            markers = {best: "*", second: "_"}
            pct = improvement_pct(row[best], row[second])
            footer.append(f"{env}: {best} over {second}: " +
                          (format_pct(pct) + "%" if pct is not None else NOT_AVAILABLE))
        for method in table.methods(env):
            cell = table[(env, method)]
            rows.append([env, method, format_cell(cell.mean, cell.std),
                         markers.get(method, "")])
    lines = _aligned(rows)
    if footer:
        lines += [""] + footer
    return "\n".join(lines) + "\n"


def emit_table(table: ResultTable, output_dir: str | Path) -> tuple[Path, Path]:
    output_dir = Path(output_dir)
    rows = [[env, method, repr(table[(env, method)].mean),
             repr(table[(env, method)].std), str(table[(env, method)].n)]
            for env in table.envs() for method in table.methods(env)]
    return (_write(output_dir / TABLE_CSV, _csv_text(TABLE_HEADER, rows)),
            _write(output_dir / TABLE_TXT, render_table(table)))


def read_table(path: str | Path) -> ResultTable:
    table = ResultTable()
    for row in _read_csv(Path(path), TABLE_HEADER):
        try:
            env, method, mean, std, n = row
            table.cells[(env, method)] = CellStats(float(mean), float(std), int(n))
        except ValueError as e:
            raise ReportError(f"{path}: bad row {row}: {e}") from e
    return table


# heatmaps


def render_heatmap(grid: HeatmapGrid) -> str:
    rows = [["y \\ x", *grid.axis_x]]
    for y in grid.axis_y:
        rows.append([y, *(format_pct(grid.cells.get((x, y))) for x in grid.axis_x)])
    lines = ["llm-ens improvement over the better single agent (%)", ""]
    return "\n".join(lines + _aligned(rows)) + "\n"


def emit_heatmap(grid: HeatmapGrid, output_dir: str | Path) -> tuple[Path, Path]:
    output_dir = Path(output_dir)
    rows = []
    for y in grid.axis_y:
        for x in grid.axis_x:
            value = grid.cells[(x, y)]
            rows.append([x, y, NOT_AVAILABLE if value is None else repr(value)])
    return (_write(output_dir / HEATMAP_CSV, _csv_text(HEATMAP_HEADER, rows)),
            _write(output_dir / HEATMAP_TXT, render_heatmap(grid)))


def read_heatmap(path: str | Path) -> HeatmapGrid:
    grid = HeatmapGrid([], [])
    for row in _read_csv(Path(path), HEATMAP_HEADER):
        try:
            x, y, value = row
            grid.cells[(x, y)] = None if value == NOT_AVAILABLE else float(value)
        except ValueError as e:
            raise ReportError(f"{path}: bad row {row}: {e}") from e
        if x not in grid.axis_x:
            grid.axis_x.append(x)
        if y not in grid.axis_y:
            grid.axis_y.append(y)
    return grid


# run log


def write_runs(records: Iterable[dict[str, Any]], output_dir: str | Path) -> Path:
    text = "".join(canonical_json(record) + "\n" for record in records)
    return _write(Path(output_dir) / RUNS_FILE, text)


def read_runs(output_dir: str | Path) -> list[dict[str, Any]]:
    path = Path(output_dir) / RUNS_FILE
    try:
        with open(path, encoding="utf-8") as f:
            return [json.loads(line) for line in f if line.strip()]
    except OSError as e:
        raise ReportError(f"cannot read {path}: {e}") from e
    except ValueError as e:
        raise ReportError(f"{path}: malformed run record: {e}") from e


def regenerate_report(output_dir: str | Path) -> list[Path]:
    """Re-render the human files from the machine files in `output_dir`."""
    output_dir = Path(output_dir)
    written = [_write(output_dir / TABLE_TXT,
                      render_table(read_table(output_dir / TABLE_CSV)))]
    if (output_dir / HEATMAP_CSV).exists():
        written.append(_write(output_dir / HEATMAP_TXT,
                              render_heatmap(read_heatmap(output_dir / HEATMAP_CSV))))
    return written
