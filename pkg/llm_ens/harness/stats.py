from __future__ import annotations

from collections.abc import Mapping, Sequence

import numpy as np


def mean_std(values: Sequence[float]) -> tuple[float, float]:
    """
    Arithmetic mean and sample standard deviation (divisor n-1). A single
    value has std 0.
    """
    if len(values) == 0:
        raise ValueError("mean_std needs at least one value")
    data = np.asarray(values, dtype=float)
    if len(data) == 1:
        return float(data[0]), 0.0
    return float(data.mean()), float(data.std(ddof=1))


def improvement_pct(candidate: float, baseline: float) -> float | None:
    """Signed improvement of `candidate` over `baseline` in percent, one decimal."""
    if baseline <= 0:
        return None
    return round(100.0 * (candidate - baseline) / baseline, 1)


def rank(row: Mapping[str, float]) -> list[str]:
    """Keys by descending value; ties go to the smaller name."""
    return sorted(row, key=lambda key: (-row[key], key))


def mark_best(row: Mapping[str, float]) -> tuple[str, str]:
    """Best and second-best method of a row."""
    if len(row) < 2:
        raise ValueError(f"mark_best needs at least two methods, got {len(row)}")
    ranked = rank(row)
    return ranked[0], ranked[1]


def format_number(value: float) -> str:
    text = f"{value:.2f}".rstrip("0").rstrip(".")
    return "0" if text == "-0" else text


def format_cell(mean: float, std: float) -> str:
    return f"{format_number(mean)}({format_number(std)})"


def format_pct(value: float | None) -> str:
    return "n/a" if value is None else f"{value:.1f}"
