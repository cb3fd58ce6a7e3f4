from .audit import AUDIT_TOLERANCE, audit
from .experiment import Experiment, ExperimentResult, run_experiment
from .plan import (BEST_SINGLE, LLM_ENS, METHODS, ExperimentPlan, load_plan,
                   override_label, plan_from_data)
from .report import (emit_heatmap, emit_table, read_heatmap, read_table,
                     regenerate_report, render_heatmap, render_table)
from .results import CellStats, HeatmapGrid, ResultTable
from .stats import (format_cell, format_pct, improvement_pct, mark_best,
                    mean_std)

__all__ = [
    "AUDIT_TOLERANCE",
    "BEST_SINGLE",
    "CellStats",
    "Experiment",
    "ExperimentPlan",
    "ExperimentResult",
    "HeatmapGrid",
    "LLM_ENS",
    "METHODS",
    "ResultTable",
    "audit",
    "emit_heatmap",
    "emit_table",
    "format_cell",
    "format_pct",
    "improvement_pct",
    "load_plan",
    "mark_best",
    "mean_std",
    "override_label",
    "plan_from_data",
    "read_heatmap",
    "read_table",
    "regenerate_report",
    "render_heatmap",
    "render_table",
    "run_experiment",
]
