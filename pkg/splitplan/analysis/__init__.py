"""
Analysis Module

This module turns latency measurements (real or swept) into results:
optimal cuts per condition, top-k cut distributions, sensitivity of the
optimal cut to each operational condition and static-versus-best gain
tables.
"""

from .aggregate import ConditionKey, LatencyTable
from .optima import (
    OptimalCut,
    best_cut,
    group_by_model,
    optimal_cuts,
    parse_where,
    slice_optima,
    topk_distribution,
)
from .gains import AXES, GainRow, axis_slice, gain_pct, gain_table
from .sensitivity import RULES, SensitivityResult, sensitivity
from .reports import (
    FORMATS,
    render_gains,
    render_rows,
    render_sensitivity,
    render_topk,
    write_histograms,
)

__all__ = [
    # Aggregation
    "ConditionKey",
    "LatencyTable",
    # Optima
    "OptimalCut",
    "best_cut",
    "group_by_model",
    "optimal_cuts",
    "parse_where",
    "slice_optima",
    "topk_distribution",
    # Gains and sensitivity
    "AXES",
    "GainRow",
    "axis_slice",
    "gain_pct",
    "gain_table",
    "RULES",
    "SensitivityResult",
    "sensitivity",
    # Reports
    "FORMATS",
    "render_gains",
    "render_rows",
    "render_sensitivity",
    "render_topk",
    "write_histograms",
]
