"""
Sweep Module

This module runs synthetic partitioning experiments: every cut point under
every condition of a grid, with repetitions and seeded jitter, producing
records in the same CSV shape as real benchmark data.
"""

from .grid import (
    NET_RATES_MBPS,
    STRESS_LEVELS,
    ConditionGrid,
    default_grid,
    load_grid,
    load_grid_file,
    restrict,
)
from .records import CSV_HEADER, MeasurementRecord, write_records, write_records_file
from .runner import DEFAULT_NOISE, jitter_factors, run_sweep, sweep_platforms

__all__ = [
    # Grid
    "NET_RATES_MBPS",
    "STRESS_LEVELS",
    "ConditionGrid",
    "default_grid",
    "load_grid",
    "load_grid_file",
    "restrict",
    # Records
    "CSV_HEADER",
    "MeasurementRecord",
    "write_records",
    "write_records_file",
    # Runner
    "DEFAULT_NOISE",
    "jitter_factors",
    "run_sweep",
    "sweep_platforms",
]
