"""
Rendering analysis results as human tables, CSV or JSON.

Cuts are printed with 1-based layer labels (``cut_after + 1``), the naming
used in partitioning tables.
"""

import json
import logging
import re
from pathlib import Path
from typing import Dict, Iterable, List, Literal, Mapping, Sequence, Tuple

import pandas as pd

from ..exceptions import AnalysisError
from .gains import GainRow
from .sensitivity import SensitivityResult

logger = logging.getLogger(__name__)

OutputFormat = Literal["table", "csv", "json"]
FORMATS: Tuple[str, ...] = ("table", "csv", "json")

Distributions = Mapping[Tuple[str, str], Mapping[int, float]]


def render_rows(rows: List[Dict], columns: Sequence[str], fmt: str) -> str:
    if fmt not in FORMATS:
        raise AnalysisError(f"Unknown output format '{fmt}'; use one of {list(FORMATS)}")
    if fmt == "json":
        return json.dumps(rows, indent=2) + "\n"
    frame = pd.DataFrame(rows, columns=list(columns))
    if fmt == "csv":
        return frame.to_csv(index=False, lineterminator="\n")
    if frame.empty:
        return "(no rows)\n"
    return frame.to_string(index=False) + "\n"


def topk_rows(distributions: Distributions) -> List[Dict]:
    return [
        {"model": model, "platform": platform, "rank": rank, "cut": cut + 1, "percentage": pct}
        for (model, platform), dist in distributions.items()
        for rank, (cut, pct) in enumerate(dist.items(), start=1)
    ]


def render_topk(distributions: Distributions, fmt: str = "table") -> str:
    return render_rows(topk_rows(distributions), ["model", "platform", "rank", "cut", "percentage"], fmt)


def render_sensitivity(results: Iterable[SensitivityResult], fmt: str = "table") -> str:
    rows = []
    for r in results:
        rows.append(
            {
                "model": r.model,
                "platform": r.platform,
                "axis": r.axis,
                "sensitive": r.flag if fmt != "json" else r.sensitive,
                "max_gain_pct": round(r.max_gain_pct, 2),
                "optimal_cuts": (
                    [{"level": level, "cut": cut + 1} for level, cut in r.optimal_by_level]
                    if fmt == "json"
                    else " ".join(f"{level:g}:{cut + 1}" for level, cut in r.optimal_by_level)
                ),
                "rule": r.rule,
            }
        )
    columns = ["model", "platform", "axis", "sensitive", "max_gain_pct", "optimal_cuts", "rule"]
    return render_rows(rows, columns, fmt)


def render_gains(rows: Iterable[GainRow], fmt: str = "table") -> str:
    out = [
        {
            "model": row.model,
            "platform": row.platform,
            "condition": row.condition,
            "static_latency_s": row.static_latency_s,
            "static_cut": row.static_cut + 1,
            "best_latency_s": row.best_latency_s,
            "best_cut": row.best_cut + 1,
            "gain_pct": row.gain_pct_rounded,
        }
        for row in rows
    ]
    columns = [
        "model",
        "platform",
        "condition",
        "static_latency_s",
        "static_cut",
        "best_latency_s",
        "best_cut",
        "gain_pct",
    ]
    return render_rows(out, columns, fmt)


def _safe_name(text: str) -> str:
    return re.sub(r"[^A-Za-z0-9._-]+", "_", text)


def write_histograms(distributions: Distributions, directory: Path) -> List[Path]:
    """
    Write one ``cut_label,percentage`` CSV per (model, platform).

    Returns:
        List[Path]: Files written
    """
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    for (model, platform), dist in distributions.items():
        path = directory / f"{_safe_name(model)}__{_safe_name(platform)}.csv"
        frame = pd.DataFrame(
            [(cut + 1, pct) for cut, pct in dist.items()], columns=["cut_label", "percentage"]
        )
        frame.to_csv(path, index=False, lineterminator="\n")
        written.append(path)
    logger.info(f"Wrote {len(written)} histogram files to {directory}")
    return written
