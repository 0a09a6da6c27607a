"""
Static-versus-best gain tables.

Along one axis (cpu, mem or net) the other two axes stay at their baseline:
no added stress and the highest measured transfer rate. The cut that is
optimal at the baseline level is kept fixed ("static") and compared with
the optimum of every other level.
"""

import logging
import math
from dataclasses import dataclass
from typing import Dict, List, Literal, Optional, Tuple

from ..exceptions import AnalysisError
from .aggregate import ConditionKey, LatencyTable
from .optima import LatencySource, as_table, best_cut

logger = logging.getLogger(__name__)

Axis = Literal["cpu", "mem", "net"]
AXES: Tuple[str, ...] = ("cpu", "mem", "net")
AXIS_COLUMNS = {"cpu": "cpu_stress", "mem": "mem_stress", "net": "net_rate"}


@dataclass(frozen=True)
class GainRow:
    """
    Latency of the baseline-optimal cut versus the best cut at one level.

    ``gain_pct`` keeps full precision; ``gain_pct_rounded`` is what reports print.
    """

    model: str
    platform: str
    axis: str
    level: float
    static_cut: int
    static_latency_s: float
    best_cut: int
    best_latency_s: float
    gain_pct: float

    @property
    def gain_pct_rounded(self) -> float:
        return round(self.gain_pct, 2)

    @property
    def condition(self) -> str:
        if self.axis == "net":
            return f"net {self.level:g} Mb/s"
        return f"{self.axis} {self.level:.0%}"


def gain_pct(static_s: float, best_s: float) -> float:
    """100 x (static - best) / static."""
    if static_s <= 0:
        raise AnalysisError(f"Static latency must be positive, got {static_s}")
    return 100.0 * (static_s - best_s) / static_s


def _check_axis(axis: str) -> None:
    if axis not in AXES:
        raise AnalysisError(f"Unknown axis '{axis}'; use one of {list(AXES)}")


def _has(values, target: float) -> bool:
    return any(math.isclose(v, target, rel_tol=0.0, abs_tol=1e-9) for v in values)


def axis_levels(table: LatencyTable, model: str, platform: str, axis: str) -> List[float]:
    """
    Levels of ``axis`` present for a model, ordered from least to most adverse.

    Stress levels ascend; network rates descend.
    """
    _check_axis(axis)
    frame = table.frame
    sub = frame[(frame["model"] == model) & (frame["platform"] == platform)]
    if sub.empty:
        raise AnalysisError(f"No measurements for {model} on {platform}")
    levels = sorted({float(v) for v in sub[AXIS_COLUMNS[axis]]})
    return levels[::-1] if axis == "net" else levels


def axis_slice(
    table: LatencyTable, model: str, platform: str, axis: str
) -> List[Tuple[float, Dict[int, float]]]:
    """
    Cut latencies at every level of ``axis`` with the other axes at baseline.

    Raises:
        AnalysisError: If the baseline is missing or a level has no
            measurements at the baseline of the other axes
    """
    levels = axis_levels(table, model, platform, axis)
    baseline = {
        "cpu": 0.0,
        "mem": 0.0,
        "net": max(axis_levels(table, model, platform, "net")),
    }
    for name in ("cpu", "mem"):
        if not _has(axis_levels(table, model, platform, name), 0.0):
            raise AnalysisError(f"{model} on {platform} has no measurements without {name} stress")

    result = []
    for level in levels:
        values = dict(baseline)
        values[axis] = level
        key = ConditionKey(model, platform, values["cpu"], values["mem"], values["net"])
        try:
            result.append((level, table.latencies(key)))
        except AnalysisError as e:
            raise AnalysisError(
                f"{model} on {platform}: {axis} level {level:g} is missing at the baseline "
                f"of the other conditions"
            ) from e
    return result


def _rows_for_model(
    table: LatencyTable,
    model: str,
    platform: str,
    axis: str,
    baseline_level: Optional[float],
) -> List[GainRow]:
    slices = axis_slice(table, model, platform, axis)
    if baseline_level is None:
        base_level, base_latencies = slices[0]
    else:
        matches = [s for s in slices if math.isclose(s[0], baseline_level, rel_tol=0.0, abs_tol=1e-9)]
        if not matches:
            raise AnalysisError(
                f"{model} on {platform}: baseline {axis} level {baseline_level:g} is missing"
            )
        base_level, base_latencies = matches[0]

    static_cut, _ = best_cut(base_latencies)
    rows = []
    for level, latencies in slices:
        if level == base_level:
            continue
        if static_cut not in latencies:
            raise AnalysisError(
                f"{model} on {platform}: cut after layer {static_cut} was not measured "
                f"at {axis} level {level:g}"
            )
        static_s = latencies[static_cut]
        cut, best_s = best_cut(latencies)
        rows.append(
            GainRow(
                model=model,
                platform=platform,
                axis=axis,
                level=level,
                static_cut=static_cut,
                static_latency_s=static_s,
                best_cut=cut,
                best_latency_s=best_s,
                gain_pct=gain_pct(static_s, best_s),
            )
        )
    return rows


def gain_table(
    source: LatencySource,
    axis: str,
    baseline_level: Optional[float] = None,
    *,
    model: Optional[str] = None,
    platform: Optional[str] = None,
) -> List[GainRow]:
    """
    Gain of repartitioning at every non-baseline level of ``axis``.

    Args:
        source: Aggregated table or raw measurement records
        axis: ``cpu``, ``mem`` or ``net``
        baseline_level: Level whose optimal cut is kept static; defaults to
            no stress (cpu, mem) or the highest rate (net)
        model: Restrict to one model
        platform: Restrict to one platform

    Returns:
        List[GainRow]: Rows per (model, platform), levels from least to most adverse

    Raises:
        AnalysisError: On missing baseline levels or missing (level, cut) groups
    """
    _check_axis(axis)
    table = as_table(source)
    pairs = [
        (m, p)
        for m, p in table.models()
        if (model is None or m == model) and (platform is None or p == platform)
    ]
    if not pairs:
        raise AnalysisError(f"No measurements for model={model} platform={platform}")

    rows: List[GainRow] = []
    for m, p in pairs:
        rows.extend(_rows_for_model(table, m, p, axis, baseline_level))
    logger.debug(f"Gain table along {axis}: {len(rows)} rows")
    return rows
