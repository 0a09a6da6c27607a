"""
Sensitivity of a model's optimal cut to one operational condition.

Two rules are available:

- ``cut-change`` (default): sensitive iff the optimal cut is not the same at
  every level of the axis, the other axes held at baseline.
- ``gain-threshold``: sensitive iff repartitioning away from the baseline
  optimum gains at least ``gain_threshold_pct`` at some level.

Both rules report the largest gain observed so that a model flagged
insensitive can still show small gains.
"""

import logging
from dataclasses import dataclass
from typing import List, Literal, Optional, Tuple

from ..exceptions import AnalysisError
from .gains import AXES, axis_slice, gain_table
from .optima import LatencySource, as_table, best_cut

logger = logging.getLogger(__name__)

Rule = Literal["cut-change", "gain-threshold"]
RULES: Tuple[str, ...] = ("cut-change", "gain-threshold")
DEFAULT_GAIN_THRESHOLD_PCT = 5.0


@dataclass(frozen=True)
class SensitivityResult:
    """Sensitivity verdict for one model on one platform along one axis."""

    model: str
    platform: str
    axis: str
    sensitive: bool
    optimal_by_level: Tuple[Tuple[float, int], ...]
    max_gain_pct: float
    rule: str

    @property
    def flag(self) -> str:
        return "Y" if self.sensitive else "N"


def sensitivity(
    source: LatencySource,
    axis: str,
    rule: str = "cut-change",
    gain_threshold_pct: float = DEFAULT_GAIN_THRESHOLD_PCT,
    *,
    model: Optional[str] = None,
    platform: Optional[str] = None,
) -> List[SensitivityResult]:
    """
    Classify every (model, platform) as sensitive or not to ``axis``.

    Args:
        source: Aggregated table or raw measurement records
        axis: ``cpu``, ``mem`` or ``net``
        rule: ``cut-change`` or ``gain-threshold``
        gain_threshold_pct: Threshold of the gain-threshold rule
        model: Restrict to one model
        platform: Restrict to one platform

    Raises:
        AnalysisError: On an unknown axis or rule, or missing levels at baseline
    """
    if axis not in AXES:
        raise AnalysisError(f"Unknown axis '{axis}'; use one of {list(AXES)}")
    if rule not in RULES:
        raise AnalysisError(f"Unknown sensitivity rule '{rule}'; use one of {list(RULES)}")
    table = as_table(source)

    results = []
    for m, p in table.models():
        if (model is not None and m != model) or (platform is not None and p != platform):
            continue
        optimal = tuple(
            (level, best_cut(latencies)[0]) for level, latencies in axis_slice(table, m, p, axis)
        )
        rows = gain_table(table, axis, model=m, platform=p)
        max_gain = max((row.gain_pct for row in rows), default=0.0)

        if rule == "cut-change":
            sensitive = len({cut for _, cut in optimal}) > 1
        else:
            sensitive = max_gain >= gain_threshold_pct

        results.append(
            SensitivityResult(
                model=m,
                platform=p,
                axis=axis,
                sensitive=sensitive,
                optimal_by_level=optimal,
                max_gain_pct=max_gain,
                rule=rule,
            )
        )
        logger.debug(f"{m}/{p} {axis}: {'Y' if sensitive else 'N'} (max gain {max_gain:.2f}%)")

    if not results:
        raise AnalysisError(f"No measurements for model={model} platform={platform}")
    return results
