"""
Optimal cuts per condition and how often each cut wins.
"""

import logging
import math
from collections import Counter
from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from ..exceptions import AnalysisError
from ..sweep import MeasurementRecord
from .aggregate import ConditionKey, LatencyTable

logger = logging.getLogger(__name__)

LatencySource = Union[LatencyTable, Iterable[MeasurementRecord]]

WHERE_AXES = {"cpu": "cpu_stress", "mem": "mem_stress", "net": "net_rate"}


@dataclass(frozen=True)
class OptimalCut:
    """The cut with the lowest latency under one condition key."""

    key: ConditionKey
    cut_after: int
    mean_latency_s: float

    @property
    def label(self) -> int:
        return self.cut_after + 1


def as_table(source: LatencySource) -> LatencyTable:
    if isinstance(source, LatencyTable):
        return source
    return LatencyTable.from_records(source)


def best_cut(latencies: Mapping[int, float]) -> Tuple[int, float]:
    """Argmin over cut -> latency; ties go to the smallest cut."""
    if not latencies:
        raise AnalysisError("No cut latencies to choose from")
    return min(sorted(latencies.items()), key=lambda item: item[1])


def optimal_cuts(source: LatencySource) -> List[OptimalCut]:
    """
    Find the lowest-latency cut of every condition key.

    Args:
        source: Aggregated table or raw measurement records

    Returns:
        List[OptimalCut]: One entry per key, in key order

    Raises:
        AnalysisError: If there are no measurements
    """
    table = as_table(source)
    optima = []
    for key, latencies in table.groups():
        cut, latency = best_cut(latencies)
        optima.append(OptimalCut(key=key, cut_after=cut, mean_latency_s=latency))
    logger.debug(f"Found optimal cuts for {len(optima)} condition keys")
    return optima


def topk_distribution(optima: Sequence[OptimalCut], k: Optional[int] = 5) -> Dict[int, float]:
    """
    Share of conditions in which each cut is optimal.

    Args:
        optima: Optimal cuts, usually of one model on one platform
        k: Number of most frequent cuts to return; ``None`` returns all

    Returns:
        Dict[int, float]: ``cut_after`` -> percentage of ``optima``, most
            frequent first, ties by smaller cut

    Raises:
        AnalysisError: If ``optima`` is empty or ``k`` < 1
    """
    if k is not None and k < 1:
        raise AnalysisError(f"k must be at least 1, got {k}")
    if not optima:
        raise AnalysisError("No optimal cuts to count")

    counts = Counter(o.cut_after for o in optima)
    ranked = sorted(counts.items(), key=lambda item: (-item[1], item[0]))
    if k is not None:
        ranked = ranked[:k]
    total = len(optima)
    return {cut: 100.0 * count / total for cut, count in ranked}


def group_by_model(optima: Iterable[OptimalCut]) -> Dict[Tuple[str, str], List[OptimalCut]]:
    """Split optima by (model, platform), keeping their order."""
    grouped: Dict[Tuple[str, str], List[OptimalCut]] = {}
    for optimum in optima:
        grouped.setdefault((optimum.key.model, optimum.key.platform), []).append(optimum)
    return grouped


def parse_where(clauses: Iterable[str]) -> Dict[str, float]:
    """
    Parse ``axis=value`` filters such as ``cpu=0.9`` or ``net=10``.

    Raises:
        AnalysisError: On an unknown axis or a non-numeric value
    """
    filters: Dict[str, float] = {}
    for clause in clauses:
        axis, sep, value = clause.partition("=")
        axis = axis.strip().lower()
        if not sep or axis not in WHERE_AXES:
            raise AnalysisError(f"Bad filter '{clause}'; expected cpu=, mem= or net=<number>")
        try:
            filters[axis] = float(value)
        except ValueError as e:
            raise AnalysisError(f"Bad filter value in '{clause}'") from e
    return filters


def slice_optima(optima: Iterable[OptimalCut], **filters: float) -> List[OptimalCut]:
    """Keep optima whose condition matches every ``cpu``/``mem``/``net`` filter."""
    unknown = set(filters) - set(WHERE_AXES)
    if unknown:
        raise AnalysisError(f"Unknown filter axes {sorted(unknown)}")
    return [
        o
        for o in optima
        if all(
            math.isclose(getattr(o.key, WHERE_AXES[axis]), value, rel_tol=0.0, abs_tol=1e-9)
            for axis, value in filters.items()
        )
    ]
