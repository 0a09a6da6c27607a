"""
End-to-end latency of a partitioned DNN.

Latency of one inference = edge compute of the prefix (stressed) + transfer
of the single crossing tensor + cloud compute of the suffix.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Optional

from ..cutpoints import CutPoint, validate_cut
from ..exceptions import DeviceProfileError
from ..graph import DnnGraph
from .conditions import BITS_PER_MEGABIT, LatencyEstimate, NetworkModel, OperationalCondition
from .stress import StressResponse

logger = logging.getLogger(__name__)


def transfer_time(num_bytes: int, net: NetworkModel) -> float:
    """Seconds to ship ``num_bytes`` over ``net``, including its fixed delay."""
    return num_bytes * 8 / (net.rate * BITS_PER_MEGABIT) + net.base_rtt


def _check_profile(graph: DnnGraph, profile: str, side: str) -> None:
    if profile not in graph.device_profiles:
        raise DeviceProfileError(
            f"Unknown {side} device profile '{profile}' for graph '{graph.name}'; "
            f"available: {sorted(graph.device_profiles)}"
        )


def partition_latency(
    graph: DnnGraph,
    cut: CutPoint,
    cond: OperationalCondition,
    resp: StressResponse,
    net: NetworkModel,
    edge_profile: str,
    cloud_profile: str,
    *,
    cloud_response: Optional[StressResponse] = None,
    cloud_condition: Optional[OperationalCondition] = None,
) -> LatencyEstimate:
    """
    Predict the latency of one inference for a cut under a condition.

    Args:
        graph: Validated graph
        cut: Cut point of ``graph``
        cond: Condition the edge runs under; its stresses drive ``resp``
        resp: Edge stress response
        net: Edge-to-cloud link
        edge_profile: Device profile whose latencies the edge layers use
        cloud_profile: Device profile whose latencies the cloud layers use
        cloud_response: Optional stress response of the cloud side
        cloud_condition: Condition the cloud runs under; only used with ``cloud_response``

    Returns:
        LatencyEstimate: Per-stage breakdown and total

    Raises:
        DeviceProfileError: If either profile is missing from the graph
        CutPointError: If the cut does not belong to the graph
    """
    _check_profile(graph, edge_profile, "edge")
    _check_profile(graph, cloud_profile, "cloud")
    validate_cut(graph, cut)

    edge_multiplier = resp.multiplier(cond)
    edge_s = math.fsum(
        graph.layer(i).base_latency[edge_profile] for i in sorted(cut.edge_set)
    ) * edge_multiplier

    cloud_multiplier = 1.0
    if cloud_response is not None and cloud_condition is not None:
        cloud_multiplier = cloud_response.multiplier(cloud_condition)
    cloud_s = math.fsum(
        graph.layer(i).base_latency[cloud_profile] for i in sorted(cut.cloud_set)
    ) * cloud_multiplier

    transfer_s = transfer_time(cut.crossing_bytes, net)
    return LatencyEstimate(edge_s=edge_s, transfer_s=transfer_s, cloud_s=cloud_s)


@dataclass(frozen=True)
class LatencyModel:
    """
    Everything needed to price a cut besides the cut and the condition.

    The network rate comes from the condition; the fixed delay from
    ``base_rtt_s``.
    """

    response: StressResponse = field(default_factory=StressResponse.identity)
    base_rtt_s: float = 0.0
    edge_profile: str = "edge"
    cloud_profile: str = "cloud"
    cloud_response: Optional[StressResponse] = None
    cloud_condition: Optional[OperationalCondition] = None

    def network(self, cond: OperationalCondition) -> NetworkModel:
        return NetworkModel(rate=cond.net_rate, base_rtt=self.base_rtt_s)

    def estimate(self, graph: DnnGraph, cut: CutPoint, cond: OperationalCondition) -> LatencyEstimate:
        return partition_latency(
            graph,
            cut,
            cond,
            self.response,
            self.network(cond),
            self.edge_profile,
            self.cloud_profile,
            cloud_response=self.cloud_response,
            cloud_condition=self.cloud_condition,
        )
