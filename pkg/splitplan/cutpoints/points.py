"""
Partition point identification.

A cut after topological position i places the prefix 0..i on the edge and
the rest in the cloud. It is valid only when exactly one distinct producer
in the prefix has a consumer outside it, i.e. a single tensor crosses the
edge/cloud boundary. Parallel paths therefore never get split.
"""

import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Set

from ..exceptions import CutPointError
from ..graph import DnnGraph

logger = logging.getLogger(__name__)

ALL_CLOUD = -1
"""``after_layer`` value of the optional cut in front of the first layer."""


@dataclass(frozen=True)
class CutPoint:
    """
    A valid partition of a graph into an edge prefix and a cloud suffix.

    Attributes:
        after_layer: Last layer running on the edge, or ``ALL_CLOUD``
        position: Topological position of ``after_layer`` (-1 for all-cloud)
        crossing_tensor: Layer whose output is the single tensor sent to the cloud
        crossing_bytes: Size of that tensor in bytes
        edge_set: Layers running on the edge
        cloud_set: Layers running in the cloud (never empty)
    """

    after_layer: int
    position: int
    crossing_tensor: int
    crossing_bytes: int
    edge_set: FrozenSet[int]
    cloud_set: FrozenSet[int]

    @property
    def label(self) -> int:
        """1-based layer naming used in reports; 0 for the all-cloud cut."""
        return self.after_layer + 1

    @property
    def is_all_cloud(self) -> bool:
        return self.after_layer == ALL_CLOUD


def enumerate_cutpoints(graph: DnnGraph, allow_all_cloud: bool = False) -> List[CutPoint]:
    """
    List every valid cut point of a graph, ordered by topological position.

    A sequential N-layer graph yields N-1 cut points; the cut after the
    final layer is never produced because the cloud partition would be empty.

    Args:
        graph: Validated graph
        allow_all_cloud: Also emit the cut in front of the first layer, which
            ships the input layer's output (the raw input) to the cloud

    Returns:
        List[CutPoint]: Cut points with strictly growing edge sets
    """
    order = graph.topological_order
    all_layers = frozenset(order)
    cuts: List[CutPoint] = []

    if allow_all_cloud:
        source = graph.input_layer
        cuts.append(
            CutPoint(
                after_layer=ALL_CLOUD,
                position=-1,
                crossing_tensor=source,
                crossing_bytes=graph.layer(source).output_bytes,
                edge_set=frozenset(),
                cloud_set=all_layers,
            )
        )

    pending: Dict[int, int] = {}
    frontier: Set[int] = set()
    prefix: Set[int] = set()

    for position, layer_id in enumerate(order[:-1]):
        prefix.add(layer_id)
        for source in graph.inputs_of(layer_id):
            pending[source] -= 1
            if pending[source] == 0:
                frontier.discard(source)
        pending[layer_id] = len(graph.consumers_of(layer_id))
        if pending[layer_id]:
            frontier.add(layer_id)

        if len(frontier) == 1:
            (producer,) = frontier
            edge_set = frozenset(prefix)
            cuts.append(
                CutPoint(
                    after_layer=layer_id,
                    position=position,
                    crossing_tensor=producer,
                    crossing_bytes=graph.layer(producer).output_bytes,
                    edge_set=edge_set,
                    cloud_set=all_layers - edge_set,
                )
            )

    logger.debug(f"Graph '{graph.name}': {len(cuts)} cut points")
    return cuts


def validate_cut(graph: DnnGraph, cut: CutPoint) -> None:
    """
    Check that a cut point belongs to a graph.

    Raises:
        CutPointError: If the cut's partition does not match the graph's
            topological prefix at the cut's position
    """
    order = graph.topological_order
    if not -1 <= cut.position < len(order) - 1:
        raise CutPointError(
            f"Cut after layer {cut.after_layer} is out of range for graph '{graph.name}'"
        )
    expected_edge = frozenset(order[: cut.position + 1])
    if (
        cut.edge_set != expected_edge
        or cut.cloud_set != frozenset(order) - expected_edge
        or (cut.position >= 0 and order[cut.position] != cut.after_layer)
    ):
        raise CutPointError(
            f"Cut after layer {cut.after_layer} does not belong to graph '{graph.name}'"
        )


def find_cut(cuts: List[CutPoint], after_layer: int) -> CutPoint:
    """
    Select a cut by its ``after_layer`` id.

    Raises:
        CutPointError: If no cut in ``cuts`` sits after that layer
    """
    for cut in cuts:
        if cut.after_layer == after_layer:
            return cut
    raise CutPointError(
        f"Layer {after_layer} is not a valid partition point; "
        f"valid: {[c.after_layer for c in cuts]}"
    )
