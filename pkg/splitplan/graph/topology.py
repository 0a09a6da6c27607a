"""
Topological helpers over validated graphs.
"""

from dataclasses import dataclass, field
from typing import Dict, Iterator, Tuple

from .model import DnnGraph


@dataclass(frozen=True)
class TopoOrder:
    """A topological order of layer ids with O(1) position lookup."""

    order: Tuple[int, ...]
    _positions: Dict[int, int] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(
            self, "_positions", {layer: index for index, layer in enumerate(self.order)}
        )

    def position(self, layer_id: int) -> int:
        return self._positions[layer_id]

    def is_valid_for(self, graph: DnnGraph) -> bool:
        """True iff every edge (u, v) of ``graph`` has position(u) < position(v)."""
        if sorted(self.order) != list(range(len(graph))):
            return False
        return all(
            self._positions[source] < self._positions[layer.id]
            for layer in graph.layers
            for source in layer.inputs
        )

    def __iter__(self) -> Iterator[int]:
        return iter(self.order)

    def __len__(self) -> int:
        return len(self.order)

    def __getitem__(self, index: int) -> int:
        return self.order[index]


def topo_order(graph: DnnGraph) -> TopoOrder:
    """
    Deterministic topological order: among ready layers, the smallest id first.

    For a sequential chain this is 0, 1, ..., N-1.
    """
    return TopoOrder(graph.topological_order)


def is_sequential(graph: DnnGraph) -> bool:
    """True iff every layer has at most one input and at most one consumer."""
    return all(
        len(layer.inputs) <= 1 and len(graph.consumers_of(layer.id)) <= 1
        for layer in graph.layers
    )
