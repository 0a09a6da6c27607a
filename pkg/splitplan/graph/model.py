"""
DNN graph model.

This module contains the layer profile and the validated DAG of layers
that every other splitplan module consumes. A graph is checked once on
construction and never mutated afterwards, so it can be shared freely
between worker threads.
"""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import FrozenSet, Iterable, List, Mapping, Sequence, Tuple

import networkx as nx

from ..exceptions import GraphValidationError

logger = logging.getLogger(__name__)


class LayerKind(str, Enum):
    """Layer kinds recognised in model documents."""

    FULLY_CONNECTED = "fully-connected"
    CONVOLUTION = "convolution"
    POOLING = "pooling"
    ACTIVATION = "activation"
    SOFTMAX = "softmax"
    INPUT = "input"
    OTHER = "other"


@dataclass(frozen=True)
class LayerProfile:
    """
    A single layer with its measured cost.

    Attributes:
        id: Dense layer index, 0..N-1 in declaration order
        name: Human-readable label
        kind: Layer kind
        base_latency: Unstressed compute time in seconds, per device profile
        output_bytes: Size of the layer's output tensor in bytes
        inputs: Ids of the layers feeding this one
    """

    id: int
    name: str
    kind: LayerKind
    base_latency: Mapping[str, float]
    output_bytes: int
    inputs: FrozenSet[int] = field(default_factory=frozenset)


class DnnGraph:
    """
    A validated, immutable DAG of layers.

    Construction enforces the graph invariants:

    - layer ids form the dense range 0..N-1 in list order
    - base latencies and output sizes are non-negative
    - every layer carries every device profile used anywhere in the graph
    - the graph is acyclic, weakly connected, and has exactly one input
      layer and exactly one output layer

    Raises:
        GraphValidationError: On any violation, naming the offending layer
            (or the layers forming a cycle)
    """

    __slots__ = (
        "_name",
        "_layers",
        "_dag",
        "_consumers",
        "_device_profiles",
        "_input_layer",
        "_output_layer",
        "_topological_order",
    )

    def __init__(self, name: str, layers: Iterable[LayerProfile]):
        self._name = name
        self._layers: Tuple[LayerProfile, ...] = tuple(layers)
        self._device_profiles = self._check_layers()
        self._dag = self._build_dag()
        self._check_structure()
        self._consumers: Tuple[Tuple[int, ...], ...] = tuple(
            tuple(sorted(self._dag.successors(layer.id))) for layer in self._layers
        )
        self._topological_order: Tuple[int, ...] = tuple(
            nx.lexicographical_topological_sort(self._dag)
        )
        logger.debug(
            f"Validated graph '{name}': {len(self._layers)} layers, "
            f"profiles={sorted(self._device_profiles)}"
        )

    # -- validation ---------------------------------------------------------

    def _check_layers(self) -> FrozenSet[str]:
        if not self._layers:
            raise GraphValidationError(f"Graph '{self._name}' has no layers")

        n = len(self._layers)
        profiles = set()
        for index, layer in enumerate(self._layers):
            if layer.id != index:
                raise GraphValidationError(
                    f"Layer '{layer.name}' has id {layer.id}, expected {index}",
                    layer=layer.name,
                )
            if layer.output_bytes < 0:
                raise GraphValidationError(
                    f"Layer '{layer.name}' has negative output_bytes {layer.output_bytes}",
                    layer=layer.name,
                )
            for profile, seconds in layer.base_latency.items():
                if not math.isfinite(seconds) or seconds < 0:
                    raise GraphValidationError(
                        f"Layer '{layer.name}' has invalid base latency {seconds} "
                        f"for device profile '{profile}'",
                        layer=layer.name,
                    )
            for source in layer.inputs:
                if source == layer.id:
                    raise GraphValidationError(
                        f"Layer '{layer.name}' lists itself as an input",
                        layer=layer.name,
                        cycle=[layer.name, layer.name],
                    )
                if not 0 <= source < n:
                    raise GraphValidationError(
                        f"Layer '{layer.name}' references unknown input layer {source}",
                        layer=layer.name,
                    )
            profiles.update(layer.base_latency)

        if not profiles:
            raise GraphValidationError(f"Graph '{self._name}' declares no device profiles")

        for layer in self._layers:
            missing = profiles.difference(layer.base_latency)
            if missing:
                raise GraphValidationError(
                    f"Layer '{layer.name}' is missing device profile(s) {sorted(missing)}",
                    layer=layer.name,
                )
        return frozenset(profiles)

    def _build_dag(self) -> nx.DiGraph:
        dag = nx.DiGraph(name=self._name)
        dag.add_nodes_from(layer.id for layer in self._layers)
        for layer in self._layers:
            dag.add_edges_from((source, layer.id) for source in layer.inputs)
        return dag

    def _check_structure(self) -> None:
        if not nx.is_directed_acyclic_graph(self._dag):
            edges = nx.find_cycle(self._dag)
            names = [self._layers[u].name for u, _ in edges]
            names.append(names[0])
            raise GraphValidationError(
                f"Graph '{self._name}' contains a cycle: {' -> '.join(names)}",
                layer=names[0],
                cycle=names,
            )

        sources = [v for v in self._dag.nodes if self._dag.in_degree(v) == 0]
        if len(sources) != 1:
            names = [self._layers[v].name for v in sorted(sources)]
            raise GraphValidationError(
                f"Graph '{self._name}' must have exactly one input layer, found {names}",
                layer=names[1] if len(names) > 1 else None,
            )

        sinks = [v for v in self._dag.nodes if self._dag.out_degree(v) == 0]
        if len(sinks) != 1:
            names = [self._layers[v].name for v in sorted(sinks)]
            raise GraphValidationError(
                f"Graph '{self._name}' must have exactly one output layer, found {names}",
                layer=names[0] if names else None,
            )

        if not nx.is_weakly_connected(self._dag):
            reachable = nx.node_connected_component(self._dag.to_undirected(as_view=True), sources[0])
            stray = min(set(self._dag.nodes) - reachable)
            raise GraphValidationError(
                f"Graph '{self._name}' is not connected: layer "
                f"'{self._layers[stray].name}' is unreachable from the input",
                layer=self._layers[stray].name,
            )

        self._input_layer = sources[0]
        self._output_layer = sinks[0]

    # -- accessors ----------------------------------------------------------

    @property
    def name(self) -> str:
        return self._name

    @property
    def layers(self) -> Tuple[LayerProfile, ...]:
        return self._layers

    @property
    def device_profiles(self) -> FrozenSet[str]:
        return self._device_profiles

    @property
    def input_layer(self) -> int:
        return self._input_layer

    @property
    def output_layer(self) -> int:
        return self._output_layer

    @property
    def topological_order(self) -> Tuple[int, ...]:
        """Topological order with smallest-id tie-break."""
        return self._topological_order

    @property
    def dag(self) -> nx.DiGraph:
        """Read-only networkx view of the layer DAG."""
        return self._dag.copy(as_view=True)

    def layer(self, layer_id: int) -> LayerProfile:
        return self._layers[layer_id]

    def inputs_of(self, layer_id: int) -> FrozenSet[int]:
        return self._layers[layer_id].inputs

    def consumers_of(self, layer_id: int) -> Tuple[int, ...]:
        return self._consumers[layer_id]

    def __len__(self) -> int:
        return len(self._layers)

    def __iter__(self):
        return iter(self._layers)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DnnGraph):
            return NotImplemented
        return self._name == other._name and self._layers == other._layers

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"DnnGraph(name={self._name!r}, layers={len(self._layers)})"


def build_graph(
    name: str,
    specs: Sequence[Mapping],
) -> DnnGraph:
    """
    Build a graph from already-normalised layer mappings.

    Each mapping needs ``name``, ``base_latency`` and ``output_bytes``, and may
    carry ``kind`` and ``inputs`` (dense ids). Used by fixture generators and
    tests that do not go through a document.

    Args:
        name: Graph name
        specs: One mapping per layer, in id order

    Returns:
        DnnGraph: The validated graph
    """
    layers: List[LayerProfile] = []
    for index, spec in enumerate(specs):
        layers.append(
            LayerProfile(
                id=index,
                name=spec.get("name", f"layer_{index}"),
                kind=LayerKind(spec.get("kind", LayerKind.OTHER)),
                base_latency=dict(spec["base_latency"]),
                output_bytes=int(spec["output_bytes"]),
                inputs=frozenset(spec.get("inputs", ())),
            )
        )
    return DnnGraph(name, layers)

