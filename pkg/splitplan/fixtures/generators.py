"""
Model document generators.

Every generator returns a model document mapping (see
``splitplan.graph.loader``) with ``edge`` and ``cloud`` device profiles.
Latencies and tensor sizes are drawn from a seeded generator, so the same
parameters always give the same document.
"""

import logging
from typing import Any, Callable, Dict, List, Optional, Sequence, Set, Tuple

import numpy as np

from ..exceptions import FixtureError
from ..graph import LayerKind

logger = logging.getLogger(__name__)

INPUT_BYTES = 153_600
CLOUD_SPEEDUP = 5.0
SHAPES = ("chain", "diamond", "fig2", "table1-like", "random")

# model name -> (layers, partition points); sequential models are chains
TABLE1_SHAPES: Dict[str, Tuple[int, int]] = {
    "vgg16": (23, 22),
    "vgg19": (26, 25),
    "mobilenet": (93, 92),
    "alexnet": (25, 24),
    "lenet": (11, 10),
    "densenet": (429, 22),
    "resnet50": (177, 23),
    "resnet50v2": (192, 16),
}

_BODY_KINDS = (LayerKind.CONVOLUTION, LayerKind.ACTIVATION, LayerKind.POOLING)


def _layer_kind(index: int, count: int) -> LayerKind:
    if index == 0:
        return LayerKind.INPUT
    if index == count - 1:
        return LayerKind.SOFTMAX
    if index == count - 2:
        return LayerKind.FULLY_CONNECTED
    return _BODY_KINDS[(index - 1) % len(_BODY_KINDS)]


def _document(name: str, inputs: Sequence[Set[int]], seed: int) -> Dict[str, Any]:
    """Attach seeded costs to a topology given as per-layer input sets."""
    rng = np.random.default_rng(seed)
    count = len(inputs)
    edge_latency = rng.uniform(0.0005, 0.02, size=count)
    output_bytes = rng.integers(1_000, 400_000, size=count)
    layers = []
    for index in range(count):
        layers.append(
            {
                "id": index,
                "name": f"{name}_l{index + 1}",
                "kind": _layer_kind(index, count).value,
                "inputs": sorted(inputs[index]),
                "output_bytes": INPUT_BYTES if index == 0 else int(output_bytes[index]),
                "base_latency": {
                    "edge": float(edge_latency[index]),
                    "cloud": float(edge_latency[index]) / CLOUD_SPEEDUP,
                },
            }
        )
    return {"name": name, "layers": layers}


def chain_document(n: int, name: Optional[str] = None, seed: int = 0) -> Dict[str, Any]:
    """A sequential model of ``n`` layers; it has ``n - 1`` cut points."""
    if n < 1:
        raise FixtureError(f"A chain needs at least one layer, got {n}")
    inputs = [set() if i == 0 else {i - 1} for i in range(n)]
    return _document(name or f"chain{n}", inputs, seed)


def diamond_document(seed: int = 0) -> Dict[str, Any]:
    """Input, two parallel layers, merge: one cut point after the input."""
    return _document("diamond", [set(), {0}, {0}, {1, 2}], seed)


def fig2_document(seed: int = 0) -> Dict[str, Any]:
    """
    Eleven layers with a parallel block spanning layers 2..9 (1-based).

    Branches 2-3-4-5 and 6-7-8 leave layer 1 and merge in layer 9; the
    valid cuts are after layers 1, 9 and 10.
    """
    inputs = [
        set(),   # 1: input
        {0},     # 2
        {1},     # 3
        {2},     # 4
        {3},     # 5
        {0},     # 6
        {5},     # 7
        {6},     # 8
        {4, 7},  # 9: merge
        {8},     # 10
        {9},     # 11: output
    ]
    return _document("fig2", inputs, seed)


def residual_inputs(layers: int, cuts: int) -> List[Set[int]]:
    """
    Topology with exactly ``layers`` layers and ``cuts`` cut points.

    After the input come ``cuts - 1`` segments and a final output layer. A
    segment of one layer is a plain link; longer segments are residual
    blocks with a skip connection from the layer before the block to the
    block's last layer, so only the block's end is a cut point.
    """
    body = layers - 2
    segments = cuts - 1
    if cuts < 1 or segments > body or (segments == 0 and body > 0):
        raise FixtureError(f"Cannot build {layers} layers with {cuts} cut points")

    sizes = []
    if segments:
        share, extra = divmod(body, segments)
        sizes = [share + (1 if i < extra else 0) for i in range(segments)]
    inputs: List[Set[int]] = [set()]
    prev = 0
    for size in sizes:
        first = len(inputs)
        for offset in range(size):
            inputs.append({prev} if offset == 0 else {first + offset - 1})
        last = first + size - 1
        if size > 1:
            inputs[last].add(prev)
        prev = last
    if layers > 1:
        inputs.append({prev})
    return inputs


def table1_like_document(model: str, seed: int = 0) -> Dict[str, Any]:
    """
    A synthetic graph with the layer and cut-point counts of a known model.

    Raises:
        FixtureError: If the model name is unknown
    """
    key = model.lower()
    if key not in TABLE1_SHAPES:
        raise FixtureError(f"Unknown model '{model}'; choose from {sorted(TABLE1_SHAPES)}")
    layers, cuts = TABLE1_SHAPES[key]
    if cuts == layers - 1:
        return chain_document(layers, name=key, seed=seed)
    return _document(key, residual_inputs(layers, cuts), seed)


def random_dag_inputs(n: int, seed: int, extra_edge_prob: float = 0.2) -> List[Set[int]]:
    """
    Random single-source, single-sink DAG over ``n`` layers in id order.

    Every layer but the first gets an input from an earlier layer (plus extra
    earlier inputs with ``extra_edge_prob``); every layer but the last that
    has no consumer gets one later in the order.
    """
    if n < 1:
        raise FixtureError(f"A random graph needs at least one layer, got {n}")
    rng = np.random.default_rng(seed)
    inputs: List[Set[int]] = [set() for _ in range(n)]
    for v in range(1, n):
        inputs[v].add(int(rng.integers(0, v)))
        for u in range(v):
            if rng.random() < extra_edge_prob:
                inputs[v].add(u)
    consumed = {u for sources in inputs for u in sources}
    for u in range(n - 1):
        if u not in consumed:
            inputs[int(rng.integers(u + 1, n))].add(u)
    return inputs


def random_document(n: int = 10, seed: int = 0, extra_edge_prob: float = 0.2) -> Dict[str, Any]:
    """A random valid graph; see ``random_dag_inputs``."""
    return _document(f"random{n}_s{seed}", random_dag_inputs(n, seed, extra_edge_prob), seed)


def gen_fixture(
    shape: str,
    *,
    n: Optional[int] = None,
    model: Optional[str] = None,
    seed: int = 0,
) -> Dict[str, Any]:
    """
    Build a model document of a named shape.

    Args:
        shape: ``chain``, ``diamond``, ``fig2``, ``table1-like`` or ``random``
        n: Layer count of ``chain`` (default 5) and ``random`` (default 10)
        model: Model name for ``table1-like``
        seed: Seed of the generated costs (and topology for ``random``)

    Raises:
        FixtureError: On an unknown shape or missing parameters
    """
    builders: Dict[str, Callable[[], Dict[str, Any]]] = {
        "chain": lambda: chain_document(5 if n is None else n, seed=seed),
        "diamond": lambda: diamond_document(seed),
        "fig2": lambda: fig2_document(seed),
        "table1-like": lambda: table1_like_document(_require(model, "model"), seed),
        "random": lambda: random_document(10 if n is None else n, seed),
    }
    if shape not in builders:
        raise FixtureError(f"Unknown fixture shape '{shape}'; choose from {list(SHAPES)}")
    document = builders[shape]()
    logger.info(f"Generated {shape} fixture '{document['name']}' with {len(document['layers'])} layers")
    return document


def _require(value: Optional[str], name: str) -> str:
    if not value:
        raise FixtureError(f"Parameter '{name}' is required for this shape")
    return value
