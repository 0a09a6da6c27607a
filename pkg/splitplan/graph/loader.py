"""
Model document loading and serialisation.

A model document is a JSON (or YAML) mapping::

    {"name": "vgg16",
     "layers": [{"id": 0, "name": "input_1", "kind": "input", "inputs": [],
                 "output_bytes": 153600,
                 "base_latency": {"edge": 0.001, "cloud": 0.0002}}, ...]}

Ids are arbitrary integers in the document and are normalised to 0..N-1
in declaration order. Unknown fields are ignored with a warning; a
``flops`` field is accepted and ignored.
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Union

import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError

from ..exceptions import GraphParseError, GraphValidationError
from .model import DnnGraph, LayerKind, LayerProfile

logger = logging.getLogger(__name__)

Document = Union[str, bytes, Mapping[str, Any]]


class LayerSpec(BaseModel):
    """One layer entry of a model document."""

    model_config = ConfigDict(extra="allow")

    id: int = Field(description="Layer id, unique within the document")
    name: Optional[str] = Field(default=None, description="Layer label")
    kind: LayerKind = Field(default=LayerKind.OTHER, description="Layer kind")
    inputs: List[int] = Field(default_factory=list, description="Ids of input layers")
    output_bytes: int = Field(description="Output tensor size in bytes")
    base_latency: Dict[str, float] = Field(
        description="Unstressed compute seconds per device profile"
    )
    flops: Optional[float] = Field(default=None, description="Accepted, not used")


class ModelDocument(BaseModel):
    """Top-level model document."""

    model_config = ConfigDict(extra="allow")

    name: str = Field(description="Model name")
    layers: List[LayerSpec] = Field(description="Layers in declaration order")


def parse_document(document: Document) -> Mapping[str, Any]:
    """
    Turn raw text into a mapping.

    JSON is tried first; anything that is not JSON is handed to the YAML
    parser.

    Raises:
        GraphParseError: If the text is not UTF-8, is neither JSON nor YAML, or is not a mapping
    """
    if isinstance(document, Mapping):
        return document

    if isinstance(document, bytes):
        try:
            text = document.decode("utf-8")
        except UnicodeDecodeError as e:
            raise GraphParseError(f"Document is not valid UTF-8: {e}") from e
    else:
        text = document
    try:
        data = json.loads(text)
    except json.JSONDecodeError:
        try:
            data = yaml.safe_load(text)
        except yaml.YAMLError as e:
            raise GraphParseError(f"Model document is neither JSON nor YAML: {e}") from e

    if not isinstance(data, Mapping):
        raise GraphParseError(
            f"Model document must be a mapping, got {type(data).__name__}"
        )
    return data


def load_graph(document: Document) -> DnnGraph:
    """
    Load and validate a model document.

    Args:
        document: JSON/YAML text or an already-parsed mapping

    Returns:
        DnnGraph: The validated graph with ids normalised to 0..N-1

    Raises:
        GraphParseError: Malformed document
        GraphValidationError: Document violates a graph invariant
    """
    data = parse_document(document)
    try:
        parsed = ModelDocument.model_validate(data)
    except ValidationError as e:
        raise GraphParseError(f"Malformed model document: {e}") from e

    if parsed.model_extra:
        logger.warning(f"Ignoring unknown model fields: {sorted(parsed.model_extra)}")

    index_of: Dict[int, int] = {}
    for index, spec in enumerate(parsed.layers):
        name = spec.name or f"layer_{spec.id}"
        if spec.id in index_of:
            raise GraphValidationError(f"Duplicate layer id {spec.id} at layer '{name}'", layer=name)
        index_of[spec.id] = index

    layers = []
    for index, spec in enumerate(parsed.layers):
        name = spec.name or f"layer_{spec.id}"
        if spec.model_extra:
            logger.warning(f"Layer '{name}': ignoring unknown fields {sorted(spec.model_extra)}")
        if spec.flops is not None:
            logger.debug(f"Layer '{name}': flops={spec.flops} ignored")

        inputs = set()
        for source in spec.inputs:
            if source not in index_of:
                raise GraphValidationError(
                    f"Layer '{name}' references unknown input id {source}", layer=name
                )
            inputs.add(index_of[source])

        layers.append(
            LayerProfile(
                id=index,
                name=name,
                kind=spec.kind,
                base_latency=dict(spec.base_latency),
                output_bytes=spec.output_bytes,
                inputs=frozenset(inputs),
            )
        )

    graph = DnnGraph(parsed.name, layers)
    logger.info(f"Loaded model '{graph.name}' with {len(graph)} layers")
    return graph


def load_graph_file(path: Union[str, Path]) -> DnnGraph:
    """
    Load a model document from disk.

    Raises:
        FileNotFoundError: If the path does not exist
    """
    model_path = Path(path)
    if not model_path.exists():
        raise FileNotFoundError(f"Model file not found: {model_path}")
    return load_graph(model_path.read_bytes())


def dump_graph(graph: DnnGraph) -> Dict[str, Any]:
    """Serialise a graph back into a model document mapping."""
    return {
        "name": graph.name,
        "layers": [
            {
                "id": layer.id,
                "name": layer.name,
                "kind": layer.kind.value,
                "inputs": sorted(layer.inputs),
                "output_bytes": layer.output_bytes,
                "base_latency": dict(layer.base_latency),
            }
            for layer in graph.layers
        ],
    }


def save_graph(graph: DnnGraph, path: Union[str, Path]) -> None:
    """Write a graph as a JSON model document."""
    out = Path(path)
    out.parent.mkdir(parents=True, exist_ok=True)
    with open(out, "w", encoding="utf-8") as f:
        json.dump(dump_graph(graph), f, indent=2)
