"""
Graph Module

This module provides the DNN graph representation used by every other
splitplan module: layer profiles, the validated DAG, model document
loading, and topological helpers.
"""

from .model import DnnGraph, LayerKind, LayerProfile, build_graph
from .loader import (
    LayerSpec,
    ModelDocument,
    dump_graph,
    load_graph,
    load_graph_file,
    parse_document,
    save_graph,
)
from .topology import TopoOrder, is_sequential, topo_order

__all__ = [
    # Model
    "DnnGraph",
    "LayerKind",
    "LayerProfile",
    "build_graph",

    # Documents
    "LayerSpec",
    "ModelDocument",
    "dump_graph",
    "load_graph",
    "load_graph_file",
    "parse_document",
    "save_graph",

    # Topology
    "TopoOrder",
    "is_sequential",
    "topo_order",
]
