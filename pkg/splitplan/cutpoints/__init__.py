"""
Cut Points Module

This module pre-processes a DNN graph to identify its valid partition
points and groups the layers between them into indivisible blocks.
"""

from .points import ALL_CLOUD, CutPoint, enumerate_cutpoints, find_cut, validate_cut
from .blocks import Block, blocks

__all__ = [
    "ALL_CLOUD",
    "CutPoint",
    "enumerate_cutpoints",
    "find_cut",
    "validate_cut",
    "Block",
    "blocks",
]
