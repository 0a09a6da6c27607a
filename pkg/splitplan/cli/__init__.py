"""
CLI Module

This module provides the ``splitplan`` command-line entry point.
"""

from .main import RunConfig, build_parser, main, parse_platforms

__all__ = [
    "RunConfig",
    "build_parser",
    "main",
    "parse_platforms",
]
