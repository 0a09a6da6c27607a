"""
Fixtures Module

This module generates model documents for chains, small parallel graphs,
random DAGs and graphs shaped like well-known DNN models.
"""

from .generators import (
    SHAPES,
    TABLE1_SHAPES,
    chain_document,
    diamond_document,
    fig2_document,
    gen_fixture,
    random_dag_inputs,
    random_document,
    residual_inputs,
    table1_like_document,
)

__all__ = [
    "SHAPES",
    "TABLE1_SHAPES",
    "chain_document",
    "diamond_document",
    "fig2_document",
    "gen_fixture",
    "random_dag_inputs",
    "random_document",
    "residual_inputs",
    "table1_like_document",
]
