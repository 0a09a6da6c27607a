"""
Cost Model Module

This module predicts the end-to-end latency of a partitioned DNN under an
operational condition: stressed edge compute, edge-to-cloud transfer and
cloud compute.
"""

from .conditions import LatencyEstimate, NetworkModel, OperationalCondition
from .stress import (
    DEFAULT_CURVE_TABLE,
    Calibration,
    StressCurve,
    StressResponse,
    load_calibration,
    load_calibration_file,
    load_stress_response,
)
from .latency import LatencyModel, partition_latency, transfer_time

__all__ = [
    # Conditions
    "OperationalCondition",
    "NetworkModel",
    "LatencyEstimate",
    # Stress
    "DEFAULT_CURVE_TABLE",
    "Calibration",
    "StressCurve",
    "StressResponse",
    "load_calibration",
    "load_calibration_file",
    "load_stress_response",
    # Latency
    "LatencyModel",
    "partition_latency",
    "transfer_time",
]
