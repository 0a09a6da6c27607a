"""
splitplan: partition planning for DNNs distributed across edge and cloud.

This library provides tools for:
- Finding the valid partition points of sequential and non-sequential DNNs
- Predicting end-to-end latency under CPU, memory and network conditions
- Sweeping every partition over a grid of conditions, like a benchmark harness
- Analysing real or swept measurements: optimal cuts, sensitivity, gains
- Deciding when a deployed DNN should be repartitioned, and simulating it

Main Components:
- DnnGraph: Validated layer graph loaded from a model document
- enumerate_cutpoints: Valid cuts, each shipping a single tensor to the cloud
- LatencyModel: Edge compute + transfer + cloud compute for a cut
- run_sweep / LatencyTable: Synthetic measurements and their aggregation
- plan / decide / simulate: Adaptive repartitioning
"""

__version__ = "0.2.0"

from .exceptions import (
    SplitPlanError,
    SplitPlanConfigurationError,
    GraphParseError,
    GraphValidationError,
    CutPointError,
    DeviceProfileError,
    CalibrationError,
    SweepError,
    AnalysisError,
    PlanningError,
    ScenarioError,
    FixtureError,
)

from .graph import DnnGraph, LayerKind, LayerProfile, dump_graph, load_graph, load_graph_file

from .cutpoints import ALL_CLOUD, Block, CutPoint, blocks, enumerate_cutpoints

from .costmodel import (
    LatencyEstimate,
    LatencyModel,
    NetworkModel,
    OperationalCondition,
    StressCurve,
    StressResponse,
    load_stress_response,
    partition_latency,
    transfer_time,
)

from .sweep import ConditionGrid, MeasurementRecord, default_grid, run_sweep

from .analysis import (
    ConditionKey,
    GainRow,
    LatencyTable,
    OptimalCut,
    gain_table,
    optimal_cuts,
    sensitivity,
    topk_distribution,
)

from .adaptive import (
    DeploymentState,
    RepartitionDecision,
    RepartitionPolicy,
    Scenario,
    SimulationTrace,
    decide,
    load_scenario,
    plan,
    simulate,
)

from .fixtures import gen_fixture

# Public API
__all__ = [
    # Version info
    "__version__",

    # Exceptions
    "SplitPlanError",
    "SplitPlanConfigurationError",
    "GraphParseError",
    "GraphValidationError",
    "CutPointError",
    "DeviceProfileError",
    "CalibrationError",
    "SweepError",
    "AnalysisError",
    "PlanningError",
    "ScenarioError",
    "FixtureError",

    # Graph model
    "DnnGraph",
    "LayerKind",
    "LayerProfile",
    "dump_graph",
    "load_graph",
    "load_graph_file",

    # Cut points
    "ALL_CLOUD",
    "Block",
    "CutPoint",
    "blocks",
    "enumerate_cutpoints",

    # Cost model
    "LatencyEstimate",
    "LatencyModel",
    "NetworkModel",
    "OperationalCondition",
    "StressCurve",
    "StressResponse",
    "load_stress_response",
    "partition_latency",
    "transfer_time",

    # Sweep
    "ConditionGrid",
    "MeasurementRecord",
    "default_grid",
    "run_sweep",

    # Analysis
    "ConditionKey",
    "GainRow",
    "LatencyTable",
    "OptimalCut",
    "gain_table",
    "optimal_cuts",
    "sensitivity",
    "topk_distribution",

    # Adaptive
    "DeploymentState",
    "RepartitionDecision",
    "RepartitionPolicy",
    "Scenario",
    "SimulationTrace",
    "decide",
    "load_scenario",
    "plan",
    "simulate",

    # Fixtures
    "gen_fixture",
]
