"""
Adaptive Module

This module keeps a deployed partitioned DNN efficient as operational
conditions change: planning the best cut, deciding when repartitioning
pays for its overhead and simulating deployments over time.
"""

from .policy import DeploymentState, RepartitionDecision, RepartitionPolicy
from .planner import decide, plan, plan_with
from .scenario import (
    ConditionEvent,
    ConditionSpec,
    RequestSchedule,
    Scenario,
    load_scenario,
    load_scenario_file,
)
from .simulator import (
    TRACE_HEADER,
    DecisionRecord,
    RequestRecord,
    SimulationTrace,
    simulate,
    write_trace,
)

__all__ = [
    # Policy
    "DeploymentState",
    "RepartitionDecision",
    "RepartitionPolicy",
    # Planner
    "decide",
    "plan",
    "plan_with",
    # Scenario
    "ConditionEvent",
    "ConditionSpec",
    "RequestSchedule",
    "Scenario",
    "load_scenario",
    "load_scenario_file",
    # Simulator
    "TRACE_HEADER",
    "DecisionRecord",
    "RequestRecord",
    "SimulationTrace",
    "simulate",
    "write_trace",
]
