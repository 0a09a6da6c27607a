"""
Discrete-event simulation of a deployed, possibly adaptive, partitioned DNN.

The timeline merges condition-change events and request arrivals; an event
and a request at the same instant are handled event first. Requests are
served one at a time. A switch lets the request in flight complete, then
blocks the pipeline for ``switch_overhead_s`` before the next request.
"""

import csv
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

from ..costmodel import LatencyModel, OperationalCondition
from ..cutpoints import CutPoint, enumerate_cutpoints
from ..exceptions import PlanningError, ScenarioError
from ..graph import DnnGraph
from ..sweep import jitter_factors
from .planner import decide
from .policy import DeploymentState, RepartitionPolicy
from .scenario import Scenario

logger = logging.getLogger(__name__)

TRACE_HEADER = (
    "kind",
    "t_s",
    "start_s",
    "cut_after",
    "latency_s",
    "action",
    "target_cut",
    "predicted_static_s",
    "predicted_best_s",
    "predicted_gain_pct",
    "cumulative_latency_s",
)


@dataclass(frozen=True)
class RequestRecord:
    index: int
    arrival_s: float
    start_s: float
    cut_after: int
    latency_s: float
    cumulative_latency_s: float


@dataclass(frozen=True)
class DecisionRecord:
    t_s: float
    condition: OperationalCondition
    action: str
    from_cut: int
    target_cut: int
    predicted_static_s: float
    predicted_best_s: float
    predicted_gain_pct: float


@dataclass
class SimulationTrace:
    """
    Everything that happened in one simulation.

    ``cumulative_latency_s`` sums served request latencies only; switch
    overhead is accounted separately in ``overhead_s``.
    """

    adaptive: bool
    initial_cut: int
    requests: List[RequestRecord] = field(default_factory=list)
    decisions: List[DecisionRecord] = field(default_factory=list)
    switches: int = 0
    overhead_s: float = 0.0

    @property
    def cumulative_latency_s(self) -> float:
        return self.requests[-1].cumulative_latency_s if self.requests else 0.0

    @property
    def makespan_s(self) -> float:
        if not self.requests:
            return 0.0
        last = self.requests[-1]
        return last.start_s + last.latency_s


class _CachedEstimator:
    """Memoised model predictions keyed by (cut, condition)."""

    def __init__(self, graph: DnnGraph, model: LatencyModel):
        self._graph = graph
        self._model = model
        self._cache: Dict[Tuple[int, OperationalCondition], float] = {}

    def __call__(self, cut: CutPoint, cond: OperationalCondition) -> float:
        key = (cut.after_layer, cond)
        if key not in self._cache:
            self._cache[key] = self._model.estimate(self._graph, cut, cond).total_s
        return self._cache[key]


def simulate(
    graph: DnnGraph,
    scenario: Scenario,
    model: LatencyModel,
    policy: Optional[RepartitionPolicy] = None,
    *,
    adaptive: bool = True,
    allow_all_cloud: bool = False,
    noise: float = 0.0,
    seed: int = 0,
) -> SimulationTrace:
    """
    Run a scenario against a graph.

    The initial cut is the optimum under the scenario's initial condition.
    In static mode (``adaptive=False``) it is never changed and no decisions
    are taken.

    Args:
        graph: Validated graph
        scenario: Conditions timeline and request schedule
        model: Latency model
        policy: Repartitioning policy; falls back to the scenario's, then the defaults
        adaptive: Re-plan on every condition change
        allow_all_cloud: Include the cut in front of the first layer
        noise: Relative jitter on served latencies; decisions use predictions
        seed: Seed of the jitter

    Returns:
        SimulationTrace: Served requests, decisions and totals

    Raises:
        PlanningError: If the graph has no cut point
        ScenarioError: On negative noise or seed
    """
    if noise < 0 or seed < 0:
        raise ScenarioError(f"Noise and seed must be non-negative, got noise={noise} seed={seed}")
    if policy is None:
        policy = scenario.policy or RepartitionPolicy()
    cuts = enumerate_cutpoints(graph, allow_all_cloud=allow_all_cloud)
    if not cuts:
        raise PlanningError(f"Graph '{graph.name}' has no cut point to deploy")

    estimate = _CachedEstimator(graph, model)
    cond = scenario.initial.to_condition()
    totals = [estimate(cut, cond) for cut in cuts]
    initial = cuts[totals.index(min(totals))]
    state = DeploymentState(current_cut=initial, deployed_since=0.0)
    trace = SimulationTrace(adaptive=adaptive, initial_cut=initial.after_layer)

    events = scenario.events
    arrivals = scenario.requests.arrival_times()
    busy_until = 0.0
    cumulative = 0.0
    e = r = 0

    while e < len(events) or r < len(arrivals):
        if e < len(events) and (r >= len(arrivals) or events[e].t_s <= arrivals[r]):
            event = events[e]
            e += 1
            cond = event.apply(cond)
            if not adaptive:
                continue
            decision = decide(
                state, cond, policy, graph, model, event.t_s, cuts=cuts, estimator=estimate
            )
            trace.decisions.append(
                DecisionRecord(
                    t_s=event.t_s,
                    condition=cond,
                    action=decision.action,
                    from_cut=state.current_cut.after_layer,
                    target_cut=decision.target_cut.after_layer,
                    predicted_static_s=decision.predicted_static_s,
                    predicted_best_s=decision.predicted_best_s,
                    predicted_gain_pct=decision.predicted_gain_pct,
                )
            )
            if decision.is_switch:
                busy_until = max(busy_until, event.t_s) + policy.switch_overhead_s
                state = DeploymentState(
                    current_cut=decision.target_cut,
                    deployed_since=busy_until,
                    last_switch_s=event.t_s,
                )
                trace.switches += 1
                trace.overhead_s += policy.switch_overhead_s
                logger.info(
                    f"t={event.t_s:g}s switched to cut after layer "
                    f"{decision.target_cut.after_layer} (gain {decision.predicted_gain_pct:.2f}%)"
                )
        else:
            arrival = arrivals[r]
            start = max(arrival, busy_until)
            latency = estimate(state.current_cut, cond)
            if noise:
                latency *= float(jitter_factors(noise, seed, (r,), 1)[0])
            busy_until = start + latency
            cumulative += latency
            trace.requests.append(
                RequestRecord(
                    index=r,
                    arrival_s=arrival,
                    start_s=start,
                    cut_after=state.current_cut.after_layer,
                    latency_s=latency,
                    cumulative_latency_s=cumulative,
                )
            )
            r += 1

    logger.info(
        f"Simulated {len(trace.requests)} requests ({'adaptive' if adaptive else 'static'}): "
        f"{trace.switches} switches, cumulative latency {trace.cumulative_latency_s:.6f}s"
    )
    return trace


def _decision_row(d: DecisionRecord) -> list:
    return [
        "decision", repr(d.t_s), "", d.from_cut, "", d.action, d.target_cut,
        repr(d.predicted_static_s), repr(d.predicted_best_s), repr(d.predicted_gain_pct), "",
    ]


def _request_row(q: RequestRecord) -> list:
    return [
        "request", repr(q.arrival_s), repr(q.start_s), q.cut_after, repr(q.latency_s),
        "", "", "", "", "", repr(q.cumulative_latency_s),
    ]


def write_trace(trace: SimulationTrace, path: Union[str, Path]) -> None:
    """Write decisions and requests as one CSV in time order, decisions first on ties."""
    timeline = [(d.t_s, 0, _decision_row(d)) for d in trace.decisions]
    timeline += [(q.arrival_s, 1, _request_row(q)) for q in trace.requests]
    timeline.sort(key=lambda item: (item[0], item[1]))

    out_path = Path(path)
    out_path.parent.mkdir(parents=True, exist_ok=True)
    with out_path.open("w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(TRACE_HEADER)
        writer.writerows(row for _, _, row in timeline)
    logger.info(f"Wrote simulation trace to {out_path}")
