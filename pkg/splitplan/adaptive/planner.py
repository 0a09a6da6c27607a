"""
Choosing a cut for a condition and deciding whether to move to it.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Optional, Sequence, Tuple

from ..costmodel import LatencyEstimate, LatencyModel, OperationalCondition, StressResponse
from ..cutpoints import CutPoint, enumerate_cutpoints
from ..exceptions import PlanningError
from ..graph import DnnGraph
from .policy import DeploymentState, RepartitionDecision, RepartitionPolicy

logger = logging.getLogger(__name__)

Estimator = Callable[[CutPoint, OperationalCondition], float]


def _argmin(totals: Sequence[float], cuts: Sequence[CutPoint]) -> int:
    """Index of the cheapest cut; ties go to the smallest layer id."""
    return min(range(len(totals)), key=lambda index: (totals[index], cuts[index].after_layer))


def plan_with(
    graph: DnnGraph,
    cond: OperationalCondition,
    model: LatencyModel,
    cuts: Optional[Sequence[CutPoint]] = None,
    jobs: int = 1,
) -> Tuple[CutPoint, LatencyEstimate]:
    """
    Exhaustively price every cut and return the cheapest.

    Ties go to the cut after the smallest layer id, as in the analysis reports.

    Raises:
        PlanningError: If there is no cut point
    """
    if cuts is None:
        cuts = enumerate_cutpoints(graph)
    if not cuts:
        raise PlanningError(f"Graph '{graph.name}' has no cut point to plan over")

    if jobs > 1 and len(cuts) > 1:
        with ThreadPoolExecutor(max_workers=jobs, thread_name_prefix="splitplan-plan") as executor:
            estimates: List[LatencyEstimate] = list(
                executor.map(lambda cut: model.estimate(graph, cut, cond), cuts)
            )
    else:
        estimates = [model.estimate(graph, cut, cond) for cut in cuts]

    best = _argmin([e.total_s for e in estimates], cuts)
    logger.debug(
        f"Planned '{graph.name}' under {cond.label()}: cut after layer "
        f"{cuts[best].after_layer} ({estimates[best].total_s:.6f}s)"
    )
    return cuts[best], estimates[best]


def plan(
    graph: DnnGraph,
    cond: OperationalCondition,
    resp: StressResponse,
    net_rtt: float = 0.0,
    edge_profile: str = "edge",
    cloud_profile: str = "cloud",
    *,
    allow_all_cloud: bool = False,
    jobs: int = 1,
) -> Tuple[CutPoint, LatencyEstimate]:
    """
    Find the lowest-latency cut of a graph under one condition.

    Args:
        graph: Validated graph
        cond: Operational condition
        resp: Edge stress response
        net_rtt: Fixed per-transfer delay in seconds
        edge_profile: Device profile of the edge
        cloud_profile: Device profile of the cloud
        allow_all_cloud: Also consider running everything in the cloud
        jobs: Worker threads pricing cuts

    Returns:
        Tuple[CutPoint, LatencyEstimate]: Chosen cut and its predicted latency

    Raises:
        PlanningError: If there is no cut point
    """
    model = LatencyModel(
        response=resp,
        base_rtt_s=net_rtt,
        edge_profile=edge_profile,
        cloud_profile=cloud_profile,
    )
    cuts = enumerate_cutpoints(graph, allow_all_cloud=allow_all_cloud)
    return plan_with(graph, cond, model, cuts, jobs=jobs)


def decide(
    state: DeploymentState,
    cond: OperationalCondition,
    policy: RepartitionPolicy,
    graph: DnnGraph,
    model: LatencyModel,
    now_s: float = 0.0,
    *,
    cuts: Optional[Sequence[CutPoint]] = None,
    estimator: Optional[Estimator] = None,
) -> RepartitionDecision:
    """
    Decide whether to keep the deployed cut or switch to the best one.

    Switches iff the predicted gain reaches ``policy.min_gain_pct``, the best
    cut differs from the current one and the cooldown since the last switch
    has elapsed.

    Args:
        state: Current deployment
        cond: Condition now in force
        policy: Repartitioning policy
        graph: Deployed graph
        model: Latency model used for predictions
        now_s: Current time, for the cooldown
        cuts: Candidate cuts; all cut points of ``graph`` by default
        estimator: Optional (cut, condition) -> seconds override, e.g. a cache
    """
    if cuts is None:
        cuts = enumerate_cutpoints(graph, allow_all_cloud=state.current_cut.is_all_cloud)
    if not cuts:
        raise PlanningError(f"Graph '{graph.name}' has no cut point to plan over")

    if estimator is None:
        best_cut, best_estimate = plan_with(graph, cond, model, cuts)
        best_s = best_estimate.total_s
        static_s = model.estimate(graph, state.current_cut, cond).total_s
    else:
        totals = [estimator(cut, cond) for cut in cuts]
        best_index = _argmin(totals, cuts)
        best_cut, best_s = cuts[best_index], totals[best_index]
        static_s = estimator(state.current_cut, cond)

    gain = 100.0 * (static_s - best_s) / static_s if static_s > 0 else 0.0
    switch = (
        gain >= policy.min_gain_pct
        and best_cut.after_layer != state.current_cut.after_layer
        and state.cooldown_elapsed(now_s, policy.cooldown_s)
    )
    decision = RepartitionDecision(
        action="switch" if switch else "keep",
        target_cut=best_cut if switch else state.current_cut,
        predicted_static_s=static_s,
        predicted_best_s=best_s,
        predicted_gain_pct=gain,
    )
    logger.debug(
        f"t={now_s:g}s {cond.label()}: {decision.action} "
        f"(cut {state.current_cut.after_layer} -> {best_cut.after_layer}, gain {gain:.2f}%)"
    )
    return decision
