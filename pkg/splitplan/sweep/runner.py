"""
Synthetic sweep engine.

Every cut point is evaluated under every grid condition, ``repetitions``
times, and each evaluation becomes a MeasurementRecord. Records come out
cut-major, then condition (grid order), then run index, whatever the
number of worker threads.
"""

import itertools
import logging
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from ..costmodel import LatencyModel, OperationalCondition, StressResponse
from ..cutpoints import CutPoint, enumerate_cutpoints
from ..exceptions import SweepError
from ..graph import DnnGraph
from .grid import ConditionGrid
from .records import MeasurementRecord

logger = logging.getLogger(__name__)

DEFAULT_NOISE = 0.02
MIN_JITTER_FACTOR = 0.1


def jitter_factors(noise: float, seed: int, stream: Sequence[int], size: int) -> np.ndarray:
    """
    Multiplicative jitter ``1 + eps`` with ``eps ~ N(0, noise)``, floored at 0.1.

    ``stream`` selects an independent random stream under ``seed``, so the
    factors of one (cut, condition) pair do not depend on evaluation order.
    """
    if noise == 0:
        return np.ones(size)
    rng = np.random.default_rng([seed, *stream])
    return np.maximum(1.0 + rng.normal(0.0, noise, size=size), MIN_JITTER_FACTOR)


def _records_for_cut(
    graph: DnnGraph,
    cut_index: int,
    cut: CutPoint,
    conditions: Sequence[OperationalCondition],
    model: LatencyModel,
    repetitions: int,
    noise: float,
    seed: int,
    platform: str,
    stream: Tuple[int, ...],
) -> List[MeasurementRecord]:
    records: List[MeasurementRecord] = []
    for cond_index, cond in enumerate(conditions):
        latency = model.estimate(graph, cut, cond).total_s
        if latency <= 0:
            raise SweepError(
                f"Modelled latency {latency} of cut after layer {cut.after_layer} "
                f"under {cond.label()} is not positive"
            )
        factors = jitter_factors(noise, seed, (*stream, cut_index, cond_index), repetitions)
        for run_index in range(repetitions):
            records.append(
                MeasurementRecord(
                    model=graph.name,
                    platform=platform,
                    cpu_stress=cond.cpu_stress,
                    mem_stress=cond.mem_stress,
                    net_rate=cond.net_rate,
                    cut_after=cut.after_layer,
                    run_index=run_index,
                    latency_s=latency * float(factors[run_index]),
                )
            )
    return records


def run_sweep(
    graph: DnnGraph,
    grid: ConditionGrid,
    resp: StressResponse,
    net_rtt: float = 0.0,
    edge_profile: str = "edge",
    cloud_profile: str = "cloud",
    noise: float = DEFAULT_NOISE,
    seed: int = 0,
    *,
    platform: Optional[str] = None,
    jobs: int = 1,
    allow_all_cloud: bool = False,
    stream: Sequence[int] = (),
) -> Iterator[MeasurementRecord]:
    """
    Evaluate every cut under every grid condition.

    Arguments are checked immediately; records are then produced lazily, one
    cut at a time, so large sweeps can be streamed straight to disk.

    Args:
        graph: Validated graph
        grid: Conditions and repetitions
        resp: Edge stress response
        net_rtt: Fixed per-transfer delay in seconds
        edge_profile: Device profile of the edge
        cloud_profile: Device profile of the cloud
        noise: Relative standard deviation of the multiplicative jitter
        seed: Seed of all randomness in the sweep
        platform: Label written to the records, ``EDGE:CLOUD`` by default
        jobs: Worker threads evaluating cuts concurrently
        allow_all_cloud: Include the cut in front of the first layer
        stream: Prefix of the per-(cut, condition) random stream ids

    Returns:
        Iterator[MeasurementRecord]: |cuts| x |grid| x repetitions records

    Raises:
        SweepError: If the graph has no cut point or the arguments are out of range
        DeviceProfileError: If a profile is missing from the graph
    """
    cuts = enumerate_cutpoints(graph, allow_all_cloud=allow_all_cloud)
    if not cuts:
        raise SweepError(f"Graph '{graph.name}' has no cut point to sweep")
    if noise < 0:
        raise SweepError(f"Noise must be non-negative, got {noise}")
    if seed < 0:
        raise SweepError(f"Seed must be non-negative, got {seed}")
    if jobs < 1:
        raise SweepError(f"jobs must be at least 1, got {jobs}")

    model = LatencyModel(
        response=resp,
        base_rtt_s=net_rtt,
        edge_profile=edge_profile,
        cloud_profile=cloud_profile,
    )
    # Fail on bad profiles before the first record is requested
    model.estimate(graph, cuts[0], next(grid.conditions()))

    label = platform or f"{edge_profile}:{cloud_profile}"
    conditions = list(grid.conditions())
    logger.info(
        f"Sweeping '{graph.name}' on {label}: {len(cuts)} cuts x {len(conditions)} conditions "
        f"x {grid.repetitions} runs"
    )
    return _generate(
        graph, cuts, conditions, model, grid.repetitions, noise, seed, label, tuple(stream), jobs
    )


def _generate(
    graph: DnnGraph,
    cuts: List[CutPoint],
    conditions: List[OperationalCondition],
    model: LatencyModel,
    repetitions: int,
    noise: float,
    seed: int,
    platform: str,
    stream: Tuple[int, ...],
    jobs: int,
) -> Iterator[MeasurementRecord]:
    args = (conditions, model, repetitions, noise, seed, platform, stream)

    if jobs == 1:
        for cut_index, cut in enumerate(cuts):
            yield from _records_for_cut(graph, cut_index, cut, *args)
        return

    # At most 2 * jobs cuts in flight; results are drained in submission order
    with ThreadPoolExecutor(max_workers=jobs, thread_name_prefix="splitplan-sweep") as executor:
        pending = deque()
        for cut_index, cut in enumerate(cuts):
            pending.append(executor.submit(_records_for_cut, graph, cut_index, cut, *args))
            if len(pending) >= 2 * jobs:
                yield from pending.popleft().result()
        while pending:
            yield from pending.popleft().result()


def _for_profile(value: Any, edge_profile: str, platform: str, what: str) -> Any:
    if not isinstance(value, Mapping):
        return value
    if edge_profile not in value:
        raise SweepError(
            f"No {what} for edge profile '{edge_profile}' of platform '{platform}'; "
            f"available: {sorted(value)}"
        )
    return value[edge_profile]


def sweep_platforms(
    graph: DnnGraph,
    grid: ConditionGrid,
    resp: Union[StressResponse, Mapping[str, StressResponse]],
    platforms: Mapping[str, Tuple[str, str]],
    net_rtt: Union[float, Mapping[str, float]] = 0.0,
    noise: float = DEFAULT_NOISE,
    seed: int = 0,
    *,
    jobs: int = 1,
    allow_all_cloud: bool = False,
) -> Iterator[MeasurementRecord]:
    """
    Sweep several edge/cloud device pairs, one platform after another.

    Each platform draws its jitter from its own streams, so two platforms
    with the same profiles still get independent runs.

    Args:
        resp: One stress response for every platform, or edge profile ->
            stress response
        platforms: Platform name -> (edge profile, cloud profile), swept in
            mapping order
        net_rtt: One fixed delay for every platform, or edge profile -> delay

    Raises:
        SweepError: If no platform is given or an edge profile has no response
    """
    if not platforms:
        raise SweepError("At least one platform is required")
    streams = []
    for platform_index, (name, (edge_profile, cloud_profile)) in enumerate(platforms.items()):
        streams.append(
            run_sweep(
                graph,
                grid,
                _for_profile(resp, edge_profile, name, "stress response"),
                _for_profile(net_rtt, edge_profile, name, "base RTT"),
                edge_profile,
                cloud_profile,
                noise,
                seed,
                platform=name,
                jobs=jobs,
                allow_all_cloud=allow_all_cloud,
                stream=(platform_index,),
            )
        )
    return itertools.chain.from_iterable(streams)
