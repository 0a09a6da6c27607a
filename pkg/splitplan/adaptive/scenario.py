"""
Simulation scenario documents.

A scenario is a JSON or YAML mapping::

    {"initial": {"cpu": 0.0, "mem": 0.0, "net": 50},
     "events": [{"t_s": 30, "net": 10}],
     "requests": {"rate_per_s": 2, "duration_s": 60},
     "policy": {"min_gain_pct": 5, "switch_overhead_s": 1.0, "cooldown_s": 0}}

``requests`` may instead list explicit arrival times: ``{"times": [0, 0.5, ...]}``.
"""

import logging
import math
from pathlib import Path
from typing import Any, List, Mapping, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from ..costmodel import OperationalCondition
from ..exceptions import GraphParseError, ScenarioError
from ..graph import parse_document
from .policy import RepartitionPolicy

logger = logging.getLogger(__name__)


class ConditionSpec(BaseModel):
    """A full operational condition."""

    model_config = ConfigDict(frozen=True)

    cpu: float = Field(default=0.0, description="Edge CPU stress", ge=0.0, le=1.0)
    mem: float = Field(default=0.0, description="Edge memory stress", ge=0.0, le=1.0)
    net: float = Field(description="Transfer rate in Mb/s", gt=0.0)

    def to_condition(self) -> OperationalCondition:
        return OperationalCondition(cpu_stress=self.cpu, mem_stress=self.mem, net_rate=self.net)


class ConditionEvent(BaseModel):
    """A change of some condition axes at time ``t_s``; unset axes keep their value."""

    model_config = ConfigDict(frozen=True)

    t_s: float = Field(description="Event time in seconds", ge=0.0)
    cpu: Optional[float] = Field(default=None, ge=0.0, le=1.0)
    mem: Optional[float] = Field(default=None, ge=0.0, le=1.0)
    net: Optional[float] = Field(default=None, gt=0.0)

    def apply(self, cond: OperationalCondition) -> OperationalCondition:
        return OperationalCondition(
            cpu_stress=cond.cpu_stress if self.cpu is None else self.cpu,
            mem_stress=cond.mem_stress if self.mem is None else self.mem,
            net_rate=cond.net_rate if self.net is None else self.net,
        )


class RequestSchedule(BaseModel):
    """Inference request arrivals: a fixed rate over a duration, or explicit times."""

    model_config = ConfigDict(frozen=True)

    rate_per_s: Optional[float] = Field(default=None, description="Arrivals per second", gt=0.0)
    duration_s: Optional[float] = Field(default=None, description="Length of the rate schedule", gt=0.0)
    start_s: float = Field(default=0.0, description="Time of the first rate-driven arrival", ge=0.0)
    times: Optional[List[float]] = Field(default=None, description="Explicit arrival times")

    @model_validator(mode="after")
    def _check_schedule(self) -> "RequestSchedule":
        if self.times is not None:
            if self.rate_per_s is not None:
                raise ValueError("Give either 'times' or 'rate_per_s', not both")
            if any(t < 0 or not math.isfinite(t) for t in self.times):
                raise ValueError("Request times must be finite and non-negative")
            if any(b <= a for a, b in zip(self.times, self.times[1:])):
                raise ValueError("Request times must be strictly increasing")
        elif self.rate_per_s is None or self.duration_s is None:
            raise ValueError("Requests need 'times' or both 'rate_per_s' and 'duration_s'")
        return self

    def arrival_times(self) -> List[float]:
        if self.times is not None:
            return list(self.times)
        count = math.floor(self.duration_s * self.rate_per_s + 1e-9)
        return [self.start_s + i / self.rate_per_s for i in range(count)]


class Scenario(BaseModel):
    """Initial condition, condition-change timeline, requests and optional policy."""

    initial: ConditionSpec
    events: List[ConditionEvent] = Field(default_factory=list)
    requests: RequestSchedule
    policy: Optional[RepartitionPolicy] = None

    @model_validator(mode="after")
    def _check_events(self) -> "Scenario":
        times = [event.t_s for event in self.events]
        if any(b <= a for a, b in zip(times, times[1:])):
            raise ValueError(f"Event times must be strictly increasing: {times}")
        return self


def load_scenario(document: Union[str, bytes, Mapping[str, Any]]) -> Scenario:
    """
    Parse and validate a scenario document.

    Raises:
        ScenarioError: If the document is unreadable or malformed
    """
    try:
        data = parse_document(document)
        scenario = Scenario.model_validate(dict(data))
    except (GraphParseError, ValidationError) as e:
        raise ScenarioError(f"Malformed scenario: {e}") from e
    logger.debug(
        f"Loaded scenario: {len(scenario.events)} events, "
        f"{len(scenario.requests.arrival_times())} requests"
    )
    return scenario


def load_scenario_file(path: Union[str, Path]) -> Scenario:
    """
    Read a scenario document from disk.

    Raises:
        FileNotFoundError: If the path does not exist
    """
    scenario_path = Path(path)
    if not scenario_path.exists():
        raise FileNotFoundError(f"Scenario file not found: {scenario_path}")
    return load_scenario(scenario_path.read_bytes())
