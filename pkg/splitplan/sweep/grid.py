"""
Condition grids.
"""

import itertools
import logging
from pathlib import Path
from typing import Any, Iterator, List, Mapping, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from ..costmodel import OperationalCondition
from ..exceptions import GraphParseError, SplitPlanConfigurationError
from ..graph import parse_document

logger = logging.getLogger(__name__)

STRESS_LEVELS = (0.0, 0.22, 0.45, 0.67, 0.9)
NET_RATES_MBPS = (10.0, 25.0, 37.5, 50.0)
REPETITIONS = 10


class ConditionGrid(BaseModel):
    """
    The operational conditions a sweep visits.

    Combinations are produced CPU-major, then memory, then network, each
    axis in the order its levels are listed.
    """

    model_config = ConfigDict(frozen=True)

    cpu_levels: Tuple[float, ...] = Field(default=STRESS_LEVELS, description="Edge CPU stress levels")
    mem_levels: Tuple[float, ...] = Field(default=STRESS_LEVELS, description="Edge memory stress levels")
    net_levels: Tuple[float, ...] = Field(default=NET_RATES_MBPS, description="Transfer rates in Mb/s")
    repetitions: int = Field(default=REPETITIONS, description="Runs per cut and condition", ge=1)

    @field_validator("cpu_levels", "mem_levels")
    @classmethod
    def validate_stress_levels(cls, v):
        if not v:
            raise ValueError("At least one stress level is required")
        for level in v:
            if not 0.0 <= level <= 1.0:
                raise ValueError(f"Stress level {level} is outside [0, 1]")
        if len(set(v)) != len(v):
            raise ValueError(f"Duplicate stress levels: {list(v)}")
        return v

    @field_validator("net_levels")
    @classmethod
    def validate_net_levels(cls, v):
        if not v:
            raise ValueError("At least one network rate is required")
        for rate in v:
            if rate <= 0:
                raise ValueError(f"Network rate {rate} must be positive")
        if len(set(v)) != len(v):
            raise ValueError(f"Duplicate network rates: {list(v)}")
        return v

    def conditions(self) -> Iterator[OperationalCondition]:
        for cpu, mem, net in itertools.product(self.cpu_levels, self.mem_levels, self.net_levels):
            yield OperationalCondition(cpu_stress=cpu, mem_stress=mem, net_rate=net)

    def combination_count(self) -> int:
        return len(self.cpu_levels) * len(self.mem_levels) * len(self.net_levels)

    def __len__(self) -> int:
        return self.combination_count()


def default_grid() -> ConditionGrid:
    """Five CPU and five memory stress levels, four network rates, ten repetitions."""
    return ConditionGrid()


def load_grid(document: Union[str, bytes, Mapping[str, Any]]) -> ConditionGrid:
    """
    Build a grid from a JSON/YAML document; missing axes keep their defaults.

    Raises:
        SplitPlanConfigurationError: If the document is unreadable or a level is invalid
    """
    try:
        data = parse_document(document)
        grid = ConditionGrid.model_validate(dict(data))
    except (GraphParseError, ValidationError) as e:
        raise SplitPlanConfigurationError(f"Invalid condition grid: {e}") from e
    logger.debug(f"Loaded condition grid with {len(grid)} combinations x {grid.repetitions} runs")
    return grid


def load_grid_file(path: Union[str, Path]) -> ConditionGrid:
    """
    Read a grid document from disk.

    Raises:
        FileNotFoundError: If the path does not exist
    """
    grid_path = Path(path)
    if not grid_path.exists():
        raise FileNotFoundError(f"Grid file not found: {grid_path}")
    return load_grid(grid_path.read_bytes())


def restrict(grid: ConditionGrid, **levels: List[float]) -> ConditionGrid:
    """Copy of ``grid`` with some axes replaced, e.g. ``restrict(g, cpu_levels=[0.0])``."""
    return ConditionGrid.model_validate({**grid.model_dump(), **levels})
