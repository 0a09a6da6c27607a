"""
Sweep configuration settings.
"""

from typing import Optional

from pydantic import BaseModel, Field

from ..sweep import ConditionGrid, DEFAULT_NOISE


class SweepConfig(BaseModel):
    """Grid, jitter and parallelism of synthetic sweeps."""

    grid: ConditionGrid = Field(
        default_factory=ConditionGrid,
        description="Conditions and repetitions to sweep"
    )

    noise: float = Field(
        default=DEFAULT_NOISE,
        description="Relative standard deviation of latency jitter",
        ge=0.0,
        le=1.0
    )

    seed: int = Field(
        default=0,
        description="Seed of all sweep randomness",
        ge=0
    )

    jobs: int = Field(
        default=1,
        description="Worker threads",
        ge=1,
        le=64
    )

    platform: Optional[str] = Field(
        default=None,
        description="Platform label written to records"
    )
