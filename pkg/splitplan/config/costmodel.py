"""
Cost model configuration settings.
"""

from typing import Optional

from pydantic import BaseModel, Field


class CostModelConfig(BaseModel):
    """Device profiles and calibration used to price cuts."""

    edge_profile: str = Field(
        default="edge",
        description="Device profile whose latencies the edge layers use"
    )

    cloud_profile: str = Field(
        default="cloud",
        description="Device profile whose latencies the cloud layers use"
    )

    base_rtt_s: float = Field(
        default=0.0,
        description="Fixed seconds added to every edge-to-cloud transfer",
        ge=0.0
    )

    calibration_file: Optional[str] = Field(
        default=None,
        description="Stress calibration document; the default curves apply when unset"
    )
