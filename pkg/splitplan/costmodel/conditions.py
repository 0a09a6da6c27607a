"""
Operational conditions, network model and latency estimates.
"""

from dataclasses import dataclass, field

from pydantic import BaseModel, ConfigDict, Field

BITS_PER_MEGABIT = 1_000_000


class OperationalCondition(BaseModel):
    """The environment a distributed DNN runs under."""

    model_config = ConfigDict(frozen=True)

    cpu_stress: float = Field(default=0.0, description="Edge CPU utilisation applied", ge=0.0, le=1.0)
    mem_stress: float = Field(default=0.0, description="Edge memory utilisation applied", ge=0.0, le=1.0)
    net_rate: float = Field(description="Edge-to-cloud data transfer rate in Mb/s", gt=0.0)

    def label(self) -> str:
        return (
            f"cpu={self.cpu_stress:.0%} mem={self.mem_stress:.0%} "
            f"net={self.net_rate:g}Mb/s"
        )


class NetworkModel(BaseModel):
    """Edge-to-cloud link: rate in Mb/s (10^6 bits/s) plus a fixed per-request delay."""

    model_config = ConfigDict(frozen=True)

    rate: float = Field(description="Data transfer rate in Mb/s", gt=0.0)
    base_rtt: float = Field(default=0.0, description="Seconds added per transfer", ge=0.0)


@dataclass(frozen=True)
class LatencyEstimate:
    """End-to-end latency of one inference, broken down by stage."""

    edge_s: float
    transfer_s: float
    cloud_s: float
    total_s: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "total_s", self.edge_s + self.transfer_s + self.cloud_s)
