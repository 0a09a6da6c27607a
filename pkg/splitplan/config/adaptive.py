"""
Adaptive repartitioning configuration settings.
"""

from pydantic import BaseModel, Field

from ..adaptive import RepartitionPolicy


class AdaptiveConfig(BaseModel):
    """Repartitioning policy defaults; placeholders until measured per deployment."""

    min_gain_pct: float = Field(
        default=5.0,
        description="Smallest predicted gain that triggers a switch",
        ge=0.0
    )

    switch_overhead_s: float = Field(
        default=1.0,
        description="One-time cost of redeploying partitions",
        ge=0.0
    )

    cooldown_s: float = Field(
        default=0.0,
        description="Minimum seconds between switches",
        ge=0.0
    )

    def to_policy(self) -> RepartitionPolicy:
        return RepartitionPolicy(
            min_gain_pct=self.min_gain_pct,
            switch_overhead_s=self.switch_overhead_s,
            cooldown_s=self.cooldown_s,
        )
