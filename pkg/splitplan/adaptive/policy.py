"""
Repartitioning policy, deployment state and decisions.
"""

from dataclasses import dataclass
from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field

from ..cutpoints import CutPoint


class RepartitionPolicy(BaseModel):
    """
    When a deployed DNN is worth repartitioning.

    The defaults are placeholders; measure the redeployment cost of the
    target system and set them per deployment.
    """

    model_config = ConfigDict(frozen=True)

    min_gain_pct: float = Field(default=5.0, description="Smallest predicted gain that triggers a switch", ge=0.0)
    switch_overhead_s: float = Field(default=1.0, description="One-time cost of redeploying partitions", ge=0.0)
    cooldown_s: float = Field(default=0.0, description="Minimum seconds between switches", ge=0.0)


@dataclass(frozen=True)
class DeploymentState:
    """
    The cut currently deployed.

    Attributes:
        current_cut: Deployed cut point
        deployed_since: Simulation time the cut became active
        last_switch_s: Time of the last switch decision, None before the first
    """

    current_cut: CutPoint
    deployed_since: float = 0.0
    last_switch_s: Optional[float] = None

    def cooldown_elapsed(self, now_s: float, cooldown_s: float) -> bool:
        if self.last_switch_s is None:
            return True
        return now_s - self.last_switch_s >= cooldown_s


@dataclass(frozen=True)
class RepartitionDecision:
    """Outcome of one decide call; ``target_cut`` is the current cut on keep."""

    action: Literal["keep", "switch"]
    target_cut: CutPoint
    predicted_static_s: float
    predicted_best_s: float
    predicted_gain_pct: float

    @property
    def is_switch(self) -> bool:
        return self.action == "switch"
