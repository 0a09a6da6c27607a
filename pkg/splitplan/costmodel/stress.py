"""
Stress response curves and calibration documents.

Measured sweeps capture stressed latencies directly; when we simulate
instead, a piecewise-linear slowdown curve per resource turns a
stress level into a multiplier on edge compute time. The default curve is
a calibration knob, not a measured value, and should be overridden per
device profile when real measurements exist.

Calibration document::

    {"cpu_curve": {"0": 1, "0.45": 1.5, "0.9": 3.0},
     "mem_curve": {"0": 1, "0.9": 1.4},
     "base_rtt_s": 0.0}

or, per device profile, ``{"profiles": {"edge": {...}, "edge-arm": {...}}}``.
"""

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, Literal, Mapping, Optional, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from ..exceptions import CalibrationError, GraphParseError
from ..graph import parse_document
from .conditions import OperationalCondition

logger = logging.getLogger(__name__)

DEFAULT_CURVE_TABLE: Dict[float, float] = {0.0: 1.0, 0.22: 1.15, 0.45: 1.5, 0.67: 2.0, 0.9: 3.0}


class StressCurve(BaseModel):
    """
    Piecewise-linear map from stress level to slowdown multiplier.

    Anchors must include (0, 1) and be non-decreasing; queries beyond the
    last anchor are clamped to its multiplier.
    """

    model_config = ConfigDict(frozen=True)

    anchors: Tuple[Tuple[float, float], ...]

    @model_validator(mode="after")
    def _check_anchors(self) -> "StressCurve":
        if not self.anchors:
            raise CalibrationError("Stress curve has no anchors")
        if not np.isfinite(self.anchors).all():
            raise CalibrationError(f"Stress curve anchors must be finite: {list(self.anchors)}")
        levels = [x for x, _ in self.anchors]
        if levels != sorted(levels) or len(set(levels)) != len(levels):
            raise CalibrationError(f"Stress curve anchors must be strictly increasing: {levels}")
        if levels[0] != 0.0:
            raise CalibrationError("Stress curve must have an anchor at stress 0")
        if self.anchors[0][1] != 1.0:
            raise CalibrationError(
                f"Stress curve must map stress 0 to multiplier 1, got {self.anchors[0][1]}"
            )
        if levels[-1] > 1.0:
            raise CalibrationError(f"Stress curve anchor {levels[-1]} is outside [0, 1]")
        multipliers = [y for _, y in self.anchors]
        for (x0, y0), (x1, y1) in zip(self.anchors, self.anchors[1:]):
            if y1 < y0:
                raise CalibrationError(
                    f"Stress curve is not monotone: {y0} at {x0} but {y1} at {x1}"
                )
        logger.debug(f"Stress curve anchors {levels} -> {multipliers}")
        return self

    @classmethod
    def from_table(cls, table: Mapping[Any, float]) -> "StressCurve":
        """
        Build a curve from a ``{stress: multiplier}`` table with string or numeric keys.

        Raises:
            CalibrationError: On non-numeric keys or an invalid curve
        """
        try:
            points = sorted((float(level), float(mult)) for level, mult in table.items())
        except (TypeError, ValueError) as e:
            raise CalibrationError(f"Stress curve table has non-numeric entries: {e}") from e
        return cls(anchors=tuple(points))

    @classmethod
    def identity(cls) -> "StressCurve":
        return cls(anchors=((0.0, 1.0),))

    @classmethod
    def default(cls) -> "StressCurve":
        return cls.from_table(DEFAULT_CURVE_TABLE)

    def __call__(self, stress: float) -> float:
        levels = [x for x, _ in self.anchors]
        multipliers = [y for _, y in self.anchors]
        return float(np.interp(stress, levels, multipliers))


class StressResponse(BaseModel):
    """Slowdown of edge compute under CPU and memory stress."""

    model_config = ConfigDict(frozen=True)

    cpu_curve: StressCurve = Field(default_factory=StressCurve.identity)
    mem_curve: StressCurve = Field(default_factory=StressCurve.identity)
    combine: Literal["multiplicative", "max"] = Field(
        default="multiplicative",
        description="How the CPU and memory multipliers are joined",
    )

    @classmethod
    def identity(cls) -> "StressResponse":
        return cls()

    @classmethod
    def default(cls) -> "StressResponse":
        return cls(cpu_curve=StressCurve.default(), mem_curve=StressCurve.default())

    def multiplier(self, condition: OperationalCondition) -> float:
        cpu = self.cpu_curve(condition.cpu_stress)
        mem = self.mem_curve(condition.mem_stress)
        if self.combine == "max":
            return max(cpu, mem)
        return cpu * mem


class CalibrationEntry(BaseModel):
    """Calibration for one device profile."""

    model_config = ConfigDict(extra="ignore")

    cpu_curve: Optional[Dict[str, float]] = None
    mem_curve: Optional[Dict[str, float]] = None
    base_rtt_s: float = Field(default=0.0, ge=0.0)
    combine: Literal["multiplicative", "max"] = "multiplicative"


@dataclass(frozen=True)
class Calibration:
    """A loaded calibration: stress response plus the fixed network delay."""

    response: StressResponse
    base_rtt_s: float = 0.0


def load_calibration(
    document: Union[str, bytes, Mapping[str, Any]],
    profile: Optional[str] = None,
) -> Calibration:
    """
    Load a calibration document.

    Args:
        document: JSON/YAML text or a parsed mapping
        profile: Device profile to select when the document has a ``profiles`` section

    Returns:
        Calibration: Response curves and base RTT. Curves absent from the
            document are the identity.

    Raises:
        CalibrationError: Malformed document or invalid curve
    """
    try:
        data = parse_document(document)
    except GraphParseError as e:
        raise CalibrationError(f"Calibration document is unreadable: {e}") from e

    if "profiles" in data:
        profiles = data["profiles"]
        if not isinstance(profiles, Mapping):
            raise CalibrationError("'profiles' must map device profile names to calibrations")
        if profile is None:
            if len(profiles) != 1:
                raise CalibrationError(
                    f"Calibration has several profiles {sorted(profiles)}; choose one"
                )
            profile = next(iter(profiles))
        if profile not in profiles:
            raise CalibrationError(
                f"No calibration for device profile '{profile}'; available: {sorted(profiles)}"
            )
        data = profiles[profile]

    try:
        entry = CalibrationEntry.model_validate(data)
    except ValidationError as e:
        raise CalibrationError(f"Malformed calibration: {e}") from e

    response = StressResponse(
        cpu_curve=StressCurve.from_table(entry.cpu_curve) if entry.cpu_curve else StressCurve.identity(),
        mem_curve=StressCurve.from_table(entry.mem_curve) if entry.mem_curve else StressCurve.identity(),
        combine=entry.combine,
    )
    logger.info(f"Loaded stress calibration{f' for {profile}' if profile else ''}")
    return Calibration(response=response, base_rtt_s=entry.base_rtt_s)


def load_stress_response(
    document: Union[str, bytes, Mapping[str, Any]],
    profile: Optional[str] = None,
) -> StressResponse:
    """Load only the stress response from a calibration document."""
    return load_calibration(document, profile).response


def load_calibration_file(path: Union[str, Path], profile: Optional[str] = None) -> Calibration:
    """
    Load a calibration document from disk.

    Raises:
        FileNotFoundError: If the path does not exist
    """
    calibration_path = Path(path)
    if not calibration_path.exists():
        raise FileNotFoundError(f"Calibration file not found: {calibration_path}")
    return load_calibration(calibration_path.read_bytes(), profile)
