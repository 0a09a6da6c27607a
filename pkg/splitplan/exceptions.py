"""
Custom exceptions for the splitplan library.

This module defines all custom exceptions used throughout splitplan,
providing clear error handling and better debugging capabilities.

None of these derive from ValueError, so they propagate unchanged through
pydantic validators instead of being folded into a ValidationError.
"""

from typing import Optional, Sequence


class SplitPlanError(Exception):
    """Base exception for all splitplan errors."""
    pass


class SplitPlanConfigurationError(SplitPlanError):
    """Raised when configuration is invalid or missing."""
    pass


class GraphParseError(SplitPlanError):
    """Raised when a model document cannot be parsed."""
    pass


class GraphValidationError(SplitPlanError):
    """
    Raised when a model document parses but violates a graph invariant.

    Attributes:
        layer: Name of the offending layer, if a single layer is at fault
        cycle: Layer names forming a cycle, if the violation is a cycle
    """

    def __init__(
        self,
        message: str,
        layer: Optional[str] = None,
        cycle: Optional[Sequence[str]] = None,
    ):
        super().__init__(message)
        self.layer = layer
        self.cycle = tuple(cycle) if cycle else None


class CutPointError(SplitPlanError):
    """Raised when a cut point does not belong to the graph it is used with."""
    pass


class DeviceProfileError(SplitPlanError):
    """Raised when a device profile is not present in a graph."""
    pass


class CalibrationError(SplitPlanError):
    """Raised when a stress calibration table is malformed."""
    pass


class SweepError(SplitPlanError):
    """Raised when a sweep cannot produce valid measurement records."""
    pass


class AnalysisError(SplitPlanError):
    """Raised when measurement data is empty or lacks required groups."""
    pass


class PlanningError(SplitPlanError):
    """Raised when no partition can be planned for a graph."""
    pass


class ScenarioError(SplitPlanError):
    """Raised when a simulation scenario is malformed."""
    pass


class FixtureError(SplitPlanError):
    """Raised when a fixture shape or its parameters are unknown."""
    pass
