"""
Configuration Factory Functions

This module provides factory functions for ready-made configurations.
"""

from ..sweep import ConditionGrid, default_grid
from .logging import LoggingConfig
from .main import SplitPlanConfig
from .sweep import SweepConfig

PRESETS = ("quick", "protocol")


def create_quick_config(**kwargs) -> SplitPlanConfig:
    """
    Create a configuration for fast, exact runs.

    One repetition per condition and no jitter, so swept means equal the
    model values.

    Args:
        **kwargs: Additional arguments passed to SplitPlanConfig

    Returns:
        SplitPlanConfig instance with quick-run settings
    """
    grid = ConditionGrid(repetitions=1)
    return SplitPlanConfig(
        sweep=SweepConfig(grid=grid, noise=0.0, seed=kwargs.pop('seed', 0)),
        **kwargs
    )


def create_protocol_config(**kwargs) -> SplitPlanConfig:
    """
    Create a configuration that runs the full measurement protocol.

    Five CPU and five memory stress levels, four transfer rates, ten
    repetitions and 2 % jitter.

    Args:
        **kwargs: Additional arguments passed to SplitPlanConfig

    Returns:
        SplitPlanConfig instance with the full protocol
    """
    return SplitPlanConfig(
        sweep=SweepConfig(grid=default_grid(), noise=0.02, seed=kwargs.pop('seed', 0)),
        logging=kwargs.pop('logging', LoggingConfig(level='INFO')),
        **kwargs
    )


def create_preset_config(name: str, **kwargs) -> SplitPlanConfig:
    """
    Create a configuration by preset name.

    Raises:
        ValueError: If the preset is unknown
    """
    if name == 'quick':
        return create_quick_config(**kwargs)
    if name == 'protocol':
        return create_protocol_config(**kwargs)
    raise ValueError(f"Unknown preset '{name}'; choose from {list(PRESETS)}")
