"""
Configuration package for the splitplan library.

This package provides a modular configuration system with separate
modules for different configuration aspects:

- costmodel: Device profiles, base RTT and stress calibration file
- sweep: Condition grid, jitter, seed and worker threads
- adaptive: Repartitioning policy defaults
- logging: Logging configuration and file rotation
- output: Output directory (the only environment override)
- main: Main configuration class that combines all sections

Usage:
    from splitplan.config import get_settings, SplitPlanConfig
    from splitplan.config.sweep import SweepConfig
"""

# Main configuration classes and functions
from .main import (
    SplitPlanConfig,
    get_settings,
    reload_settings,
    load_config_from_file,
)

# Factory functions
from .factory import (
    PRESETS,
    create_quick_config,
    create_protocol_config,
    create_preset_config,
)

# Individual configuration classes
from .adaptive import AdaptiveConfig
from .costmodel import CostModelConfig
from .logging import LoggingConfig, setup_logging
from .output import OutputConfig
from .sweep import SweepConfig


__all__ = [
    # Main configuration
    "SplitPlanConfig",
    "get_settings",
    "reload_settings",
    "load_config_from_file",

    # Factory functions
    "PRESETS",
    "create_quick_config",
    "create_protocol_config",
    "create_preset_config",

    # Individual configuration classes
    "AdaptiveConfig",
    "CostModelConfig",
    "LoggingConfig",
    "OutputConfig",
    "SweepConfig",
    "setup_logging",
]
