"""
Main configuration class for the splitplan library.

This module provides the configuration class that combines all
configuration sections and provides utility methods for loading and
saving configurations.
"""

import json
from pathlib import Path
from typing import Optional

import yaml
from pydantic import BaseModel, Field, ValidationError, model_validator

from ..exceptions import SplitPlanConfigurationError
from .adaptive import AdaptiveConfig
from .costmodel import CostModelConfig
from .logging import LoggingConfig
from .output import OutputConfig
from .sweep import SweepConfig


class SplitPlanConfig(BaseModel):
    """Main configuration class for the splitplan library."""

    # Nested configuration sections
    costmodel: CostModelConfig = Field(default_factory=CostModelConfig)
    sweep: SweepConfig = Field(default_factory=SweepConfig)
    adaptive: AdaptiveConfig = Field(default_factory=AdaptiveConfig)
    logging: LoggingConfig = Field(default_factory=LoggingConfig)
    output: OutputConfig = Field(default_factory=OutputConfig)

    # Global settings
    debug: bool = Field(
        default=False,
        description="Enable debug mode"
    )

    @model_validator(mode='after')
    def validate_config(self):
        """Validate the entire configuration."""
        # Debug mode forces the most verbose logging
        if self.debug:
            self.logging.level = 'DEBUG'

        return self

    @classmethod
    def from_file(cls, config_path: str) -> 'SplitPlanConfig':
        """
        Load configuration from a YAML or JSON file.

        Raises:
            FileNotFoundError: If the file does not exist
            SplitPlanConfigurationError: On an unsupported format or invalid values
        """
        config_file = Path(config_path)

        if not config_file.exists():
            raise FileNotFoundError(f"Configuration file not found: {config_path}")

        suffix = config_file.suffix.lower()
        try:
            with open(config_file, 'r', encoding='utf-8') as f:
                if suffix in ['.yaml', '.yml']:
                    data = yaml.safe_load(f)
                elif suffix == '.json':
                    data = json.load(f)
                else:
                    raise SplitPlanConfigurationError(
                        f"Unsupported configuration file format: {config_file.suffix}"
                    )
        except (yaml.YAMLError, json.JSONDecodeError, UnicodeDecodeError) as e:
            raise SplitPlanConfigurationError(f"Cannot parse configuration file {config_path}: {e}") from e

        if data is not None and not isinstance(data, dict):
            raise SplitPlanConfigurationError(
                f"Configuration file {config_path} must hold a mapping, got {type(data).__name__}"
            )
        try:
            return cls(**(data or {}))
        except ValidationError as e:
            raise SplitPlanConfigurationError(f"Invalid configuration in {config_path}: {e}") from e

    def save_to_file(self, config_path: str, format: str = 'yaml') -> None:
        """Save configuration to a file."""
        config_file = Path(config_path)
        config_file.parent.mkdir(parents=True, exist_ok=True)

        data = self.model_dump(mode='json')

        if format.lower() in ['yaml', 'yml']:
            with open(config_file, 'w', encoding='utf-8') as f:
                yaml.safe_dump(data, f, default_flow_style=False, indent=2)
        elif format.lower() == 'json':
            with open(config_file, 'w', encoding='utf-8') as f:
                json.dump(data, f, indent=2)
        else:
            raise SplitPlanConfigurationError(f"Unsupported format: {format}")


# Global configuration instance (lazy initialization)
_settings: Optional[SplitPlanConfig] = None


def get_settings() -> SplitPlanConfig:
    """Get the global settings instance."""
    global _settings
    if _settings is None:
        _settings = SplitPlanConfig()
    return _settings


def reload_settings() -> SplitPlanConfig:
    """Rebuild settings from defaults and the environment."""
    global _settings
    _settings = SplitPlanConfig()
    return _settings


def load_config_from_file(config_path: str) -> SplitPlanConfig:
    """Load configuration from a file and set as global settings."""
    global _settings
    _settings = SplitPlanConfig.from_file(config_path)
    return _settings
