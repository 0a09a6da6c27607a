"""
Output location settings.

The output directory is the only setting read from the environment
(``SPLITPLAN_OUTPUT_DIR``, also from a ``.env`` file).
"""

from pathlib import Path
from typing import Union

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class OutputConfig(BaseSettings):
    """Where relative output paths are written."""

    model_config = SettingsConfigDict(
        env_prefix="SPLITPLAN_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore"
    )

    output_dir: str = Field(
        default=".",
        description="Directory that relative output paths resolve against"
    )

    def resolve(self, path: Union[str, Path]) -> Path:
        """Absolute paths pass through; relative ones land in ``output_dir``."""
        target = Path(path)
        if target.is_absolute():
            return target
        return Path(self.output_dir) / target
