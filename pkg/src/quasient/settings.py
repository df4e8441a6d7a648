"""Environment settings for quasient."""

from __future__ import annotations

import os

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Process-wide settings read from ``QUASIENT_*`` environment variables.

    Attributes:
        threads: Worker cap for scans (0 = one worker per CPU)
    """

    model_config = SettingsConfigDict(env_prefix="QUASIENT_", extra="ignore")

    threads: int = Field(default=0, ge=0)

    def resolved_threads(self) -> int:
        """Worker count with ``0`` expanded to the CPU count."""
        if self.threads == 0:
            return os.cpu_count() or 1
        return self.threads


def get_settings() -> Settings:
    """Read settings from the current environment."""
    return Settings()
