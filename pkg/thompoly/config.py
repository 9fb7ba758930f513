"""Settings for the thompoly package, read from the environment."""

from __future__ import annotations

import logging
import os
from collections.abc import Mapping
from dataclasses import dataclass
from pathlib import Path
from typing import Any

import voluptuous as vol

from .const import (
    CONF_LOG_LEVEL,
    CONF_REGISTRY_PATH,
    CONF_WORKERS,
    DEFAULT_LOG_LEVEL,
    DEFAULT_WORKERS,
    ENV_LOG_LEVEL,
    ENV_REGISTRY_PATH,
    ENV_WORKERS,
    LOG_LEVELS,
)
from .exceptions import UsageError

_LOGGER = logging.getLogger(__name__)

SETTINGS_SCHEMA = vol.Schema(
    {
        vol.Optional(CONF_REGISTRY_PATH, default=None): vol.Any(None, vol.All(str, vol.Length(min=1))),
        vol.Optional(CONF_LOG_LEVEL, default=DEFAULT_LOG_LEVEL): vol.All(
            vol.Upper, vol.In(LOG_LEVELS)
        ),
        vol.Optional(CONF_WORKERS, default=DEFAULT_WORKERS): vol.All(
            vol.Coerce(int), vol.Range(min=1)
        ),
    }
)

_ENVIRONMENT = {
    CONF_REGISTRY_PATH: ENV_REGISTRY_PATH,
    CONF_LOG_LEVEL: ENV_LOG_LEVEL,
    CONF_WORKERS: ENV_WORKERS,
}


@dataclass(frozen=True)
class Settings:
    """Validated runtime settings."""

    registry_path: Path | None = None
    log_level: str = DEFAULT_LOG_LEVEL
    workers: int = DEFAULT_WORKERS

    @classmethod
    def from_mapping(cls, data: Mapping[str, Any]) -> Settings:
        """Validate raw values."""
        try:
            values = SETTINGS_SCHEMA(dict(data))
        except vol.Invalid as err:
            msg = f"Invalid settings: {err}"
            raise UsageError(msg) from err
        path = values[CONF_REGISTRY_PATH]
        return cls(
            registry_path=Path(path) if path else None,
            log_level=values[CONF_LOG_LEVEL],
            workers=values[CONF_WORKERS],
        )

    @classmethod
    def from_env(cls, environ: Mapping[str, str] | None = None) -> Settings:
        """Read settings from environment variables."""
        environ = os.environ if environ is None else environ
        raw = {key: environ[name] for key, name in _ENVIRONMENT.items() if environ.get(name)}
        settings = cls.from_mapping(raw)
        _LOGGER.debug("Settings from environment: %s", settings.to_dict())
        return settings

    def merged(self, **overrides: Any) -> Settings:
        """Copy with explicit values (e.g. command-line flags) taking precedence."""
        data = self.to_dict()
        data.update({k: v for k, v in overrides.items() if v is not None})
        return Settings.from_mapping(data)

    def to_dict(self) -> dict[str, Any]:
        """Return a dictionary representation."""
        return {
            CONF_REGISTRY_PATH: str(self.registry_path) if self.registry_path else None,
            CONF_LOG_LEVEL: self.log_level,
            CONF_WORKERS: self.workers,
        }
