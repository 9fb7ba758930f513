"""Runtime container shared by the command-line front end."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from .config import Settings
    from .pipelines.base import BasePipeline
    from .registry import Registry


@dataclass
class ThomPolyData:
    """Runtime data shared by the command-line front end."""

    settings: Settings
    registry: Registry
    pipelines: dict[str, BasePipeline] = field(default_factory=dict)
