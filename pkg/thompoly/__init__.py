"""Thom polynomials by the restriction method and enumerative degree formulas."""

from __future__ import annotations

import logging
from typing import TYPE_CHECKING, Any

from .config import Settings
from .const import VERSION
from .runtime import ThomPolyData
from .pipelines.base import unknown_pipeline
from .pipelines.p3_surface import P3SurfacePipeline
from .pipelines.p4_primal import P4PrimalPipeline
from .pipelines.p4_surface import P4SurfacePipeline
from .registry import default_registry

if TYPE_CHECKING:
    from collections.abc import Mapping

    from .pipelines.base import BasePipeline
    from .registry import Registry

_LOGGER = logging.getLogger(__name__)

__version__ = VERSION

# Mapping of pipeline IDs to their classes
PIPELINE_CLASSES = {
    "p3-surface": P3SurfacePipeline,
    "p4-surface": P4SurfacePipeline,
    "p4-primal": P4PrimalPipeline,
}


def create_pipeline(
    pipeline_id: str, registry: Registry, config: Mapping[str, Any] | None = None
) -> BasePipeline:
    """Instantiate a pipeline by its identifier."""
    if pipeline_id not in PIPELINE_CLASSES:
        _LOGGER.error("Unsupported pipeline: %s", pipeline_id)
        raise unknown_pipeline(pipeline_id, PIPELINE_CLASSES)
    return PIPELINE_CLASSES[pipeline_id](registry, config)


def setup(settings: Settings | None = None) -> ThomPolyData:
    """Load settings and the registry, with the environment override applied."""
    settings = settings or Settings.from_env()
    registry = default_registry(settings.registry_path)
    _LOGGER.debug("Registry ready with %s types", len(registry))
    return ThomPolyData(settings=settings, registry=registry)


def get_pipeline(data: ThomPolyData, pipeline_id: str) -> BasePipeline:
    """Pipeline from the runtime cache, created on first use."""
    if pipeline_id not in data.pipelines:
        data.pipelines[pipeline_id] = create_pipeline(pipeline_id, data.registry)
    return data.pipelines[pipeline_id]
