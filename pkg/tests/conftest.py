"""Global fixtures for thompoly tests."""

import logging
from collections.abc import Generator

import pytest

from thompoly import create_pipeline
from thompoly.const import DOMAIN, ENV_LOG_LEVEL, ENV_REGISTRY_PATH, ENV_WORKERS, PAIR_2_3
from thompoly.pipelines.p3_surface import P3SurfacePipeline
from thompoly.pipelines.p4_primal import P4PrimalPipeline
from thompoly.pipelines.p4_surface import P4SurfacePipeline
from thompoly.registry import Registry, SingularityType, default_registry
from thompoly.solver import Ansatz
from thompoly.verification import Verifier


# Settings must not leak in from the developer's shell.
@pytest.fixture(autouse=True)
def clean_environment(monkeypatch: pytest.MonkeyPatch) -> None:
    """Remove thompoly environment variables."""
    for name in (ENV_REGISTRY_PATH, ENV_LOG_LEVEL, ENV_WORKERS):
        monkeypatch.delenv(name, raising=False)


# The CLI installs its own handler; put the package logger back for caplog.
@pytest.fixture(autouse=True)
def reset_package_logger() -> Generator[None]:
    """Restore the package logger after each test."""
    yield
    logger = logging.getLogger(DOMAIN)
    logger.handlers = []
    logger.propagate = True
    logger.setLevel(logging.NOTSET)


@pytest.fixture(scope="session")
def registry() -> Registry:
    """The bundled registry."""
    return default_registry()


@pytest.fixture
def b1(registry: Registry) -> SingularityType:
    """The B1 germ of a surface in 3-space."""
    return registry.get("B1", PAIR_2_3)


@pytest.fixture
def b1_ansatz(b1: SingularityType) -> Ansatz:
    """The default B1 ansatz."""
    return Ansatz.for_type(b1)


@pytest.fixture(scope="session")
def p3_pipeline(registry: Registry) -> P3SurfacePipeline:
    """Surfaces in P^3."""
    return create_pipeline("p3-surface", registry)


@pytest.fixture(scope="session")
def p4_pipeline(registry: Registry) -> P4SurfacePipeline:
    """Surfaces in P^4."""
    return create_pipeline("p4-surface", registry)


@pytest.fixture(scope="session")
def primal_pipeline(registry: Registry) -> P4PrimalPipeline:
    """Primals in P^4."""
    return create_pipeline("p4-primal", registry)


@pytest.fixture(scope="session")
def verifier(registry: Registry) -> Verifier:
    """A verifier over the bundled registry."""
    return Verifier(registry, workers=2)
