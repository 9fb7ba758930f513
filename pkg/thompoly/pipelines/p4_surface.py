"""Line projections of surfaces in projective 4-space."""

from __future__ import annotations

from typing import TYPE_CHECKING, Any

from thompoly.const import COMPLETE_INTERSECTION_CHARS, SURFACE_CHARS
from thompoly.enumerative import (
    PushforwardSpec,
    SurfaceChars,
    complete_intersection_chars,
    surface_spec,
)
from thompoly.exceptions import MalformedCharactersError
from thompoly.pipelines.base import BasePipeline

if TYPE_CHECKING:
    from collections.abc import Mapping

    from thompoly.polycore import ExactScalar, GradedPoly


class P4SurfacePipeline(BasePipeline):
    """Smooth surfaces in P^4, projected along lines to 3-space."""

    @property
    def pipeline_name(self) -> str:
        """Return the pipeline name."""
        return "Surfaces in P^4"

    @property
    def pipeline_id(self) -> str:
        """Return the pipeline ID."""
        return "p4-surface"

    @property
    def eligible_names(self) -> tuple[str, ...]:
        """S2, S3, B3 and C3 do not occur for a generic surface."""
        return ("B1", "B2", "H2", "H3", "P3")

    def build_spec(self) -> PushforwardSpec:
        """Formal characters ``d, xi1, xi2, xi01`` over P^4."""
        return surface_spec(4, self.pipeline_id)

    def complete_intersection_degree(self, name: str, d1: Any = None, d2: Any = None) -> Any:
        """Degree for a complete intersection of degrees ``d1, d2``."""
        chars = complete_intersection_chars(d1, d2)
        return chars.evaluate(self.locus_degree(name))

    def evaluate(self, formula: GradedPoly, values: Mapping[str, Any]) -> ExactScalar:
        """Evaluate for surface characters or complete-intersection degrees."""
        keys = set(values)
        if keys == set(COMPLETE_INTERSECTION_CHARS):
            return complete_intersection_chars(values["d1"], values["d2"]).evaluate(formula)
        if keys == set(SURFACE_CHARS):
            return SurfaceChars.from_mapping(values).evaluate(formula)
        msg = (
            f"Characters {sorted(keys)} must be exactly {SURFACE_CHARS}"
            f" or {COMPLETE_INTERSECTION_CHARS}"
        )
        raise MalformedCharactersError(msg)
