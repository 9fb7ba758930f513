"""Line projections of surfaces in projective 3-space."""

from __future__ import annotations

from functools import cached_property
from typing import TYPE_CHECKING, Any

from thompoly.const import ORDINARY_CHARS, SURFACE_CHARS
from thompoly.enumerative import (
    OrdinaryChars,
    PushforwardSpec,
    SurfaceChars,
    ordinary_conversion,
    ordinary_table,
    smooth_specialization,
    surface_spec,
)
from thompoly.exceptions import MalformedCharactersError
from thompoly.golden import P3_LOCUS_NAMES
from thompoly.pipelines.base import BasePipeline

if TYPE_CHECKING:
    from collections.abc import Mapping

    from thompoly.polycore import ExactScalar, GradedPoly
    from thompoly.registry import SingularityType


class P3SurfacePipeline(BasePipeline):
    """Surfaces with ordinary singularities in P^3, projected along lines."""

    @property
    def pipeline_name(self) -> str:
        """Return the pipeline name."""
        return "Surfaces in P^3"

    @property
    def pipeline_id(self) -> str:
        """Return the pipeline ID."""
        return "p3-surface"

    @property
    def eligible_names(self) -> tuple[str, ...]:
        """Goose loci depend on the choice of viewpoint and are left out."""
        return ("Lips/Beaks", "Swallowtail", "Butterfly", "Gulls", "Sharksfin")

    def build_spec(self) -> PushforwardSpec:
        """Formal characters ``d, xi1, xi2, xi01`` over P^3."""
        return surface_spec(3, self.pipeline_id)

    def locus_name(self, t: SingularityType) -> str:
        """Classical name of the locus."""
        return P3_LOCUS_NAMES.get(t.name, super().locus_name(t))

    @cached_property
    def conversion(self) -> dict[str, GradedPoly]:
        """``xi1, xi2, xi01`` in ordinary characters."""
        return ordinary_conversion()

    def ordinary_degree(self, name: str) -> GradedPoly:
        """Degree formula in ``d, eps0, C, T``."""
        return ordinary_table(self.locus_degree(name), self.conversion)

    def ordinary_formula_table(self) -> dict[str, GradedPoly]:
        """Every eligible degree formula in ordinary characters."""
        return {name: self.ordinary_degree(name) for name in self.eligible_names}

    def smooth_surface_degrees(self, d: int | None = None) -> dict[str, Any]:
        """Degrees for a smooth surface, symbolic in ``d`` unless it is given."""
        result: dict[str, Any] = {}
        for name in self.eligible_names:
            formula = smooth_specialization(self.ordinary_degree(name))
            if d is None:
                result[name] = formula
            else:
                result[name] = self.evaluate(formula, {"d": d})
        return result

    def characters(self, values: Mapping[str, Any]) -> SurfaceChars:
        """Surface characters from either character set."""
        keys = set(values)
        if keys == set(SURFACE_CHARS):
            return SurfaceChars.from_mapping(values)
        if keys <= set(ORDINARY_CHARS):
            return OrdinaryChars.from_mapping(values).to_surface_chars(self.conversion)
        msg = (
            f"Characters {sorted(keys)} are neither a full set of {SURFACE_CHARS}"
            f" nor a subset of {ORDINARY_CHARS}"
        )
        raise MalformedCharactersError(msg)

    def evaluate(self, formula: GradedPoly, values: Mapping[str, Any]) -> ExactScalar:
        """Evaluate a formula in surface or ordinary characters."""
        if set(formula.table.params) == set(ORDINARY_CHARS):
            self._require(values, ORDINARY_CHARS)
            return OrdinaryChars.from_mapping(values).evaluate(formula)
        return self.characters(values).evaluate(formula)
