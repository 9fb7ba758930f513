"""Line projections of smooth 3-folds in projective 4-space."""

from __future__ import annotations

from typing import TYPE_CHECKING, Any

from thompoly.const import PRIMAL_CHARS
from thompoly.enumerative import PushforwardSpec, primal_spec
from thompoly.exceptions import MalformedCharactersError
from thompoly.pipelines.base import BasePipeline
from thompoly.polycore import exact

if TYPE_CHECKING:
    from collections.abc import Mapping

    from thompoly.polycore import ExactScalar, GradedPoly


class P4PrimalPipeline(BasePipeline):
    """Hypersurfaces of degree d in P^4."""

    @property
    def pipeline_name(self) -> str:
        """Return the pipeline name."""
        return "Primals in P^4"

    @property
    def pipeline_id(self) -> str:
        """Return the pipeline ID."""
        return "p4-primal"

    @property
    def eligible_names(self) -> tuple[str, ...]:
        """Types up to codimension one in the primal."""
        return ("A3", "A4", "C", "D", "I22")

    def build_spec(self) -> PushforwardSpec:
        """Tangent classes ``(1 + h)^5 / (1 + d h)``."""
        return primal_spec(self.pipeline_id)

    def evaluate(self, formula: GradedPoly, values: Mapping[str, Any]) -> ExactScalar:
        """Evaluate at a numeric degree."""
        if set(values) != set(PRIMAL_CHARS):
            msg = f"{self.pipeline_id} takes exactly the characters {PRIMAL_CHARS}"
            raise MalformedCharactersError(msg)
        return formula.substitute({"d": exact(values["d"])}).constant_term()
