"""Base class and interface definition for enumerative pipelines."""

from __future__ import annotations

import logging
from abc import ABC, abstractmethod
from collections.abc import Iterable, Mapping
from typing import TYPE_CHECKING, Any

from thompoly.const import CONF_PREFER_CLOSED_FORM
from thompoly.enumerative import PushforwardSpec, locus_degree
from thompoly.exceptions import MalformedCharactersError, UnknownTypeError
from thompoly.models import FormulaRecord
from thompoly.polycore import format_scalar
from thompoly.solver import solve_tp

if TYPE_CHECKING:
    from thompoly.polycore import ExactScalar, GradedPoly
    from thompoly.registry import Registry, SingularityType


class BasePipeline(ABC):
    """Base class for enumerative pipelines."""

    def __init__(self, registry: Registry, config: Mapping[str, Any] | None = None) -> None:
        """Initialize the pipeline."""
        self.registry = registry
        self.config = dict(config or {})
        self.logger = logging.getLogger(f"{__name__}.{self.__class__.__name__}")
        self._spec = self.build_spec()
        self._tp_cache: dict[str, GradedPoly] = {}
        self._degree_cache: dict[str, GradedPoly] = {}

    @property
    @abstractmethod
    def pipeline_name(self) -> str:
        """Display name for this pipeline."""

    @property
    @abstractmethod
    def pipeline_id(self) -> str:
        """Unique identifier for this pipeline (lowercase, no spaces)."""

    @property
    @abstractmethod
    def eligible_names(self) -> tuple[str, ...]:
        """Types occurring for a generic source, in table order."""

    @abstractmethod
    def build_spec(self) -> PushforwardSpec:
        """The pushforward data of the pipeline."""

    @abstractmethod
    def evaluate(self, formula: GradedPoly, values: Mapping[str, Any]) -> ExactScalar:
        """Numeric value of a formula for user-supplied characters."""

    @property
    def spec(self) -> PushforwardSpec:
        """The pushforward data of the pipeline."""
        return self._spec

    @property
    def pair(self) -> tuple[int, int]:
        """Dimension pair of the projected germs."""
        return self._spec.map_pair

    def eligible_types(self) -> list[SingularityType]:
        """Registry entries of the eligible types."""
        return [self.resolve(name) for name in self.eligible_names]

    def resolve(self, name: str) -> SingularityType:
        """Look up a type of the pipeline's dimension pair."""
        return self.registry.get(name, self.pair)

    def locus_name(self, t: SingularityType) -> str:
        """Human-readable name of the locus of ``t``."""
        return f"{t.name} locus"

    def thom_polynomial(self, t: SingularityType) -> GradedPoly:
        """Solved Thom polynomial, or the stored closed form."""
        if t.name in self._tp_cache:
            return self._tp_cache[t.name]
        prefer_closed = self.config.get(CONF_PREFER_CLOSED_FORM, False)
        known = t.known_polynomial()
        if known is not None and (prefer_closed or not t.solvable or t.has_modulus):
            tp = known
        else:
            tp, _ = solve_tp(t, registry=self.registry)
        self._tp_cache[t.name] = tp
        return tp

    def locus_degree(self, name: str) -> GradedPoly:
        """Degree formula of the locus of a type, in the pipeline characters."""
        t = self.resolve(name)
        if t.name not in self._degree_cache:
            if t.name not in self.eligible_names:
                self.logger.warning(
                    "%s does not occur generically in %s; computing anyway",
                    t.name,
                    self.pipeline_id,
                )
            self._degree_cache[t.name] = locus_degree(self.thom_polynomial(t), self._spec)
            self.logger.debug("%s degree: %s", t.name, self._degree_cache[t.name].render())
        return self._degree_cache[t.name]

    def formula_table(self, names: Iterable[str] | None = None) -> dict[str, GradedPoly]:
        """Degree formulas keyed by type name."""
        chosen = list(names) if names is not None else list(self.eligible_names)
        return {self.resolve(name).name: self.locus_degree(name) for name in chosen}

    def record(self, name: str, values: Mapping[str, Any] | None = None) -> FormulaRecord:
        """Formula record for one locus, evaluated when characters are given."""
        t = self.resolve(name)
        formula = self.locus_degree(name)
        value = None
        if values:
            value = format_scalar(self.evaluate(formula, values))
        return FormulaRecord(
            locus=self.locus_name(t),
            pipeline=self.pipeline_id,
            type_name=t.name,
            formula=formula.render(),
            characters=list(self._spec.characters),
            value=value,
            latex=formula.latex(),
        )

    def _require(self, values: Mapping[str, Any], names: Iterable[str]) -> None:
        unknown = sorted(set(values) - set(names))
        if unknown:
            msg = f"{self.pipeline_id} does not take characters {unknown}"
            raise MalformedCharactersError(msg)


def unknown_pipeline(pipeline_id: str, known: Iterable[str]) -> UnknownTypeError:
    """Error for an unsupported pipeline identifier."""
    msg = f"Unsupported pipeline: {pipeline_id} (known: {', '.join(known)})"
    return UnknownTypeError(msg)
