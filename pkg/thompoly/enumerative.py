"""Degrees of singular-projection loci of surfaces and 3-folds in projective space.

A Thom polynomial in ``(c, cp)`` is evaluated on the flag manifold over the
source ``M``: ``c`` becomes ``c(TM)`` and ``cp`` becomes the Chern classes of
``γ* ⊗ V``. Integrating over the fiber lands in ``H*(M)``; the pushforward
to projective space is expressed through the characters of ``f: M -> P^n``.
"""

from __future__ import annotations

import logging
from collections.abc import Callable, Mapping
from dataclasses import dataclass, field
from typing import Any

import voluptuous as vol
from sympy import Symbol, cancel, expand, linear_eq_to_matrix

from .cohomology import ChernVector, QuotientRing, flag_ring, flag_target_chern
from .const import (
    COMPLETE_INTERSECTION_CHARS,
    HYPERPLANE_VAR,
    ORDINARY_CHARS,
    PRIMAL_CHARS,
    PULLBACK_VAR,
    QUOTIENT_PREFIX,
    SOURCE_PREFIX,
    SURFACE_CHARS,
    TARGET_PREFIX,
)
from .exceptions import (
    DomainError,
    EmptyLocusError,
    IncompleteSpecError,
    IntegralityError,
    MalformedCharactersError,
    UsageError,
)
from .golden import ORDINARY_TO_SURFACE, multi_tp, ordinary_formula
from .polycore import (
    ExactScalar,
    GradedPoly,
    VarTable,
    exact,
    params_table,
    truncated_inverse,
)

_LOGGER = logging.getLogger(__name__)

TangentBuilder = Callable[[QuotientRing], ChernVector]

DIRECTION_FORWARD = "forward"
DIRECTION_INVERSE = "inverse"

# Multiplicities of the stable multi-singularity loci
MULTI_DENOMINATORS = {"C": 1, "T": 6, "eps0": 2}


@dataclass(frozen=True)
class PushforwardSpec:
    """How classes on a source ``M`` of dimension m are pushed to ``P^n``.

    ``xi_map`` sends the exponent vector of a monomial in ``chern_vars`` to the
    character ``X`` with ``f_*(monomial) = X a^(n - m + degree)``.
    """

    pipeline_id: str
    ambient_dim: int
    source_dim: int
    chern_vars: tuple[tuple[str, int], ...]
    characters: tuple[str, ...]
    xi_map: Mapping[tuple[int, ...], str]
    tangent_chern: TangentBuilder = field(compare=False)

    @property
    def fiber_exponent(self) -> int:
        """Dimension of the fiber of the flag manifold over ``M``."""
        return self.ambient_dim - 1

    @property
    def flag_dim(self) -> int:
        """Dimension of the flag manifold over ``M``."""
        return self.source_dim + self.fiber_exponent

    @property
    def map_pair(self) -> tuple[int, int]:
        """Dimension pair of the projected germs."""
        return (self.source_dim, self.ambient_dim - 1)

    def ring(self) -> QuotientRing:
        """Cohomology ring of the flag manifold over ``M``."""
        return flag_ring(
            self.ambient_dim,
            base=PULLBACK_VAR,
            base_dim=self.source_dim,
            leading=self.chern_vars,
            params=self.characters,
        )

    def output_table(self) -> VarTable:
        """Classes on ``P^n`` with character coefficients."""
        return VarTable((HYPERPLANE_VAR,), (1,), self.characters)


def formal_surface_tangent(ring: QuotientRing) -> ChernVector:
    """``c(TM) = 1 + c1 + c2`` with formal classes."""
    return ChernVector((ring.var("c1"), ring.var("c2")), ring)


def hypersurface_tangent(ring: QuotientRing) -> ChernVector:
    """``c(TX) = (1 + h)^(n+1) / (1 + d h)`` for a hypersurface of degree d."""
    h = ring.var(PULLBACK_VAR)
    degree = ring.var(PRIMAL_CHARS[0])
    n = ring.relation_degree
    total = ((1 + h) ** (n + 1) * truncated_inverse(1 + degree * h, n - 1)).truncate(n - 1)
    return ChernVector.from_total(total, n - 1, ring)


_SURFACE_XI = {(0, 0): "d", (1, 0): "xi1", (2, 0): "xi2", (0, 1): "xi01"}


def surface_spec(ambient_dim: int, pipeline_id: str | None = None) -> PushforwardSpec:
    """Surfaces with formal characters ``d, xi1, xi2, xi01``."""
    return PushforwardSpec(
        pipeline_id=pipeline_id or f"p{ambient_dim}-surface",
        ambient_dim=ambient_dim,
        source_dim=2,
        chern_vars=(("c1", 1), ("c2", 2)),
        characters=SURFACE_CHARS,
        xi_map=_SURFACE_XI,
        tangent_chern=formal_surface_tangent,
    )


def primal_spec(pipeline_id: str = "p4-primal") -> PushforwardSpec:
    """Smooth hypersurfaces of degree ``d`` in ``P^4``."""
    return PushforwardSpec(
        pipeline_id=pipeline_id,
        ambient_dim=4,
        source_dim=3,
        chern_vars=(),
        characters=PRIMAL_CHARS,
        xi_map={(): PRIMAL_CHARS[0]},
        tangent_chern=hypersurface_tangent,
    )


def locus_class(tp: GradedPoly, spec: PushforwardSpec, ring: QuotientRing | None = None) -> GradedPoly:
    """Evaluate ``tp`` on the flag manifold over ``M`` in ring normal form."""
    ring = ring or spec.ring()
    source = spec.tangent_chern(ring)
    target = flag_target_chern(spec.ambient_dim, ring)
    bindings = {f"{SOURCE_PREFIX}{i}": source[i] for i in range(1, spec.source_dim + 1)}
    bindings.update(
        {f"{TARGET_PREFIX}{j}": target[j] for j in range(1, spec.fiber_exponent + 1)}
    )
    unknown = [
        name
        for name in tp.variables()
        if name not in bindings and name not in ring.table.params
    ]
    if unknown:
        msg = f"Polynomial uses {sorted(unknown)}, outside the classes of a {spec.map_pair} map"
        raise UsageError(msg)
    return ring.reduce(tp.substitute(bindings, ring.table))


def flag_pushdown(x: GradedPoly, spec: PushforwardSpec, ring: QuotientRing | None = None) -> GradedPoly:
    """Integrate over the fiber of the flag manifold."""
    ring = ring or spec.ring()
    return ring.gysin(x)


def xi_pushforward(x: GradedPoly, spec: PushforwardSpec) -> GradedPoly:
    """Push a class on ``M`` to ``P^n`` using the characters."""
    out = spec.output_table()
    lead = len(spec.chern_vars)
    weights = [w for _, w in spec.chern_vars]
    offset = spec.ambient_dim - spec.source_dim
    expected = (*(name for name, _ in spec.chern_vars), PULLBACK_VAR)
    if x.table.names != expected or x.table.params != spec.characters:
        x = x.retable(VarTable(expected, (*weights, 1), spec.characters))
    result = GradedPoly.zero(out)
    for monom, coeff in x.poly.items():
        exponents = monom[:lead]
        h_power = monom[lead]
        params = monom[lead + 1 :]
        degree = sum(e * w for e, w in zip(exponents, weights, strict=True)) + h_power
        if degree > spec.source_dim:
            continue
        character = spec.xi_map.get(tuple(exponents))
        if character is None:
            msg = f"No pushforward rule for c-monomial {exponents} in {spec.pipeline_id}"
            raise IncompleteSpecError(msg)
        term = GradedPoly.monomial(out, (offset + degree, *params), coeff)
        result = result + term * GradedPoly.var(out, character)
    return result


def locus_degree(tp: GradedPoly, spec: PushforwardSpec) -> GradedPoly:
    """Degree of the image in ``P^n`` of the locus with Thom polynomial ``tp``."""
    codim = tp.weighted_degree()
    if codim > spec.flag_dim:
        msg = (
            f"Codimension {codim} exceeds the flag manifold dimension {spec.flag_dim}"
            f" of {spec.pipeline_id}; the locus is empty"
        )
        raise EmptyLocusError(msg)
    out = spec.output_table()
    if codim < spec.fiber_exponent:
        _LOGGER.debug("Codimension %s locus dominates the source in %s", codim, spec.pipeline_id)
        return GradedPoly.zero(out.params_table())
    ring = spec.ring()
    pushed = xi_pushforward(flag_pushdown(locus_class(tp, spec, ring), spec, ring), spec)
    degree = pushed.coefficient_poly({HYPERPLANE_VAR: codim - spec.source_dim + 1})
    _LOGGER.debug("Locus degree in %s: %s", spec.pipeline_id, degree.render())
    return degree


def _check_denominator(name: str, value: GradedPoly) -> None:
    denominator = MULTI_DENOMINATORS[name]
    if not value.scale(denominator).is_integral():
        msg = f"{name} = {value.render()} is not integral after clearing {denominator}"
        raise IntegralityError(msg)


def stable_multisingularity_chars() -> dict[str, GradedPoly]:
    """Crosscaps, triple points and double-curve degree in ``d, xi1, xi2, xi01``."""
    spec = surface_spec(3)
    base = spec.ring().base_table
    h = GradedPoly.var(base, PULLBACK_VAR)
    tangent = 1 + GradedPoly.var(base, "c1") + GradedPoly.var(base, "c2")
    quotient = ((1 + h) ** 4 * truncated_inverse(tangent, 2)).truncate(2)
    cb1, cb2 = quotient.homogeneous_part(1), quotient.homogeneous_part(2)
    s0 = GradedPoly.var(base, "d") * h
    s1 = xi_pushforward(cb1, spec).coefficient_poly({HYPERPLANE_VAR: 2}).retable(base) * h**2
    bindings = {f"{QUOTIENT_PREFIX}1": cb1, f"{QUOTIENT_PREFIX}2": cb2, "s0": s0, "s1": s1}

    def integrate(name: str, power: int) -> GradedPoly:
        value = multi_tp(name).substitute(bindings, base)
        return xi_pushforward(value, spec).coefficient_poly({HYPERPLANE_VAR: power})

    values = {
        "C": integrate("A1", 3),
        "T": integrate("A0^3", 3).scale(exact("1/3")),
        "eps0": integrate("A0^2", 2).scale(exact("1/2")),
    }
    for name, value in values.items():
        _check_denominator(name, value)
    return values


def convert_characters(direction: str = DIRECTION_FORWARD) -> dict[str, GradedPoly]:
    """Substitution between ``(d, eps0, C, T)`` and ``(d, xi1, xi2, xi01)``.

    ``forward`` expresses ``xi1, xi2, xi01`` in ordinary characters by solving
    the multi-singularity system exactly over ``Q(d)``; ``inverse`` gives
    ``eps0, C, T`` in the surface characters.
    """
    inverse = stable_multisingularity_chars()
    if direction == DIRECTION_INVERSE:
        return inverse
    if direction != DIRECTION_FORWARD:
        msg = f"Unknown conversion direction {direction!r}"
        raise UsageError(msg)

    unknowns = [Symbol(name) for name in SURFACE_CHARS[1:]]
    equations = [inverse[name].to_expr() - Symbol(name) for name in ("eps0", "C", "T")]
    matrix, rhs = linear_eq_to_matrix(equations, unknowns)
    if cancel(matrix.det()) == 0:
        msg = "Character system is singular"
        raise DomainError(msg)
    solution = matrix.LUsolve(rhs)
    table = params_table(ORDINARY_CHARS)
    forward = {}
    for name, expr in zip(SURFACE_CHARS[1:], solution, strict=True):
        try:
            poly = table.ring.from_expr(expand(cancel(expr)))
        except ValueError as err:
            msg = f"{name} is not polynomial in the ordinary characters: {expr}"
            raise DomainError(msg) from err
        forward[name] = GradedPoly(table, poly)
    _LOGGER.debug("Ordinary conversion: %s", {k: v.render() for k, v in forward.items()})
    return forward


def ordinary_conversion() -> dict[str, GradedPoly]:
    """``xi1, xi2, xi01`` in ``d, eps0, C, T``."""
    return convert_characters(DIRECTION_FORWARD)


def ordinary_table(formula: GradedPoly, conversion: Mapping[str, GradedPoly] | None = None) -> GradedPoly:
    """Rewrite a surface formula in the ordinary characters."""
    conversion = conversion or ordinary_conversion()
    return formula.substitute(dict(conversion), params_table(ORDINARY_CHARS))


def published_conversion() -> dict[str, GradedPoly]:
    """The classical expressions of ``xi1, xi2, xi01`` as tabulated."""
    return {name: ordinary_formula(text) for name, text in ORDINARY_TO_SURFACE.items()}


def smooth_specialization(formula: GradedPoly) -> GradedPoly:
    """Set ``eps0 = C = T = 0`` in an ordinary formula."""
    return formula.substitute({"eps0": 0, "C": 0, "T": 0}, params_table(("d",)))


def complete_intersection_chars(d1: Any = None, d2: Any = None) -> SurfaceChars:
    """Characters of a smooth complete intersection of degrees ``d1, d2`` in ``P^4``."""
    table = VarTable((PULLBACK_VAR,), (1,), COMPLETE_INTERSECTION_CHARS)
    h = GradedPoly.var(table, PULLBACK_VAR)
    normal = (1 + GradedPoly.var(table, "d1") * h) * (1 + GradedPoly.var(table, "d2") * h)
    tangent = ((1 + h) ** 5 * truncated_inverse(normal, 2)).truncate(2)
    c1, c2 = tangent.homogeneous_part(1), tangent.homogeneous_part(2)
    params = table.params_table()
    degree = GradedPoly.var(params, "d1") * GradedPoly.var(params, "d2")

    def integrate(x: GradedPoly) -> GradedPoly:
        return degree * x.coefficient_poly({PULLBACK_VAR: 2})

    chars = SurfaceChars(
        d=degree,
        xi1=integrate(c1 * h),
        xi2=integrate(c1 * c1),
        xi01=integrate(c2),
    )
    if d1 is None and d2 is None:
        return chars
    if d1 is None or d2 is None:
        msg = "Give both degrees d1 and d2 or neither"
        raise UsageError(msg)
    return chars.specialize({"d1": d1, "d2": d2})


def parse_characters(text: str, allowed: tuple[str, ...]) -> dict[str, int]:
    """Parse ``name=value`` pairs separated by commas."""
    values: dict[str, str] = {}
    for item in filter(None, (part.strip() for part in text.split(","))):
        name, sep, value = item.partition("=")
        if not sep or not name.strip():
            msg = f"Malformed character assignment {item!r}; expected name=value"
            raise MalformedCharactersError(msg)
        values[name.strip()] = value.strip()
    schema = vol.Schema({vol.Optional(name): vol.Coerce(int) for name in allowed})
    try:
        return schema(values)
    except vol.Invalid as err:
        msg = f"Invalid characters {text!r}: {err}"
        raise MalformedCharactersError(msg) from err


def _value(value: Any) -> GradedPoly | ExactScalar:
    return value if isinstance(value, GradedPoly) else exact(value)


def _evaluate(formula: GradedPoly, bindings: Mapping[str, Any]) -> GradedPoly | ExactScalar:
    result = formula.substitute({k: _value(v) for k, v in bindings.items() if k in formula.table})
    return result.constant_term() if not result.variables() else result


@dataclass(frozen=True)
class SurfaceChars:
    """Degree and pushforward characters of ``f: M -> P^n``."""

    d: Any
    xi1: Any
    xi2: Any
    xi01: Any

    names = SURFACE_CHARS

    def bindings(self) -> dict[str, Any]:
        """Values by character name."""
        return {"d": self.d, "xi1": self.xi1, "xi2": self.xi2, "xi01": self.xi01}

    def is_numeric(self) -> bool:
        """Return True when no value is symbolic."""
        return not any(isinstance(v, GradedPoly) for v in self.bindings().values())

    def evaluate(self, formula: GradedPoly) -> GradedPoly | ExactScalar:
        """Substitute the characters into a formula."""
        return _evaluate(formula, self.bindings())

    def specialize(self, values: Mapping[str, Any]) -> SurfaceChars:
        """Substitute into symbolic characters."""
        fields = {}
        for name, value in self.bindings().items():
            fields[name] = _evaluate(value, values) if isinstance(value, GradedPoly) else value
        return SurfaceChars(**fields)

    @classmethod
    def from_mapping(cls, values: Mapping[str, Any]) -> SurfaceChars:
        """Build from a complete mapping of numeric values."""
        missing = [name for name in SURFACE_CHARS if name not in values]
        if missing:
            msg = f"Missing characters {missing}"
            raise MalformedCharactersError(msg)
        return cls(**{name: exact(values[name]) for name in SURFACE_CHARS})

    def to_dict(self) -> dict[str, str]:
        """Return a dictionary representation."""
        return {k: _render(v) for k, v in self.bindings().items()}


@dataclass(frozen=True)
class OrdinaryChars:
    """Degree, double-curve degree, crosscaps and triple points."""

    d: Any
    eps0: Any
    C: Any
    T: Any

    names = ORDINARY_CHARS

    def bindings(self) -> dict[str, Any]:
        """Values by character name."""
        return {"d": self.d, "eps0": self.eps0, "C": self.C, "T": self.T}

    def evaluate(self, formula: GradedPoly) -> GradedPoly | ExactScalar:
        """Substitute the characters into a formula."""
        return _evaluate(formula, self.bindings())

    def to_surface_chars(self, conversion: Mapping[str, GradedPoly] | None = None) -> SurfaceChars:
        """Apply the ordinary-singularity conversion."""
        conversion = conversion or ordinary_conversion()
        return SurfaceChars(
            d=self.d,
            xi1=self.evaluate(conversion["xi1"]),
            xi2=self.evaluate(conversion["xi2"]),
            xi01=self.evaluate(conversion["xi01"]),
        )

    @classmethod
    def from_mapping(cls, values: Mapping[str, Any]) -> OrdinaryChars:
        """Build from a mapping; absent singular characters default to zero."""
        if "d" not in values:
            msg = "The degree d is required"
            raise MalformedCharactersError(msg)
        return cls(
            d=exact(values["d"]),
            eps0=exact(values.get("eps0", 0)),
            C=exact(values.get("C", 0)),
            T=exact(values.get("T", 0)),
        )

    def to_dict(self) -> dict[str, str]:
        """Return a dictionary representation."""
        return {k: _render(v) for k, v in self.bindings().items()}


def _render(value: Any) -> str:
    if isinstance(value, GradedPoly):
        return value.render()
    return GradedPoly.constant(params_table(()), value).render()


def zeuthen_segre(chars: SurfaceChars) -> GradedPoly | ExactScalar:
    """Zeuthen-Segre invariant ``xi01 - 4``."""
    return chars.xi01 - 4


def castelnuovo_enriques(chars: SurfaceChars) -> GradedPoly | ExactScalar:
    """Castelnuovo-Enriques invariant ``xi2 + 1``."""
    return chars.xi2 + 1
