"""Exact weighted-graded polynomial arithmetic.

Every polynomial in the package is a :class:`GradedPoly`: a sympy ``PolyElement``
over ``QQ`` paired with the :class:`VarTable` that names and weights its
generators. Graded variables (Chern classes, torus and hyperplane classes) carry
positive weights; formal characters such as ``d`` or ``xi1`` are weight-zero
parameters listed after them.
"""

from __future__ import annotations

import re
from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from functools import lru_cache
from math import lcm
from typing import Any

from sympy import Rational, Symbol
from sympy.core.sympify import SympifyError
from sympy.parsing.sympy_parser import (
    convert_xor,
    parse_expr,
    standard_transformations,
)
from sympy.polys.domains import QQ
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyElement, PolyRing

from .const import QUOTIENT_PREFIX, SOURCE_PREFIX, TARGET_PREFIX
from .exceptions import DomainError, UsageError

ExactScalar = QQ.dtype
Monomial = tuple[int, ...]

_TRANSFORMATIONS = (*standard_transformations, convert_xor)


def exact(value: Any) -> ExactScalar:
    """Convert an int, text such as ``"1/3"``, sympy Rational or QQ element to an exact scalar."""
    try:
        if isinstance(value, str):
            value = Rational(value)
        return QQ.convert(value)
    except Exception as err:
        msg = f"Cannot convert {value!r} to an exact rational"
        raise UsageError(msg) from err


def format_scalar(value: ExactScalar) -> str:
    """Render an exact scalar as ``p`` or ``p/q``."""
    numer, denom = QQ.numer(value), QQ.denom(value)
    return str(numer) if denom == 1 else f"{numer}/{denom}"


def is_integral(value: ExactScalar) -> bool:
    """Return True when the scalar has denominator 1."""
    return QQ.denom(value) == 1


@dataclass(frozen=True)
class VarTable:
    """Ordered graded variables followed by weight-zero parameters."""

    names: tuple[str, ...]
    weights: tuple[int, ...]
    params: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        """Validate names and weights."""
        if len(self.names) != len(self.weights):
            msg = f"{len(self.names)} names but {len(self.weights)} weights"
            raise UsageError(msg)
        symbols = self.symbols
        if len(set(symbols)) != len(symbols):
            msg = f"Duplicate variable names in {symbols}"
            raise UsageError(msg)
        if any(weight <= 0 for weight in self.weights):
            msg = f"Graded variables need positive weights, got {self.weights}"
            raise UsageError(msg)

    @property
    def symbols(self) -> tuple[str, ...]:
        """All generator names, graded first."""
        return self.names + self.params

    @property
    def full_weights(self) -> tuple[int, ...]:
        """Weights of every generator, zero for parameters."""
        return self.weights + (0,) * len(self.params)

    @property
    def ring(self) -> PolyRing:
        """The sympy polynomial ring over QQ for this table."""
        return _ring_for(self.symbols)

    def __contains__(self, name: object) -> bool:
        """Return True when ``name`` is a generator of the table."""
        return name in self.symbols

    def index(self, name: str) -> int:
        """Position of ``name`` among the generators."""
        try:
            return self.symbols.index(name)
        except ValueError as err:
            msg = f"Variable {name!r} is not in {self.symbols}"
            raise UsageError(msg) from err

    def weight(self, name: str) -> int:
        """Weight of a generator."""
        return self.full_weights[self.index(name)]

    def degree_of(self, monom: Monomial) -> int:
        """Weighted degree of an exponent vector."""
        return sum(e * w for e, w in zip(monom, self.full_weights, strict=True))

    def without(self, *names: str) -> VarTable:
        """Copy of the table with some generators removed."""
        kept = [(n, w) for n, w in zip(self.names, self.weights, strict=True) if n not in names]
        return VarTable(
            names=tuple(n for n, _ in kept),
            weights=tuple(w for _, w in kept),
            params=tuple(p for p in self.params if p not in names),
        )

    def params_table(self) -> VarTable:
        """Table holding only the parameters."""
        return VarTable((), (), self.params)


@lru_cache(maxsize=128)
def _ring_for(symbols: tuple[str, ...]) -> PolyRing:
    return PolyRing(list(symbols), QQ, grlex)


def chern_names(prefix: str, rank: int) -> list[tuple[str, int]]:
    """Names and weights ``prefix1..prefix<rank>`` of a total Chern class."""
    return [(f"{prefix}{i}", i) for i in range(1, rank + 1)]


def chern_table(
    source_dim: int,
    target_dim: int,
    *,
    quotient: int = 0,
    extra: Iterable[tuple[str, int]] = (),
    params: Iterable[str] = (),
) -> VarTable:
    """Table ``c1..cm, cp1..cpn`` optionally followed by quotient classes and extras."""
    pairs = (
        chern_names(SOURCE_PREFIX, source_dim)
        + chern_names(TARGET_PREFIX, target_dim)
        + chern_names(QUOTIENT_PREFIX, quotient)
        + list(extra)
    )
    return VarTable(
        names=tuple(n for n, _ in pairs),
        weights=tuple(w for _, w in pairs),
        params=tuple(params),
    )


def params_table(params: Iterable[str]) -> VarTable:
    """Table of weight-zero characters only."""
    return VarTable((), (), tuple(params))


def _term_key(table: VarTable, monom: Monomial) -> tuple[Any, ...]:
    graded = monom[: len(table.names)]
    params = monom[len(table.names) :]
    return (
        table.degree_of(monom),
        tuple(reversed(graded)),
        -sum(params),
        tuple(-e for e in params),
    )


_LATEX_RULES = (
    (re.compile(r"^cp(\d+)$"), r"c'_{\1}", True),
    (re.compile(r"^cb(\d+)$"), r"\\bar{c}_{\1}", True),
    (re.compile(r"^c(\d+)$"), r"c_{\1}", False),
    (re.compile(r"^xi(\d+)$"), r"\\xi_{\1}", False),
    (re.compile(r"^eps(\d+)$"), r"\\epsilon_{\1}", False),
    (re.compile(r"^([a-z])(\d+)$"), r"\1_{\2}", False),
)


def _latex_power(name: str, exponent: int) -> str:
    base, braced = name, False
    for pattern, replacement, needs_brace in _LATEX_RULES:
        if pattern.match(name):
            base, braced = pattern.sub(replacement, name), needs_brace
            break
    if exponent == 1:
        return base
    if braced:
        return f"{{{base}}}^{{{exponent}}}"
    return f"{base}^{{{exponent}}}"


class GradedPoly:
    """Immutable polynomial over QQ with a weighted variable table."""

    __slots__ = ("poly", "table")

    def __init__(self, table: VarTable, poly: PolyElement | None = None) -> None:
        """Wrap a sympy ring element, or zero when ``poly`` is None."""
        ring = table.ring
        if poly is None:
            poly = ring.zero
        elif poly.ring != ring:
            msg = f"Ring element over {poly.ring.symbols} does not match {table.symbols}"
            raise UsageError(msg)
        self.table = table
        self.poly = poly

    # Construction

    @classmethod
    def zero(cls, table: VarTable) -> GradedPoly:
        """The zero polynomial."""
        return cls(table)

    @classmethod
    def constant(cls, table: VarTable, value: Any) -> GradedPoly:
        """A constant polynomial."""
        return cls(table, table.ring.ground_new(exact(value)))

    @classmethod
    def one(cls, table: VarTable) -> GradedPoly:
        """The unit polynomial."""
        return cls.constant(table, 1)

    @classmethod
    def var(cls, table: VarTable, name: str) -> GradedPoly:
        """The generator called ``name``."""
        return cls(table, table.ring.gens[table.index(name)])

    @classmethod
    def monomial(cls, table: VarTable, monom: Monomial, coeff: Any = 1) -> GradedPoly:
        """A single term ``coeff * x^monom``."""
        return cls.from_terms(table, {tuple(monom): coeff})

    @classmethod
    def from_terms(cls, table: VarTable, terms: Mapping[Monomial, Any]) -> GradedPoly:
        """Build from an exponent-vector to coefficient mapping."""
        width = len(table.symbols)
        for monom in terms:
            if len(monom) != width:
                msg = f"Exponent vector {monom} does not fit {table.symbols}"
                raise UsageError(msg)
        return cls(table, table.ring.from_dict({m: exact(c) for m, c in terms.items()}))

    @classmethod
    def parse(cls, table: VarTable, text: str) -> GradedPoly:
        """Parse the canonical text rendering (``^`` or ``**`` for powers)."""
        local = {name: Symbol(name) for name in table.symbols}
        try:
            expr = parse_expr(text, local_dict=local, transformations=_TRANSFORMATIONS)
            poly = table.ring.from_expr(expr)
        except (SyntaxError, TypeError, ValueError, SympifyError) as err:
            msg = f"Cannot parse {text!r} over {table.symbols}: {err}"
            raise UsageError(msg) from err
        return cls(table, poly)

    # Inspection

    def terms(self) -> list[tuple[Monomial, ExactScalar]]:
        """Terms in canonical order."""
        return sorted(self.poly.items(), key=lambda item: _term_key(self.table, item[0]))

    def variables(self) -> set[str]:
        """Names of generators occurring with a positive exponent."""
        used: set[str] = set()
        for monom in self.poly:
            used.update(name for name, e in zip(self.table.symbols, monom, strict=True) if e)
        return used

    def is_zero(self) -> bool:
        """Return True for the zero polynomial."""
        return not self.poly

    def weighted_degree(self) -> int:
        """Largest weighted degree of a term, -1 for zero."""
        return max((self.table.degree_of(m) for m in self.poly), default=-1)

    def is_homogeneous(self, degree: int | None = None) -> bool:
        """Return True when all terms share one weighted degree."""
        degrees = {self.table.degree_of(m) for m in self.poly}
        if degree is None:
            return len(degrees) <= 1
        return degrees <= {degree}

    def homogeneous_part(self, degree: int) -> GradedPoly:
        """Terms of weighted degree exactly ``degree``."""
        return self.select(lambda m: self.table.degree_of(m) == degree)

    def truncate(self, max_degree: int) -> GradedPoly:
        """Drop terms of weighted degree above ``max_degree``."""
        return self.select(lambda m: self.table.degree_of(m) <= max_degree)

    def coefficient_of(self, monomial: Monomial | Mapping[str, int]) -> ExactScalar:
        """Exact coefficient of a monomial, zero when absent."""
        return self.poly.get(self._monom(monomial), QQ.zero)

    def coefficient_poly(self, monomial: Mapping[str, int]) -> GradedPoly:
        """Parameter polynomial multiplying a graded monomial."""
        graded = self._monom(monomial)[: len(self.table.names)]
        target = self.table.params_table()
        width = len(self.table.names)
        terms = {m[width:]: c for m, c in self.poly.items() if m[:width] == graded}
        return GradedPoly.from_terms(target, terms)

    def constant_term(self) -> ExactScalar:
        """Coefficient of the empty monomial."""
        return self.poly.get(self.table.ring.zero_monom, QQ.zero)

    def is_integral(self) -> bool:
        """Return True when every coefficient is an integer."""
        return all(is_integral(c) for c in self.poly.values())

    def content_denominator(self) -> int:
        """Least common denominator of the coefficients."""
        denominator = 1
        for coeff in self.poly.values():
            denominator = lcm(denominator, int(QQ.denom(coeff)))
        return denominator

    # Arithmetic

    def _coerce(self, other: Any) -> PolyElement:
        if isinstance(other, GradedPoly):
            if other.table != self.table:
                msg = f"Variable tables differ: {self.table.symbols} vs {other.table.symbols}"
                raise UsageError(msg)
            return other.poly
        return self.table.ring.ground_new(exact(other))

    def __add__(self, other: Any) -> GradedPoly:
        return GradedPoly(self.table, self.poly + self._coerce(other))

    __radd__ = __add__

    def __sub__(self, other: Any) -> GradedPoly:
        return GradedPoly(self.table, self.poly - self._coerce(other))

    def __rsub__(self, other: Any) -> GradedPoly:
        return GradedPoly(self.table, self._coerce(other) - self.poly)

    def __neg__(self) -> GradedPoly:
        return GradedPoly(self.table, -self.poly)

    def __mul__(self, other: Any) -> GradedPoly:
        return GradedPoly(self.table, self.poly * self._coerce(other))

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> GradedPoly:
        if exponent < 0:
            msg = f"Negative power {exponent}; use truncated_inverse"
            raise DomainError(msg)
        return GradedPoly(self.table, self.poly**exponent)

    def scale(self, factor: Any) -> GradedPoly:
        """Multiply every coefficient by an exact scalar."""
        return GradedPoly(self.table, self.poly * exact(factor))

    def __eq__(self, other: object) -> bool:
        if isinstance(other, GradedPoly):
            return self.table == other.table and dict(self.poly) == dict(other.poly)
        if isinstance(other, int):
            return dict(self.poly) == dict(self.table.ring.ground_new(QQ(other)))
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.table, frozenset(self.poly.items())))

    def __bool__(self) -> bool:
        return bool(self.poly)

    # Change of variables

    def substitute(
        self,
        bindings: Mapping[str, Any],
        target: VarTable | None = None,
        *,
        max_degree: int | None = None,
    ) -> GradedPoly:
        """Compose with a map sending each generator to a polynomial."""
        return substitute(self, bindings, target, max_degree=max_degree)

    def retable(self, table: VarTable) -> GradedPoly:
        """Re-express over another table containing every used variable."""
        positions = []
        for name in self.table.symbols:
            positions.append(table.symbols.index(name) if name in table else None)
        terms: dict[Monomial, ExactScalar] = {}
        width = len(table.symbols)
        for monom, coeff in self.poly.items():
            target = [0] * width
            for source_index, exponent in enumerate(monom):
                if not exponent:
                    continue
                position = positions[source_index]
                if position is None:
                    name = self.table.symbols[source_index]
                    msg = f"Variable {name!r} is missing from {table.symbols}"
                    raise UsageError(msg)
                target[position] = exponent
            terms[tuple(target)] = coeff
        return GradedPoly.from_terms(table, terms)

    # Rendering

    def render(self) -> str:
        """Canonical text: ``-3*c1^3 + 4*c1*c2``."""
        return self._render(self._text_monomial, "*")

    def latex(self) -> str:
        """LaTeX rendering with ``c_i``, ``c'_j`` and ``\\bar{c}_k``."""
        return self._render(self._latex_monomial, " ")

    def to_expr(self) -> Any:
        """The sympy expression of the polynomial."""
        return self.poly.as_expr()

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"GradedPoly({self.render()!r})"

    # Helpers

    def select(self, keep: Any) -> GradedPoly:
        """Keep the terms whose exponent vector satisfies ``keep``."""
        return GradedPoly.from_terms(self.table, {m: c for m, c in self.poly.items() if keep(m)})

    def _monom(self, monomial: Monomial | Mapping[str, int]) -> Monomial:
        if isinstance(monomial, Mapping):
            vector = [0] * len(self.table.symbols)
            for name, exponent in monomial.items():
                vector[self.table.index(name)] = exponent
            return tuple(vector)
        if len(monomial) != len(self.table.symbols):
            msg = f"Exponent vector {monomial} does not fit {self.table.symbols}"
            raise UsageError(msg)
        return tuple(monomial)

    def _text_monomial(self, monom: Monomial) -> str:
        factors = []
        for name, exponent in zip(self.table.symbols, monom, strict=True):
            if exponent == 1:
                factors.append(name)
            elif exponent > 1:
                factors.append(f"{name}^{exponent}")
        return "*".join(factors)

    def _latex_monomial(self, monom: Monomial) -> str:
        return " ".join(
            _latex_power(name, exponent)
            for name, exponent in zip(self.table.symbols, monom, strict=True)
            if exponent
        )

    def _render(self, monomial_text: Any, joiner: str) -> str:
        if not self.poly:
            return "0"
        pieces: list[str] = []
        for monom, coeff in self.terms():
            negative = coeff < 0
            magnitude = -coeff if negative else coeff
            body = monomial_text(monom)
            if not body:
                text = format_scalar(magnitude)
            elif magnitude == 1:
                text = body
            else:
                scalar = format_scalar(magnitude)
                if joiner == " " and "/" in scalar:
                    numer, denom = scalar.split("/")
                    scalar = f"\\frac{{{numer}}}{{{denom}}}"
                text = f"{scalar}{joiner}{body}"
            if not pieces:
                pieces.append(f"-{text}" if negative else text)
            else:
                pieces.append(f"- {text}" if negative else f"+ {text}")
        return " ".join(pieces)


def add(p: GradedPoly, q: GradedPoly | Any) -> GradedPoly:
    """Exact sum; tables must match."""
    return p + q


def mul(p: GradedPoly, q: GradedPoly | Any) -> GradedPoly:
    """Exact product; tables must match."""
    return p * q


def scale(p: GradedPoly, factor: Any) -> GradedPoly:
    """Exact scalar multiple."""
    return p.scale(factor)


def coefficient_of(p: GradedPoly, monomial: Monomial | Mapping[str, int]) -> ExactScalar:
    """Exact coefficient of ``monomial`` in ``p``."""
    return p.coefficient_of(monomial)


def truncated_inverse(p: GradedPoly, max_degree: int) -> GradedPoly:
    """Inverse of a unit series modulo weighted degree above ``max_degree``."""
    degree_zero = p.homogeneous_part(0)
    if degree_zero != GradedPoly.one(p.table):
        msg = f"Series {p.render()} does not have constant term 1"
        raise DomainError(msg)
    tail = GradedPoly.one(p.table) - p
    result = GradedPoly.one(p.table)
    power = GradedPoly.one(p.table)
    for _ in range(max_degree):
        power = (power * tail).truncate(max_degree)
        if power.is_zero():
            break
        result = result + power
    return result


def substitute(
    p: GradedPoly,
    bindings: Mapping[str, Any],
    target: VarTable | None = None,
    *,
    max_degree: int | None = None,
) -> GradedPoly:
    """Compose ``p`` with ``bindings``; unbound variables map to themselves in ``target``."""
    if target is None:
        tables = {v.table for v in bindings.values() if isinstance(v, GradedPoly)}
        if len(tables) > 1:
            msg = "Binding values use different variable tables"
            raise UsageError(msg)
        target = tables.pop() if tables else p.table
    ring = target.ring
    images: list[PolyElement | None] = []
    for name in p.table.symbols:
        if name in bindings:
            value = bindings[name]
            if isinstance(value, GradedPoly):
                if value.table != target:
                    msg = f"Binding for {name!r} is not over {target.symbols}"
                    raise UsageError(msg)
                images.append(value.poly)
            else:
                images.append(ring.ground_new(exact(value)))
        elif name in target:
            images.append(ring.gens[target.index(name)])
        else:
            images.append(None)

    powers: dict[tuple[int, int], PolyElement] = {}
    result = ring.zero
    for monom, coeff in p.poly.items():
        term = ring.ground_new(coeff)
        for index, exponent in enumerate(monom):
            if not exponent:
                continue
            image = images[index]
            if image is None:
                msg = f"Variable {p.table.symbols[index]!r} is not bound"
                raise UsageError(msg)
            key = (index, exponent)
            if key not in powers:
                powers[key] = image**exponent
            term = term * powers[key]
        result += term
    value = GradedPoly(target, result)
    return value.truncate(max_degree) if max_degree is not None else value


def monomial_basis(
    table: VarTable,
    degree: int,
    variables: Iterable[str] | None = None,
) -> list[Monomial]:
    """Exponent vectors of weighted degree ``degree`` in ansatz order.

    Vectors are full-width over ``table.symbols``; only ``variables`` (default:
    every graded variable) may carry positive exponents. Monomials are grouped
    by the set of target classes ``cp*`` they contain: monomials free of target
    classes come first and a group whose highest target class has a larger
    index comes later. Inside a group the order is lexicographically descending
    in the remaining variables, so ``c1^3, c1*c2, c1^2*cp1, c1*cp1^2, c2*cp1,
    cp1^3, c1*cp2, cp1*cp2, cp3`` for ``(2, 3)`` in degree 3.
    """
    if degree < 0:
        msg = f"Degree must be non-negative, got {degree}"
        raise UsageError(msg)
    chosen = list(table.names if variables is None else variables)
    indices = [table.index(name) for name in chosen]
    weights = [table.full_weights[i] for i in indices]
    if any(w == 0 for w in weights):
        msg = "Parameters cannot appear in a monomial basis"
        raise UsageError(msg)

    found: list[Monomial] = []

    def extend(position: int, remaining: int, exponents: list[int]) -> None:
        if position == len(indices):
            if remaining == 0:
                vector = [0] * len(table.symbols)
                for index, exponent in zip(indices, exponents, strict=True):
                    vector[index] = exponent
                found.append(tuple(vector))
            return
        for exponent in range(remaining // weights[position] + 1):
            extend(position + 1, remaining - exponent * weights[position], [*exponents, exponent])

    extend(0, degree, [])
    targets = [i for i, name in enumerate(table.names) if name.startswith(TARGET_PREFIX)]
    others = [i for i in range(len(table.names)) if i not in targets]

    def ansatz_order(m: Monomial) -> tuple[tuple[int, ...], ...]:
        support = tuple(int(m[i] > 0) for i in reversed(targets))
        return support, tuple(-m[i] for i in others), tuple(reversed(m))

    return sorted(found, key=ansatz_order)
