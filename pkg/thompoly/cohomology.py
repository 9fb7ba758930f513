"""Quotient cohomology rings, Chern class calculus and Gysin pushforward."""

from __future__ import annotations

import logging
from collections.abc import Iterable
from dataclasses import dataclass
from math import comb

from .const import (
    FIBER_VAR,
    HYPERPLANE_VAR,
    QUOTIENT_PREFIX,
    SOURCE_PREFIX,
    SUPPORTED_AMBIENT_DIMS,
    TARGET_PREFIX,
)
from .exceptions import UsageError
from .polycore import ExactScalar, GradedPoly, VarTable, truncated_inverse

_LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True)
class QuotientRing:
    """Polynomial ring modulo a base-degree bound and a monic fiber relation.

    The relation is ``t^rho + b t^(rho-1) + ... + b^rho`` where ``b`` is the
    base class; it presents the cohomology of the projectivized quotient bundle
    of the Euler sequence. Terms whose degree outside the fiber variable exceeds
    ``base_dim`` vanish.
    """

    table: VarTable
    fiber: str = FIBER_VAR
    base: str = HYPERPLANE_VAR
    relation_degree: int = 3
    base_dim: int = 3

    def __post_init__(self) -> None:
        """Check that the fiber and base variables exist."""
        for name in (self.fiber, self.base):
            if name not in self.table.names:
                msg = f"{name!r} is not a graded variable of {self.table.symbols}"
                raise UsageError(msg)
        if self.relation_degree < 1:
            msg = f"Relation degree must be positive, got {self.relation_degree}"
            raise UsageError(msg)

    @property
    def fiber_dim(self) -> int:
        """Dimension of the projective fiber."""
        return self.relation_degree - 1

    @property
    def base_table(self) -> VarTable:
        """The table with the fiber variable removed."""
        return self.table.without(self.fiber)

    def element(self, text: str) -> GradedPoly:
        """Parse an element of the ring."""
        return GradedPoly.parse(self.table, text)

    def var(self, name: str) -> GradedPoly:
        """A generator of the ring."""
        return GradedPoly.var(self.table, name)

    def relation(self) -> GradedPoly:
        """The monic fiber relation."""
        base = self.var(self.base)
        fiber = self.var(self.fiber)
        return sum(
            (base**i * fiber ** (self.relation_degree - i) for i in range(self.relation_degree + 1)),
            GradedPoly.zero(self.table),
        )

    def base_degree(self, monom: tuple[int, ...]) -> int:
        """Weighted degree of a monomial ignoring the fiber variable."""
        fiber_index = self.table.index(self.fiber)
        return self.table.degree_of(monom) - monom[fiber_index] * self.table.full_weights[fiber_index]

    def truncate(self, x: GradedPoly) -> GradedPoly:
        """Drop terms above the base dimension."""
        return x.select(lambda m: self.base_degree(m) <= self.base_dim)

    def reduce(self, x: GradedPoly) -> GradedPoly:
        """Normal form with fiber degree below the relation degree."""
        if x.table != self.table:
            x = x.retable(self.table)
        fiber_index = self.table.index(self.fiber)
        rho = self.relation_degree
        tail = GradedPoly.var(self.table, self.fiber) ** rho - self.relation()
        current = self.truncate(x)
        while True:
            high = {m: c for m, c in current.poly.items() if m[fiber_index] >= rho}
            if not high:
                return current
            lowered = {}
            for monom, coeff in high.items():
                exponents = list(monom)
                exponents[fiber_index] -= rho
                lowered[tuple(exponents)] = coeff
            low = current - GradedPoly.from_terms(self.table, high)
            current = self.truncate(low + GradedPoly.from_terms(self.table, lowered) * tail)

    def gysin(self, x: GradedPoly) -> GradedPoly:
        """Integrate over the fiber: keep the top fiber power coefficient."""
        reduced = self.reduce(x)
        fiber_index = self.table.index(self.fiber)
        top = self.fiber_dim
        terms = {}
        for monom, coeff in reduced.poly.items():
            if monom[fiber_index] == top:
                terms[monom[:fiber_index] + monom[fiber_index + 1 :]] = coeff
        return GradedPoly.from_terms(self.base_table, terms)


def flag_ring(
    n: int,
    *,
    base: str = HYPERPLANE_VAR,
    base_dim: int | None = None,
    leading: Iterable[tuple[str, int]] = (),
    params: Iterable[str] = (),
) -> QuotientRing:
    """Cohomology ring of the point-line flag manifold over an n-dimensional base.

    ``leading`` lists extra graded classes of the base (for instance ``c1, c2``
    of a surface) placed before the base and fiber variables.
    """
    pairs = [*leading, (base, 1), (FIBER_VAR, 1)]
    table = VarTable(
        names=tuple(name for name, _ in pairs),
        weights=tuple(weight for _, weight in pairs),
        params=tuple(params),
    )
    return QuotientRing(
        table=table,
        fiber=FIBER_VAR,
        base=base,
        relation_degree=n,
        base_dim=n if base_dim is None else base_dim,
    )


def reduce(x: GradedPoly, ring: QuotientRing) -> GradedPoly:
    """Normal form of ``x`` in ``ring``."""
    return ring.reduce(x)


def gysin_pushforward(x: GradedPoly, ring: QuotientRing) -> GradedPoly:
    """Pushforward along the projectivized bundle."""
    return ring.gysin(x)


def integrate_pn(x: GradedPoly, n: int, var: str = HYPERPLANE_VAR) -> ExactScalar:
    """Degree of a class on projective n-space: the coefficient of ``var^n``."""
    if x.table.params and any(name in x.table.params for name in x.variables()):
        msg = f"{x.render()} depends on characters; use the coefficient polynomial"
        raise UsageError(msg)
    return x.coefficient_of({var: n})


@dataclass(frozen=True)
class ChernVector:
    """Chern classes ``c_1..c_rank`` of a bundle."""

    classes: tuple[GradedPoly, ...]
    ring: QuotientRing | None = None

    @property
    def rank(self) -> int:
        """Rank of the bundle."""
        return len(self.classes)

    @property
    def table(self) -> VarTable:
        """Variable table of the classes."""
        if self.ring is not None:
            return self.ring.table
        if not self.classes:
            msg = "Rank-zero Chern vector without a ring has no table"
            raise UsageError(msg)
        return self.classes[0].table

    def __getitem__(self, k: int) -> GradedPoly:
        """The k-th Chern class, 1 for k = 0 and 0 above the rank."""
        if k == 0:
            return GradedPoly.one(self.table)
        if k > self.rank:
            return GradedPoly.zero(self.table)
        return self.classes[k - 1]

    def total(self) -> GradedPoly:
        """Total Chern class."""
        return sum(self.classes, GradedPoly.one(self.table))

    def reduced(self) -> ChernVector:
        """Classes in ring normal form."""
        if self.ring is None:
            return self
        return ChernVector(tuple(self.ring.reduce(c) for c in self.classes), self.ring)

    @classmethod
    def from_total(
        cls, total: GradedPoly, rank: int, ring: QuotientRing | None = None
    ) -> ChernVector:
        """Split a total class into homogeneous parts of degree 1..rank."""
        vector = cls(tuple(total.homogeneous_part(k) for k in range(1, rank + 1)), ring)
        return vector.reduced()

    def to_dict(self) -> dict[str, str]:
        """Return a dictionary representation."""
        return {f"c{k}": c.render() for k, c in enumerate(self.classes, start=1)}


def generic_total(table: VarTable, prefix: str) -> GradedPoly:
    """``1 + prefix1 + prefix2 + ...`` over the classes present in ``table``."""
    total = GradedPoly.one(table)
    k = 1
    while f"{prefix}{k}" in table:
        total = total + GradedPoly.var(table, f"{prefix}{k}")
        k += 1
    return total


def quotient_chern(
    c: ChernVector, c_target: ChernVector, max_degree: int
) -> list[GradedPoly]:
    """Quotient classes: degree 1..max_degree parts of c(target) / c(source)."""
    table = c.table
    if c_target.table != table:
        msg = "Source and target Chern vectors use different variables"
        raise UsageError(msg)
    series = (c_target.total() * truncated_inverse(c.total(), max_degree)).truncate(max_degree)
    parts = [series.homogeneous_part(k) for k in range(1, max_degree + 1)]
    if c.ring is not None:
        parts = [c.ring.reduce(p) for p in parts]
    return parts


def quotient_bindings(table: VarTable, max_degree: int) -> dict[str, GradedPoly]:
    """Expansions of ``cb1..cb<max_degree>`` in the source and target classes."""
    if max_degree < 1:
        return {}
    source = ChernVector.from_total(generic_total(table, SOURCE_PREFIX), max_degree)
    target = ChernVector.from_total(generic_total(table, TARGET_PREFIX), max_degree)
    parts = quotient_chern(source, target, max_degree)
    return {f"{QUOTIENT_PREFIX}{k}": p for k, p in enumerate(parts, start=1)}


def expand_quotient_form(tp_in_cbar: GradedPoly, table: VarTable) -> GradedPoly:
    """Rewrite a polynomial in quotient classes over the source/target table."""
    degree = max(tp_in_cbar.weighted_degree(), 0)
    bindings = quotient_bindings(table, degree)
    used = {
        name: value for name, value in bindings.items() if name in tp_in_cbar.table.symbols
    }
    return tp_in_cbar.substitute(used, table)


def twist_chern(ell: GradedPoly, bundle: ChernVector) -> ChernVector:
    """Chern classes of ``L ⊗ W`` for a line bundle with first Chern class ``ell``."""
    if not ell.is_homogeneous(1):
        msg = f"Line class {ell.render()} is not of degree 1"
        raise UsageError(msg)
    rank = bundle.rank
    classes = []
    for k in range(1, rank + 1):
        term = GradedPoly.zero(bundle.table)
        for i in range(k + 1):
            term = term + bundle[i] * ell ** (k - i) * comb(rank - i, k - i)
        classes.append(term)
    return ChernVector(tuple(classes), bundle.ring).reduced()


def flag_target_chern(n: int, ring: QuotientRing | None = None) -> ChernVector:
    """Chern classes of ``γ* ⊗ V`` on the flag manifold of projective n-space.

    ``S`` is the rank-2 tautological bundle with ``c(S) = (1 - b)(1 - t)``;
    ``V`` is the quotient of the trivial bundle by ``S`` and has rank ``n - 1``.
    """
    if n not in SUPPORTED_AMBIENT_DIMS:
        msg = f"Flag target classes are available for n in {SUPPORTED_AMBIENT_DIMS}, got {n}"
        raise UsageError(msg)
    if ring is None:
        ring = flag_ring(n)
    if ring.relation_degree != n:
        msg = f"Ring relation degree {ring.relation_degree} does not match n = {n}"
        raise UsageError(msg)
    base = ring.var(ring.base)
    fiber = ring.var(ring.fiber)
    tautological = (1 - base) * (1 - fiber)
    quotient = ChernVector.from_total(truncated_inverse(tautological, n - 1), n - 1, ring)
    result = twist_chern(base, quotient)
    _LOGGER.debug("Flag target classes for n=%s: %s", n, result.to_dict())
    return result
