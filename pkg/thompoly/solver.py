"""Restriction method: interpolate a Thom polynomial from torus fixed points.

The unknown polynomial is an integer combination of the degree-``codim``
monomials in the source and target Chern classes. Restricting it to the
torus-fixed normal form of each singularity type gives linear equations: the
restriction to the target type equals the Euler class of its normal slice
(principal rows) and the restriction to every other type of codimension at most
``codim`` vanishes (homogeneous rows).
"""

from __future__ import annotations

import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from functools import reduce

from sympy.polys.domains import QQ

from .cohomology import expand_quotient_form
from .const import QUOTIENT_PREFIX, SOURCE_PREFIX, TARGET_PREFIX, TORUS_PREFIX
from .exceptions import (
    IntegralityError,
    ModulusDirectionError,
    SolverError,
    UnderdeterminedSystemError,
    UsageError,
)
from .linear import (
    KIND_HOMOGENEOUS,
    KIND_PRINCIPAL,
    EquationRow,
    residuals,
    solve_exact,
    verify_solution,
)
from .models import ConsistencyReport, SolveReport
from .polycore import (
    ExactScalar,
    GradedPoly,
    Monomial,
    VarTable,
    chern_table,
    format_scalar,
    monomial_basis,
)
from .registry import Registry, SingularityType, default_registry

_LOGGER = logging.getLogger(__name__)

Bindings = dict[str, GradedPoly]


def torus_table(rank: int) -> VarTable:
    """Torus classes ``a`` (rank one) or ``a1..ar``."""
    if rank < 1:
        msg = f"Torus rank must be positive, got {rank}"
        raise UsageError(msg)
    names = (TORUS_PREFIX,) if rank == 1 else tuple(f"{TORUS_PREFIX}{i}" for i in range(1, rank + 1))
    return VarTable(names, (1,) * rank)


def linear_form(table: VarTable, weight: Sequence[int]) -> GradedPoly:
    """``<w, a>`` for a weight vector."""
    return sum(
        (GradedPoly.var(table, name) * w for name, w in zip(table.names, weight, strict=True)),
        GradedPoly.zero(table),
    )


def _chern_classes(
    table: VarTable, weights: Sequence[Sequence[int]], prefix: str, rank: int, max_degree: int
) -> Bindings:
    total = GradedPoly.one(table)
    for weight in weights:
        total = (total * (1 + linear_form(table, weight))).truncate(max_degree)
    return {f"{prefix}{i}": total.homogeneous_part(i) for i in range(1, rank + 1)}


def torus_substitution(t: SingularityType, codim: int) -> tuple[Bindings, Bindings]:
    """Source and target Chern classes of the normal form as torus characters."""
    table = torus_table(t.torus_rank)
    source = _chern_classes(table, t.source_weights, SOURCE_PREFIX, t.source_dim, codim)
    target = _chern_classes(table, t.target_weights, TARGET_PREFIX, t.target_dim, codim)
    return source, target


def euler_class(t: SingularityType) -> GradedPoly:
    """Product of the normal weights."""
    table = torus_table(t.torus_rank)
    return reduce(
        lambda acc, weight: acc * linear_form(table, weight),
        t.normal_weights,
        GradedPoly.one(table),
    )


def restrict(tp: GradedPoly, t: SingularityType) -> GradedPoly:
    """Restriction of a polynomial in ``c, cp`` to the fixed point of ``t``."""
    degree = max(tp.weighted_degree(), 0)
    source, target = torus_substitution(t, degree)
    return tp.substitute({**source, **target}, torus_table(t.torus_rank))


@dataclass(frozen=True)
class Ansatz:
    """Unknown integer combination ``x_1 m_1 + ... + x_N m_N``."""

    target: SingularityType
    table: VarTable
    basis: tuple[Monomial, ...]

    @classmethod
    def for_type(
        cls, target: SingularityType, basis: Iterable[Monomial] | None = None
    ) -> Ansatz:
        """The default ansatz for ``target``, or one with an explicit basis order."""
        table = chern_table(target.source_dim, target.target_dim)
        if basis is None:
            chosen = tuple(monomial_basis(table, target.codim))
        else:
            chosen = tuple(tuple(m) for m in basis)
            expected = set(monomial_basis(table, target.codim))
            if set(chosen) != expected or len(chosen) != len(expected):
                msg = f"Basis does not list the degree-{target.codim} monomials exactly once"
                raise UsageError(msg)
        return cls(target, table, chosen)

    @classmethod
    def from_monomials(cls, target: SingularityType, monomials: Iterable[str]) -> Ansatz:
        """Ansatz with a basis given as monomial text such as ``c1^2*cp1``."""
        table = chern_table(target.source_dim, target.target_dim)
        basis = []
        for text in monomials:
            terms = GradedPoly.parse(table, text).terms()
            if len(terms) != 1:
                msg = f"{text!r} is not a single monomial"
                raise UsageError(msg)
            basis.append(terms[0][0])
        return cls.for_type(target, basis)

    @property
    def size(self) -> int:
        """Number of unknowns."""
        return len(self.basis)

    def monomials(self) -> list[GradedPoly]:
        """Basis monomials as polynomials."""
        return [GradedPoly.monomial(self.table, m) for m in self.basis]

    def basis_text(self) -> list[str]:
        """Basis monomials rendered as text."""
        return [p.render() for p in self.monomials()]

    def combine(self, solution: Sequence[ExactScalar]) -> GradedPoly:
        """The polynomial ``sum x_i m_i``."""
        return GradedPoly.from_terms(
            self.table, {m: x for m, x in zip(self.basis, solution, strict=True) if x}
        )


def _restricted_basis(ansatz: Ansatz, t: SingularityType) -> tuple[VarTable, list[GradedPoly]]:
    source, target = torus_substitution(t, ansatz.target.codim)
    table = torus_table(t.torus_rank)
    bindings = {**source, **target}
    return table, [m.substitute(bindings, table) for m in ansatz.monomials()]


def _rows(
    ansatz: Ansatz,
    t: SingularityType,
    rhs_poly: GradedPoly | None,
    kind: str,
) -> list[EquationRow]:
    table, images = _restricted_basis(ansatz, t)
    rows: dict[tuple[tuple[ExactScalar, ...], ExactScalar], list[str]] = {}
    for monom in monomial_basis(table, ansatz.target.codim):
        coefficients = tuple(image.coefficient_of(monom) for image in images)
        rhs = rhs_poly.coefficient_of(monom) if rhs_poly is not None else QQ.zero
        if not rhs and not any(coefficients):
            continue
        tag = f"{t.name}@{GradedPoly.monomial(table, monom).render()}"
        rows.setdefault((coefficients, rhs), []).append(tag)
    return [
        EquationRow(coefficients, rhs, tuple(tags), kind)
        for (coefficients, rhs), tags in rows.items()
    ]


def principal_equation(ansatz: Ansatz, target: SingularityType | None = None) -> list[EquationRow]:
    """Rows equating the restriction to ``target`` with its Euler class."""
    target = target or ansatz.target
    if target.has_modulus:
        msg = (
            f"{target.label} has a modulus direction (zero normal weight);"
            " its Euler class vanishes and no principal equation exists"
        )
        raise ModulusDirectionError(msg)
    rows = _rows(ansatz, target, euler_class(target), KIND_PRINCIPAL)
    _LOGGER.debug("Principal equation for %s: %s rows", target.label, len(rows))
    return rows


def homogeneous_equations(ansatz: Ansatz, lower: SingularityType) -> list[EquationRow]:
    """Rows stating that the restriction to ``lower`` vanishes."""
    target = ansatz.target
    if lower.pair != target.pair:
        msg = f"{lower.label} and {target.label} have different dimension pairs"
        raise UsageError(msg)
    if lower.name == target.name:
        msg = f"{target.label} cannot constrain itself"
        raise UsageError(msg)
    if lower.codim > target.codim:
        msg = f"{lower.label} has codimension {lower.codim} above {target.codim}"
        raise UsageError(msg)
    rows = _rows(ansatz, lower, None, KIND_HOMOGENEOUS)
    _LOGGER.debug("Homogeneous equations from %s: %s rows", lower.label, len(rows))
    return rows


def default_constraints(target: SingularityType, registry: Registry | None = None) -> list[SingularityType]:
    """Types of the same pair with codimension at most the target's, target excluded."""
    registry = registry or default_registry()
    return [
        t
        for t in registry.types_for(target.pair)
        if t.name != target.name and t.codim <= target.codim and t.has_weights
    ]


def lower_types(
    pair: tuple[int, int], codim: int, registry: Registry | None = None
) -> list[SingularityType]:
    """Types of a pair with codimension strictly below ``codim``."""
    registry = registry or default_registry()
    return [t for t in registry.types_for(pair) if t.codim < codim and t.has_weights]


def _check_solvable(target: SingularityType) -> None:
    if target.has_modulus:
        msg = (
            f"{target.label} has a modulus direction (zero normal weight);"
            " only consistency checks of its closed form are available"
        )
        raise ModulusDirectionError(msg)
    if not target.solvable:
        msg = f"{target.label} is stored as a closed form only; use a consistency check"
        raise SolverError(msg)
    if not target.has_weights:
        msg = f"{target.label} has no torus weight data"
        raise SolverError(msg)


def build_system(
    target: SingularityType,
    constraint_set: Iterable[SingularityType],
    ansatz: Ansatz | None = None,
) -> tuple[Ansatz, list[EquationRow]]:
    """Principal rows followed by the homogeneous rows of each constraint type."""
    _check_solvable(target)
    ansatz = ansatz or Ansatz.for_type(target)
    rows = principal_equation(ansatz, target)
    for lower in constraint_set:
        rows.extend(homogeneous_equations(ansatz, lower))
    return ansatz, rows


def solve_tp(
    target: SingularityType,
    constraint_set: Iterable[SingularityType] | None = None,
    *,
    registry: Registry | None = None,
    ansatz: Ansatz | None = None,
) -> tuple[GradedPoly, SolveReport]:
    """Solve the restriction system for ``target`` exactly."""
    registry = registry or default_registry()
    constraints = (
        default_constraints(target, registry) if constraint_set is None else list(constraint_set)
    )
    ansatz, rows = build_system(target, constraints, ansatz)
    _LOGGER.info(
        "Solving %s: %s equations in %s unknowns from %s constraint types",
        target.label,
        len(rows),
        ansatz.size,
        len(constraints),
    )

    try:
        elimination = solve_exact(rows, ansatz.size)
    except UnderdeterminedSystemError as err:
        used = {t.name for t in constraints}
        missing = [
            t.name for t in default_constraints(target, registry) if t.name not in used
        ]
        hint = f"; try adding constraint types {missing}" if missing else ""
        msg = f"{target.label}: {err}{hint}"
        raise UnderdeterminedSystemError(msg, kernel_dim=err.kernel_dim) from err

    solution = elimination.solution
    if not verify_solution(rows, solution):
        failed = [tag for tag, _ in residuals(rows, solution)]
        msg = f"{target.label}: back-substitution failed on rows {failed}"
        raise SolverError(msg)

    tp = ansatz.combine(solution)
    denominator = tp.content_denominator()
    report = SolveReport(
        type_name=target.name,
        pair=target.pair,
        codim=target.codim,
        basis=ansatz.basis_text(),
        constraint_types=[t.name for t in constraints],
        rows=rows,
        rank=elimination.rank,
        pivotal_rows=list(elimination.pivotal_tags),
        redundant_rows=list(elimination.redundant_tags),
        solution=[format_scalar(x) for x in solution],
        verified=True,
        integral=denominator == 1,
        tp=tp.render(),
    )
    if not report.integral:
        msg = f"{target.label}: solution {report.solution} is not integral (denominator {denominator})"
        raise IntegralityError(msg)
    _LOGGER.info("Solved %s: %s", target.label, report.tp)
    return tp, report


def consistency_check(
    tp: GradedPoly,
    lower: Iterable[SingularityType],
    *,
    target: SingularityType | None = None,
) -> ConsistencyReport:
    """Check that ``tp`` vanishes at every lower type's fixed point.

    With ``target`` given (and free of moduli) the restriction to the target is
    also compared with its Euler class.
    """
    degree = tp.weighted_degree()
    if not tp.is_homogeneous():
        msg = f"{tp.render()} is not homogeneous"
        raise UsageError(msg)
    report = ConsistencyReport(tp=tp.render(), degree=degree)
    for t in lower:
        if not t.has_weights:
            report.skipped.append(t.name)
            continue
        residual = restrict(tp, t)
        report.checked.append(t.name)
        if not residual.is_zero():
            report.violations[t.name] = residual.render()
            _LOGGER.warning("Restriction of %s to %s is %s", tp.render(), t.label, residual.render())
    if target is not None:
        report.principal_type = target.name
        if target.has_modulus:
            _LOGGER.debug("Skipping Euler class comparison for %s", target.label)
        else:
            report.principal_residual = (restrict(tp, target) - euler_class(target)).render()
    return report


def check_closed_form(
    t: SingularityType, registry: Registry | None = None, tp: GradedPoly | None = None
) -> ConsistencyReport:
    """Consistency report for a stored closed form against the lower types."""
    tp = tp if tp is not None else t.known_polynomial()
    if tp is None:
        msg = f"{t.label} has no closed form"
        raise UsageError(msg)
    return consistency_check(tp, lower_types(t.pair, t.codim, registry), target=t)


def is_quotient_form(tp: GradedPoly) -> bool:
    """Return True when ``tp`` vanishes after setting ``cp_i = c_i``."""
    table = tp.table
    bindings = {}
    for name in table.names:
        if name.startswith(TARGET_PREFIX):
            source = SOURCE_PREFIX + name[len(TARGET_PREFIX) :]
            bindings[name] = GradedPoly.var(table, source) if source in table else GradedPoly.zero(table)
    return tp.substitute(bindings, table).is_zero()



def quotient_form(tp: GradedPoly, pair: tuple[int, int]) -> GradedPoly | None:
    """``tp`` rewritten in the quotient classes ``cb``, or None if it is not a quotient form."""
    degree = tp.weighted_degree()
    if degree < 1 or not tp.is_homogeneous() or not is_quotient_form(tp):
        return None
    table = chern_table(*pair, quotient=degree)
    names = [f"{QUOTIENT_PREFIX}{k}" for k in range(1, degree + 1)]
    basis = monomial_basis(table, degree, names)
    images = [expand_quotient_form(GradedPoly.monomial(table, m), tp.table) for m in basis]
    rows = []
    for monom in monomial_basis(tp.table, degree):
        coefficients = tuple(image.coefficient_of(monom) for image in images)
        rhs = tp.coefficient_of(monom)
        if rhs or any(coefficients):
            tag = GradedPoly.monomial(tp.table, monom).render()
            rows.append(EquationRow(coefficients, rhs, (tag,)))
    try:
        solution = solve_exact(rows, len(basis)).solution
    except SolverError as err:
        _LOGGER.debug("No unique quotient form for %s: %s", tp.render(), err)
        return None
    return GradedPoly.from_terms(table, {m: y for m, y in zip(basis, solution, strict=True) if y})
