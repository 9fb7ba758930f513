"""Exact row reduction over the rationals with row provenance."""

from __future__ import annotations

import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from typing import Any

from sympy.polys.domains import QQ

from .exceptions import InconsistentSystemError, UnderdeterminedSystemError, UsageError
from .polycore import ExactScalar, exact, format_scalar

_LOGGER = logging.getLogger(__name__)

KIND_PRINCIPAL = "principal"
KIND_HOMOGENEOUS = "homogeneous"


@dataclass(frozen=True)
class EquationRow:
    """One linear equation ``coefficients . x = rhs`` and where it came from.

    ``tags`` names the singularity type and torus monomial that produced the
    row; rows merged as duplicates keep every tag.
    """

    coefficients: tuple[ExactScalar, ...]
    rhs: ExactScalar
    tags: tuple[str, ...]
    kind: str = KIND_HOMOGENEOUS

    @property
    def tag(self) -> str:
        """The first provenance tag."""
        return self.tags[0] if self.tags else "?"

    def is_zero(self) -> bool:
        """Return True for ``0 = 0``."""
        return not self.rhs and not any(self.coefficients)

    def render(self, unknown: str = "x") -> str:
        """Text form such as ``8*x1 + 2*x2 = 2``."""
        pieces: list[str] = []
        for index, coeff in enumerate(self.coefficients, start=1):
            if not coeff:
                continue
            negative = coeff < 0
            magnitude = -coeff if negative else coeff
            body = f"{unknown}{index}"
            text = body if magnitude == 1 else f"{format_scalar(magnitude)}*{body}"
            if not pieces:
                pieces.append(f"-{text}" if negative else text)
            else:
                pieces.append(f"- {text}" if negative else f"+ {text}")
        left = " ".join(pieces) if pieces else "0"
        return f"{left} = {format_scalar(self.rhs)}"

    def to_dict(self) -> dict[str, Any]:
        """Return a dictionary representation."""
        return {
            "tags": list(self.tags),
            "kind": self.kind,
            "coefficients": [format_scalar(c) for c in self.coefficients],
            "rhs": format_scalar(self.rhs),
        }


@dataclass
class _PivotRow:
    column: int
    coefficients: list[ExactScalar]
    rhs: ExactScalar
    tag: str


@dataclass
class RowReducer:
    """Incremental Gauss-Jordan elimination in reduced row echelon form.

    Each accepted row becomes a pivot row with a leading 1 in the first
    nonzero column; every other pivot row is cleared in that column. A row
    that reduces to ``0 = r`` with ``r != 0`` raises immediately, naming the
    last pivot row it was reduced against.
    """

    width: int
    _pivots: dict[int, _PivotRow] = field(default_factory=dict)
    pivotal_tags: list[str] = field(default_factory=list)
    redundant_tags: list[str] = field(default_factory=list)

    @property
    def rank(self) -> int:
        """Number of pivot rows."""
        return len(self._pivots)

    @property
    def pivot_columns(self) -> tuple[int, ...]:
        """Pivot columns in ascending order."""
        return tuple(sorted(self._pivots))

    def add(self, row: EquationRow) -> bool:
        """Reduce ``row`` against the pivots; return True if it raised the rank."""
        if len(row.coefficients) != self.width:
            msg = f"Row {row.tag} has {len(row.coefficients)} coefficients, expected {self.width}"
            raise UsageError(msg)
        coefficients = list(row.coefficients)
        rhs = row.rhs
        last_pivot: str | None = None
        for column in sorted(self._pivots):
            factor = coefficients[column]
            if not factor:
                continue
            pivot = self._pivots[column]
            coefficients = [a - factor * b for a, b in zip(coefficients, pivot.coefficients, strict=True)]
            rhs = rhs - factor * pivot.rhs
            last_pivot = pivot.tag

        lead = next((i for i, value in enumerate(coefficients) if value), None)
        if lead is None:
            if rhs:
                msg = (
                    f"Row {row.tag} reduces to 0 = {format_scalar(rhs)}"
                    f" against pivot row {last_pivot}"
                )
                raise InconsistentSystemError(msg, row=row.tag, pivot=last_pivot)
            self.redundant_tags.append(row.tag)
            _LOGGER.debug("Row %s is redundant", row.tag)
            return False

        scale = coefficients[lead]
        coefficients = [value / scale for value in coefficients]
        rhs = rhs / scale
        for pivot in self._pivots.values():
            factor = pivot.coefficients[lead]
            if factor:
                pivot.coefficients = [
                    a - factor * b for a, b in zip(pivot.coefficients, coefficients, strict=True)
                ]
                pivot.rhs = pivot.rhs - factor * rhs
        self._pivots[lead] = _PivotRow(lead, coefficients, rhs, row.tag)
        self.pivotal_tags.append(row.tag)
        _LOGGER.debug("Row %s pivots on column %s", row.tag, lead)
        return True

    def free_columns(self) -> list[int]:
        """Columns without a pivot."""
        return [i for i in range(self.width) if i not in self._pivots]

    def solution(self) -> tuple[ExactScalar, ...]:
        """The unique solution; raises when free columns remain."""
        free = self.free_columns()
        if free:
            msg = (
                f"System of width {self.width} has rank {self.rank};"
                f" kernel dimension {len(free)} (free unknowns {[i + 1 for i in free]})"
            )
            raise UnderdeterminedSystemError(msg, kernel_dim=len(free))
        return tuple(self._pivots[i].rhs for i in range(self.width))


@dataclass(frozen=True)
class Elimination:
    """Outcome of an exact solve."""

    solution: tuple[ExactScalar, ...]
    rank: int
    pivot_columns: tuple[int, ...]
    pivotal_tags: tuple[str, ...]
    redundant_tags: tuple[str, ...]


def solve_exact(rows: Iterable[EquationRow], width: int) -> Elimination:
    """Solve a consistent full-rank system exactly."""
    reducer = RowReducer(width)
    for row in rows:
        reducer.add(row)
    solution = reducer.solution()
    return Elimination(
        solution=solution,
        rank=reducer.rank,
        pivot_columns=reducer.pivot_columns,
        pivotal_tags=tuple(reducer.pivotal_tags),
        redundant_tags=tuple(reducer.redundant_tags),
    )


def residuals(rows: Sequence[EquationRow], solution: Sequence[Any]) -> list[tuple[str, ExactScalar]]:
    """Rows whose left side differs from the right side at ``solution``."""
    values = [exact(v) for v in solution]
    failures = []
    for row in rows:
        left = sum((a * x for a, x in zip(row.coefficients, values, strict=True)), QQ.zero)
        if left != row.rhs:
            failures.append((row.tag, left - row.rhs))
    return failures


def verify_solution(rows: Sequence[EquationRow], solution: Sequence[Any]) -> bool:
    """Exact check of ``A x = b``."""
    return not residuals(rows, solution)
