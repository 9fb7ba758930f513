"""Data models for the thompoly package."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .const import STATUS_FAIL, STATUS_PASS
from .linear import EquationRow


@dataclass
class SolveReport:
    """Outcome of solving the restriction system for one type."""

    type_name: str
    pair: tuple[int, int]
    codim: int
    basis: list[str]
    constraint_types: list[str]
    rows: list[EquationRow]
    rank: int
    pivotal_rows: list[str]
    redundant_rows: list[str]
    solution: list[str]
    verified: bool
    integral: bool
    tp: str

    @property
    def unknowns(self) -> int:
        """Number of unknown coefficients."""
        return len(self.basis)

    @property
    def unique(self) -> bool:
        """Return True when the solution is unique."""
        return self.rank == self.unknowns

    def to_dict(self) -> dict[str, Any]:
        """Return a dictionary representation."""
        return {
            "type": self.type_name,
            "pair": list(self.pair),
            "codim": self.codim,
            "basis": self.basis,
            "constraint_types": self.constraint_types,
            "equations": [row.to_dict() for row in self.rows],
            "unknowns": self.unknowns,
            "rank": self.rank,
            "unique": self.unique,
            "pivotal_rows": self.pivotal_rows,
            "redundant_rows": self.redundant_rows,
            "solution": self.solution,
            "verified": self.verified,
            "integral": self.integral,
            "tp": self.tp,
        }


@dataclass
class ConsistencyReport:
    """Restrictions of a closed-form polynomial to torus fixed points."""

    tp: str
    degree: int
    checked: list[str] = field(default_factory=list)
    violations: dict[str, str] = field(default_factory=dict)
    skipped: list[str] = field(default_factory=list)
    principal_type: str | None = None
    principal_residual: str | None = None

    @property
    def passed(self) -> bool:
        """Return True when every restriction behaves as required."""
        return not self.violations and self.principal_residual in (None, "0")

    def to_dict(self) -> dict[str, Any]:
        """Return a dictionary representation."""
        return {
            "tp": self.tp,
            "degree": self.degree,
            "checked": self.checked,
            "violations": self.violations,
            "skipped": self.skipped,
            "principal_type": self.principal_type,
            "principal_residual": self.principal_residual,
            "passed": self.passed,
        }


@dataclass
class FormulaRecord:
    """An enumerative formula for one locus."""

    locus: str
    pipeline: str
    type_name: str
    formula: str
    characters: list[str]
    value: str | None = None
    latex: str | None = None

    def to_dict(self) -> dict[str, Any]:
        """Return a dictionary representation."""
        return {
            "locus": self.locus,
            "pipeline": self.pipeline,
            "type": self.type_name,
            "formula": self.formula,
            "characters": self.characters,
            "value": self.value,
        }

    def latex_row(self) -> str:
        """A LaTeX table row ``type & locus & formula \\\\``."""
        body = self.latex if self.latex is not None else self.formula
        return f"{self.type_name} & {self.locus} & ${body}$ \\\\"


@dataclass
class RowResult:
    """Comparison of one published row with the computed value."""

    table: str
    row: str
    expected: str
    actual: str
    passed: bool
    detail: str = ""

    @property
    def status(self) -> str:
        """PASS or FAIL."""
        return STATUS_PASS if self.passed else STATUS_FAIL

    def to_dict(self) -> dict[str, Any]:
        """Return a dictionary representation."""
        return {
            "table": self.table,
            "row": self.row,
            "status": self.status,
            "expected": self.expected,
            "actual": self.actual,
            "detail": self.detail,
        }
