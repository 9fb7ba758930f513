"""Reproduce the published Thom polynomials and degree formulas row by row."""

from __future__ import annotations

import logging
from collections.abc import Callable, Iterable
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any

from .const import (
    DEFAULT_WORKERS,
    ORDINARY_CHARS,
    PAIR_2_2,
    PAIR_2_3,
    PAIR_3_3,
    TABLE_ALL,
    TABLE_MULTI,
    TABLE_NUMBERS,
    TABLE_P3_ORDINARY,
    TABLE_P3_SURFACE,
    TABLE_P4_COMPLETE_INTERSECTION,
    TABLE_P4_PRIMAL,
    TABLE_P4_SURFACE,
    TABLE_TP_2_2,
    TABLE_TP_2_3,
    TABLE_TP_3_3,
    TABLES,
)
from .enumerative import (
    DIRECTION_FORWARD,
    convert_characters,
    smooth_specialization,
    stable_multisingularity_chars,
)
from .exceptions import ThomPolyError, UsageError
from .golden import (
    GOLDEN_TP,
    MODE_CLOSED_FORM,
    MULTI_CHARACTERS,
    ORDINARY_TO_SURFACE,
    P3_ORDINARY,
    P3_SMOOTH,
    P3_SURFACE,
    P4_COMPLETE_INTERSECTION,
    P4_PRIMAL,
    P4_SURFACE,
    STABLE_SERIES,
    VARIANT_STABLE_SERIES,
    VARIANT_TABLE,
    GoldenEntry,
    complete_intersection_formula,
    ordinary_formula,
    primal_formula,
    surface_formula,
)
from .models import RowResult
from .pipelines.p3_surface import P3SurfacePipeline
from .pipelines.p4_primal import P4PrimalPipeline
from .pipelines.p4_surface import P4SurfacePipeline
from .polycore import GradedPoly, params_table
from .registry import Registry, SingularityType, default_registry
from .solver import check_closed_form, solve_tp

_LOGGER = logging.getLogger(__name__)

_TP_TABLES = {TABLE_TP_2_2: PAIR_2_2, TABLE_TP_2_3: PAIR_2_3, TABLE_TP_3_3: PAIR_3_3}


def resolve_tables(selectors: Iterable[str]) -> list[str]:
    """Expand ``all``, numeric aliases and comma lists into table names."""
    tables: list[str] = []
    for selector in selectors:
        for part in filter(None, (p.strip().lower() for p in selector.split(","))):
            if part == TABLE_ALL:
                chosen = list(TABLES)
            elif part in TABLE_NUMBERS:
                chosen = [TABLE_NUMBERS[part]]
            elif part in TABLES:
                chosen = [part]
            else:
                msg = (
                    f"Unknown table {part!r}; choose from {', '.join(TABLES)},"
                    f" {', '.join(TABLE_NUMBERS)} or {TABLE_ALL}"
                )
                raise UsageError(msg)
            tables.extend(t for t in chosen if t not in tables)
    if not tables:
        msg = "No tables selected"
        raise UsageError(msg)
    return tables


def compare(
    table: str, row: str, expected: GradedPoly, actual: GradedPoly, detail: str = ""
) -> RowResult:
    """Row result for an exact polynomial identity."""
    passed = expected == actual
    if not passed:
        if expected.table == actual.table:
            difference = f"difference {(actual - expected).render()}"
        else:
            difference = f"variables differ: {expected.table.symbols} vs {actual.table.symbols}"
        detail = f"{detail}; {difference}" if detail else difference
    return RowResult(
        table=table,
        row=row,
        expected=expected.render(),
        actual=actual.render(),
        passed=passed,
        detail=detail,
    )


@dataclass(frozen=True)
class RowCheck:
    """A deferred row comparison."""

    table: str
    row: str
    compute: Callable[[], RowResult]

    def run(self) -> RowResult:
        """Run the comparison; library errors become failed rows."""
        try:
            return self.compute()
        except ThomPolyError as err:
            _LOGGER.warning("%s row %s failed: %s", self.table, self.row, err)
            return RowResult(
                table=self.table,
                row=self.row,
                expected="",
                actual="",
                passed=False,
                detail=f"{type(err).__name__}: {err}",
            )


@dataclass
class VerificationSummary:
    """Row results in table order."""

    tables: list[str]
    results: list[RowResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        """Return True when every row passed."""
        return all(result.passed for result in self.results)

    @property
    def failures(self) -> list[RowResult]:
        """Rows that did not pass."""
        return [result for result in self.results if not result.passed]

    def by_table(self) -> dict[str, list[RowResult]]:
        """Results grouped by table."""
        grouped: dict[str, list[RowResult]] = {table: [] for table in self.tables}
        for result in self.results:
            grouped[result.table].append(result)
        return grouped

    def to_dict(self) -> dict[str, Any]:
        """Return a dictionary representation."""
        return {
            "tables": self.tables,
            "passed": self.passed,
            "rows": len(self.results),
            "failures": len(self.failures),
            "results": [result.to_dict() for result in self.results],
        }


class Verifier:
    """Checks computed values against every published table."""

    def __init__(self, registry: Registry | None = None, workers: int = DEFAULT_WORKERS) -> None:
        """Initialize the verifier."""
        self.registry = registry or default_registry()
        self.workers = workers
        self.logger = logging.getLogger(f"{__name__}.{self.__class__.__name__}")
        self.p3 = P3SurfacePipeline(self.registry)
        self.p4 = P4SurfacePipeline(self.registry)
        self.primal = P4PrimalPipeline(self.registry)
        self._runners: dict[str, Callable[[str], list[RowCheck]]] = {
            TABLE_TP_2_2: self._tp_rows,
            TABLE_TP_2_3: self._tp_rows,
            TABLE_TP_3_3: self._tp_rows,
            TABLE_P3_SURFACE: self._p3_surface_rows,
            TABLE_P3_ORDINARY: self._p3_ordinary_rows,
            TABLE_P4_SURFACE: self._p4_surface_rows,
            TABLE_P4_COMPLETE_INTERSECTION: self._complete_intersection_rows,
            TABLE_P4_PRIMAL: self._primal_rows,
            TABLE_MULTI: self._multi_rows,
        }

    @cached_property
    def multi_characters(self) -> dict[str, GradedPoly]:
        """``C, T, eps0`` in surface characters."""
        return stable_multisingularity_chars()

    @cached_property
    def forward_conversion(self) -> dict[str, GradedPoly]:
        """``xi1, xi2, xi01`` in ordinary characters."""
        return convert_characters(DIRECTION_FORWARD)

    def rows(self, table: str) -> list[RowCheck]:
        """Deferred checks of one table."""
        return self._runners[table](table)

    def run(self, selectors: Iterable[str]) -> VerificationSummary:
        """Run the selected tables, fanning rows out to the worker pool."""
        tables = resolve_tables(selectors)
        # Warm the shared caches so workers only read them.
        if {TABLE_MULTI, TABLE_P3_ORDINARY} & set(tables):
            _ = self.multi_characters, self.forward_conversion, self.p3.conversion
        checks = [check for table in tables for check in self.rows(table)]
        self.logger.info("Checking %s rows from %s", len(checks), ", ".join(tables))
        with ThreadPoolExecutor(max_workers=self.workers) as executor:
            results = list(executor.map(RowCheck.run, checks))
        summary = VerificationSummary(tables=tables, results=results)
        self.logger.info(
            "%s of %s rows passed", len(results) - len(summary.failures), len(results)
        )
        return summary

    # Thom polynomial tables

    def _tp_rows(self, table: str) -> list[RowCheck]:
        pair = _TP_TABLES[table]
        entries = [(entry.name, entry) for entry in GOLDEN_TP[pair]]
        entries.extend(
            (f"{entry.name} (stable)", entry) for entry in STABLE_SERIES if entry.pair == pair
        )
        return [RowCheck(table, row, self._tp_check(table, row, entry)) for row, entry in entries]

    def _tp_check(self, table: str, row: str, entry: GoldenEntry) -> Callable[[], RowResult]:
        def compute() -> RowResult:
            t = self.registry.get(entry.name, entry.pair)
            if entry.mode == MODE_CLOSED_FORM:
                return self._closed_form_row(table, row, entry, t)
            solved, report = solve_tp(t, registry=self.registry)
            detail = f"rank {report.rank} of {report.unknowns}"
            if report.redundant_rows:
                detail += f", {len(report.redundant_rows)} redundant rows"
            result = compare(table, row, entry.polynomial(), solved, detail)
            if entry.variants:
                matching = [k for k in entry.variants if entry.variant_polynomial(k) == solved]
                result = self._arbitrate(result, entry, matching)
            return result

        return compute

    def _closed_form_row(
        self, table: str, row: str, entry: GoldenEntry, t: SingularityType
    ) -> RowResult:
        expected = entry.polynomial()
        report = check_closed_form(t, self.registry, tp=expected)
        detail = f"vanishes on {', '.join(report.checked) or 'no lower types'}"
        if report.skipped:
            detail += f"; no weights for {', '.join(report.skipped)}"
        if report.principal_residual is None:
            detail += "; Euler class not compared"
        if report.passed:
            actual = "consistent"
        else:
            actual = f"violations {report.violations}, Euler residual {report.principal_residual}"
        result = RowResult(
            table=table,
            row=row,
            expected=expected.render(),
            actual=actual,
            passed=report.passed,
            detail=detail,
        )
        if entry.variants:
            matching = [
                key
                for key in entry.variants
                if check_closed_form(t, self.registry, tp=entry.variant_polynomial(key)).passed
            ]
            result = self._arbitrate(result, entry, matching)
        return result

    def _arbitrate(self, result: RowResult, entry: GoldenEntry, matching: list[str]) -> RowResult:
        """Exactly one published form may agree, and it must be the tabulated one."""
        known = (VARIANT_TABLE, VARIANT_STABLE_SERIES)
        rejected = [key for key in known if key in entry.variants and key not in matching]
        for key in rejected:
            self.logger.warning(
                "%s: the %s form %s disagrees with the computation",
                entry.name,
                key,
                entry.variants[key],
            )
        agreed = matching == [VARIANT_TABLE]
        note = f"agrees with the {' and '.join(matching)} form" if matching else "agrees with no form"
        return RowResult(
            table=result.table,
            row=result.row,
            expected=result.expected,
            actual=result.actual,
            passed=result.passed and agreed,
            detail=f"{result.detail}; {note}",
        )

    # Enumerative tables

    def _p3_surface_rows(self, table: str) -> list[RowCheck]:
        return [
            self._formula_check(table, name, surface_formula(text), self.p3.locus_degree, name)
            for name, text in P3_SURFACE.items()
        ]

    def _p3_ordinary_rows(self, table: str) -> list[RowCheck]:
        checks = [
            self._formula_check(table, name, ordinary_formula(text), self.p3.ordinary_degree, name)
            for name, text in P3_ORDINARY.items()
        ]
        checks.extend(
            self._formula_check(
                table, f"{name} (smooth)", primal_formula(text), self._smooth, name
            )
            for name, text in P3_SMOOTH.items()
        )
        return checks

    def _smooth(self, name: str) -> GradedPoly:
        return smooth_specialization(self.p3.ordinary_degree(name))

    def _p4_surface_rows(self, table: str) -> list[RowCheck]:
        return [
            self._formula_check(table, name, surface_formula(text), self.p4.locus_degree, name)
            for name, text in P4_SURFACE.items()
        ]

    def _complete_intersection_rows(self, table: str) -> list[RowCheck]:
        return [
            self._formula_check(
                table,
                name,
                complete_intersection_formula(text),
                self.p4.complete_intersection_degree,
                name,
            )
            for name, text in P4_COMPLETE_INTERSECTION.items()
        ]

    def _primal_rows(self, table: str) -> list[RowCheck]:
        return [
            self._formula_check(table, name, primal_formula(text), self.primal.locus_degree, name)
            for name, text in P4_PRIMAL.items()
        ]

    def _multi_rows(self, table: str) -> list[RowCheck]:
        checks = [
            self._formula_check(
                table, name, surface_formula(text), lambda n: self.multi_characters[n], name
            )
            for name, text in MULTI_CHARACTERS.items()
        ]
        checks.extend(
            self._formula_check(
                table, name, ordinary_formula(text), lambda n: self.forward_conversion[n], name
            )
            for name, text in ORDINARY_TO_SURFACE.items()
        )
        checks.extend(
            self._formula_check(
                table,
                f"{name} round trip",
                GradedPoly.var(params_table(ORDINARY_CHARS), name),
                self._round_trip,
                name,
            )
            for name in MULTI_CHARACTERS
        )
        checks.append(
            RowCheck(
                table,
                "crosscaps by two routes",
                lambda: compare(
                    table,
                    "crosscaps by two routes",
                    self.multi_characters["C"],
                    self.p3.locus_degree("Sharksfin"),
                    "Sharksfin locus against the pinch-point count",
                ),
            )
        )
        return checks

    def _round_trip(self, name: str) -> GradedPoly:
        return self.multi_characters[name].substitute(
            dict(self.forward_conversion), params_table(ORDINARY_CHARS)
        )

    def _formula_check(
        self,
        table: str,
        row: str,
        expected: GradedPoly,
        compute: Callable[[str], GradedPoly],
        name: str,
    ) -> RowCheck:
        return RowCheck(table, row, lambda: compare(table, row, expected, compute(name)))


def verify(
    selectors: Iterable[str],
    registry: Registry | None = None,
    workers: int = DEFAULT_WORKERS,
) -> VerificationSummary:
    """Run the selected tables against a registry."""
    return Verifier(registry, workers).run(selectors)
