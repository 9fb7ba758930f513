"""Test verification against the published tables."""

import pytest

from thompoly.const import (
    TABLE_MULTI,
    TABLE_P3_ORDINARY,
    TABLE_P4_COMPLETE_INTERSECTION,
    TABLE_P4_PRIMAL,
    TABLE_TP_2_2,
    TABLE_TP_2_3,
    TABLE_TP_3_3,
    TABLES,
)
from thompoly.exceptions import UnknownTypeError, UsageError
from thompoly.models import RowResult
from thompoly.polycore import GradedPoly, params_table
from thompoly.verification import RowCheck, Verifier, compare, resolve_tables


@pytest.mark.parametrize(
    ("selectors", "expected"),
    [
        (["all"], list(TABLES)),
        (["4"], [TABLE_TP_2_2]),
        (["5"], [TABLE_TP_2_3]),
        (["4,6"], [TABLE_TP_2_2, TABLE_TP_3_3]),
        (["11", "multi"], [TABLE_P4_PRIMAL, TABLE_MULTI]),
        (["P3-Ordinary", "p3-ordinary"], [TABLE_P3_ORDINARY]),
    ],
)
def test_resolve_tables(selectors: list[str], expected: list[str]) -> None:
    """Test table selectors."""
    assert resolve_tables(selectors) == expected


@pytest.mark.parametrize("selectors", [["12"], ["tp-9-9"], [""], []])
def test_resolve_tables_errors(selectors: list[str]) -> None:
    """Test unknown and empty selectors."""
    with pytest.raises(UsageError):
        resolve_tables(selectors)


def test_compare_reports_difference() -> None:
    """Test the detail of a failed comparison."""
    table = params_table(("d",))
    result = compare("p4-primal", "A3", GradedPoly.parse(table, "6*d"), GradedPoly.parse(table, "5*d"))
    assert not result.passed
    assert result.status == "FAIL"
    assert result.detail == "difference -d"


def test_row_check_turns_errors_into_failures() -> None:
    """Test that a library error fails the row instead of the run."""

    def compute() -> RowResult:
        msg = "Unknown singularity type 'Q7'"
        raise UnknownTypeError(msg)

    result = RowCheck("tp-2-3", "Q7", compute).run()
    assert not result.passed
    assert result.detail == "UnknownTypeError: Unknown singularity type 'Q7'"


@pytest.mark.parametrize(
    ("table", "count"),
    [
        (TABLE_TP_2_2, 8),
        (TABLE_TP_2_3, 11),
        (TABLE_TP_3_3, 7),
        (TABLE_P3_ORDINARY, 11),
        (TABLE_P4_COMPLETE_INTERSECTION, 4),
        (TABLE_MULTI, 10),
    ],
)
def test_row_counts(verifier: Verifier, table: str, count: int) -> None:
    """Test the number of rows per table."""
    assert len(verifier.rows(table)) == count


def test_stable_row_label(verifier: Verifier) -> None:
    """Test that the stable-series row is labelled apart from the published row."""
    rows = [check.row for check in verifier.rows(TABLE_TP_2_3)]
    assert "A2 (stable)" in rows
    assert rows[:2] == ["S0", "B1"]


def test_tp_table_records_arbitration(verifier: Verifier) -> None:
    """Test that rows with two published forms record which one agreed."""
    summary = verifier.run([TABLE_TP_2_2])
    assert summary.passed
    swallowtail = next(r for r in summary.results if r.row == "Swallowtail")
    assert "agrees with the table form" in swallowtail.detail


@pytest.mark.timeout(600)
def test_all_tables_pass(verifier: Verifier) -> None:
    """Test every published row."""
    summary = verifier.run(["all"])
    assert summary.failures == []
    assert summary.passed
    assert summary.tables == list(TABLES)
    data = summary.to_dict()
    assert data["failures"] == 0
    assert data["rows"] == len(summary.results)
