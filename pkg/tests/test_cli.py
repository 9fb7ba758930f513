"""Test the command-line front end."""

import io
import json
from pathlib import Path

import pytest

from thompoly.cli import exit_code_for, main, parse_pair
from thompoly.const import (
    EXIT_MALFORMED,
    EXIT_OK,
    EXIT_SOLVER,
    EXIT_UNKNOWN,
    PAIR_2_3,
)
from thompoly.exceptions import (
    InconsistentSystemError,
    MalformedCharactersError,
    UnknownTypeError,
)
from thompoly.polycore import GradedPoly, chern_table
from thompoly.registry import builtin_registry
from tests.common import get_fixture_path
from tests.const import B1_TP, CORRUPT_DIAGNOSTIC, EXTRA_A1_TP, EXTRA_PAIR, S0_TP


def run(*argv: str) -> tuple[int, str]:
    """Run the CLI and capture its output."""
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


def test_parse_pair() -> None:
    """Test dimension pair parsing."""
    assert parse_pair("2, 3") == PAIR_2_3


def test_exit_code_for() -> None:
    """Test that the most specific error class decides the exit code."""
    assert exit_code_for(UnknownTypeError("x")) == EXIT_UNKNOWN
    assert exit_code_for(MalformedCharactersError("x")) == EXIT_MALFORMED
    assert exit_code_for(InconsistentSystemError("x", row="A0@a^2", pivot=None)) == EXIT_SOLVER


def test_solve_b1() -> None:
    """Test solving B1 and comparing with the published polynomial."""
    code, output = run("solve", "--pair", "2,3", "--type", "B1")
    assert code == EXIT_OK
    lines = output.splitlines()
    assert lines[0].startswith("Tp(B1) = ")
    assert "constraint types: A0, S0" in lines
    assert "11 equations, 9 unknowns, rank 9" in lines
    assert lines[-1] == "PASS"


def test_solve_json() -> None:
    """Test the JSON solve report."""
    code, output = run("solve", "--pair", "2,3", "--type", "S1", "--format", "json")
    assert code == EXIT_OK
    data = json.loads(output)
    assert data["type"] == "B1"
    assert data["golden"] == "PASS"
    assert GradedPoly.parse(chern_table(2, 3), data["tp"]) == GradedPoly.parse(chern_table(2, 3), B1_TP)


def test_solve_quotient_form() -> None:
    """Test that a quotient-form answer is printed in quotient classes."""
    code, output = run("solve", "--pair", "2,2", "--type", "Fold")
    assert code == EXIT_OK
    assert output.splitlines()[0] == "Tp(Fold) = cb1"
    code, output = run("solve", "--pair", "2,3", "--type", "S0", "--format", "json")
    data = json.loads(output)
    assert data["tp_quotient"] == "cb2"
    assert GradedPoly.parse(chern_table(2, 3), data["tp"]) == GradedPoly.parse(chern_table(2, 3), S0_TP)


def test_solve_explicit_constraints() -> None:
    """Test a constraint list given on the command line."""
    code, output = run("solve", "--pair", "2,3", "--type", "B1", "--constraints", "A0, S0")
    assert code == EXIT_OK
    assert output.splitlines()[-1] == "PASS"


def test_solve_latex() -> None:
    """Test a LaTeX row."""
    code, output = run("solve", "--pair", "2,2", "--type", "Fold", "--format", "latex")
    assert code == EXIT_OK
    assert output.startswith("Fold & $")


def test_solve_modulus_type() -> None:
    """Test that a type with a modulus direction exits as a solver failure."""
    code, _ = run("solve", "--pair", "2,3", "--type", "P3")
    assert code == EXIT_SOLVER


def test_solve_unknown_type() -> None:
    """Test an unknown type name."""
    code, output = run("solve", "--pair", "2,3", "--type", "Q7")
    assert code == EXIT_UNKNOWN
    assert output == ""


def test_bad_pair() -> None:
    """Test that argparse rejects a malformed pair."""
    with pytest.raises(SystemExit):
        main(["solve", "--pair", "two", "--type", "B1"], io.StringIO())


def test_verify_table() -> None:
    """Test one verification table by number."""
    code, output = run("verify", "--tables", "10")
    assert code == EXIT_OK
    lines = output.splitlines()
    assert lines[0] == "[p4-complete-intersection]"
    assert lines[-1] == "4 passed, 0 failed (PASS)"


def test_verify_json() -> None:
    """Test the JSON verification summary."""
    code, output = run("--workers", "1", "verify", "--tables", "tp-3-3", "--format", "json")
    assert code == EXIT_OK
    data = json.loads(output)
    assert data["passed"] is True
    assert data["rows"] == 7


def test_verify_unknown_table() -> None:
    """Test an unknown table selector."""
    code, _ = run("verify", "--tables", "12")
    assert code == EXIT_MALFORMED


def test_enumerate_two_quadrics() -> None:
    """Test the H2 points of a complete intersection of two quadrics."""
    code, output = run("enumerate", "--pipeline", "p4-surface", "--type", "H2", "--d1", "2", "--d2", "2")
    assert code == EXIT_OK
    assert output.strip().endswith("= 16")


def test_enumerate_parabolic_curve() -> None:
    """Test a formula without characters and then evaluated."""
    code, output = run("enumerate", "--pipeline", "p3-surface", "--type", "Lips/Beaks")
    assert code == EXIT_OK
    assert output.strip() == "parabolic curve (Lips/Beaks): 8*d - 4*xi1"
    code, output = run(
        "enumerate", "--pipeline", "p3-surface", "--type", "Lips/Beaks", "--chars", "d=4"
    )
    assert output.strip().endswith("= 32")


def test_enumerate_primal_json() -> None:
    """Test a single JSON record for a primal locus."""
    code, output = run(
        "enumerate", "--pipeline", "p4-primal", "--type", "D", "--d", "3", "--format", "json"
    )
    assert code == EXIT_OK
    data = json.loads(output)
    assert data["type"] == "D"
    assert data["value"] == "90"


def test_enumerate_all_types() -> None:
    """Test that every eligible type is listed when no type is given."""
    code, output = run("enumerate", "--pipeline", "p4-primal", "--format", "json")
    assert code == EXIT_OK
    assert [r["type"] for r in json.loads(output)] == ["A3", "A4", "C", "D", "I22"]


def test_enumerate_unknown_pipeline() -> None:
    """Test an unsupported pipeline."""
    code, _ = run("enumerate", "--pipeline", "p5-surface")
    assert code == EXIT_UNKNOWN


@pytest.mark.parametrize(
    "argv",
    [
        ["--chars", "d=x"],
        ["--chars", "q=1"],
        ["--d1", "2"],
        ["--chars", "d1=2", "--d1", "2", "--d2", "2"],
    ],
)
def test_enumerate_malformed_characters(argv: list[str]) -> None:
    """Test characters that cannot be used."""
    code, _ = run("enumerate", "--pipeline", "p4-surface", "--type", "H2", *argv)
    assert code == EXIT_MALFORMED


def test_registry_dump() -> None:
    """Test dumping the bundled registry."""
    code, output = run("registry", "--dump")
    assert code == EXIT_OK
    assert len(json.loads(output)) == len(builtin_registry())


def test_registry_validate_corrupt() -> None:
    """Test that validation prints the offending component."""
    code, output = run("registry", "--load", str(get_fixture_path("corrupt_registry.json")), "--validate")
    assert code == EXIT_MALFORMED
    assert CORRUPT_DIAGNOSTIC in output


def test_registry_validate_clean() -> None:
    """Test validating a clean file."""
    code, output = run("registry", "--load", str(get_fixture_path("extra_type.json")), "--validate")
    assert code == EXIT_OK
    assert output.strip().endswith("2 types valid")


def test_registry_load() -> None:
    """Test merging an extra file and listing the pairs."""
    code, output = run("registry", "--load", str(get_fixture_path("extra_type.json")))
    assert code == EXIT_OK
    assert f"Merged registry: {len(builtin_registry()) + 2} types" in output
    assert "  1,1: A0, A1" in output.splitlines()


def test_registry_load_missing_file(tmp_path: Path) -> None:
    """Test a registry file that does not exist."""
    code, _ = run("registry", "--load", str(tmp_path / "missing.json"))
    assert code == EXIT_MALFORMED


def test_solve_with_extra_registry() -> None:
    """Test solving a type that only the extra registry file defines."""
    code, output = run(
        "--registry",
        str(get_fixture_path("extra_type.json")),
        "solve",
        "--pair",
        "1,1",
        "--type",
        "A1",
        "--format",
        "json",
    )
    assert code == EXIT_OK
    data = json.loads(output)
    assert data["golden"] is None
    table = chern_table(*EXTRA_PAIR)
    assert GradedPoly.parse(table, data["tp"]) == GradedPoly.parse(table, EXTRA_A1_TP)
