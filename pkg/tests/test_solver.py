"""Test the restriction method solver."""

import dataclasses

import pytest

from thompoly.const import PAIR_2_2, PAIR_2_3, PAIR_3_3
from thompoly.exceptions import (
    InconsistentSystemError,
    IntegralityError,
    ModulusDirectionError,
    SolverError,
    UnderdeterminedSystemError,
    UsageError,
)
from thompoly.golden import (
    GOLDEN_TP,
    MODE_CLOSED_FORM,
    MODE_SOLVE,
    VARIANT_STABLE_SERIES,
    VARIANT_TABLE,
    GoldenEntry,
    golden_entry,
    golden_tp,
)
from thompoly.linear import KIND_PRINCIPAL
from thompoly.polycore import GradedPoly, chern_table
from thompoly.registry import Registry, SingularityType
from thompoly.solver import (
    Ansatz,
    check_closed_form,
    consistency_check,
    default_constraints,
    euler_class,
    homogeneous_equations,
    is_quotient_form,
    principal_equation,
    quotient_form,
    restrict,
    solve_tp,
    torus_substitution,
    torus_table,
)
from tests.const import (
    B1_BASIS,
    B1_PRINCIPAL_ROW,
    B1_S0_ROW,
    B1_SOLUTION,
    B1_TP,
    BUTTERFLY_EULER,
    CUSP_TP,
    FOLD_TP,
    I22_EULER,
    S0_TP,
    SHARKSFIN_EULER,
)

SOLVED = [e for entries in GOLDEN_TP.values() for e in entries if e.mode == MODE_SOLVE]
CLOSED = [e for entries in GOLDEN_TP.values() for e in entries if e.mode == MODE_CLOSED_FORM]


def _entry_id(entry: GoldenEntry) -> str:
    return f"{entry.name}-{entry.pair[0]}{entry.pair[1]}"


def test_torus_substitution(b1: SingularityType) -> None:
    """Test Chern classes of the B1 normal form as torus characters."""
    source, target = torus_substitution(b1, 3)
    table = torus_table(1)
    assert source["c1"] == GradedPoly.parse(table, "2*a")
    assert source["c2"] == GradedPoly.parse(table, "a^2")
    assert target["cp1"] == GradedPoly.parse(table, "6*a")
    assert target["cp2"] == GradedPoly.parse(table, "11*a^2")
    assert target["cp3"] == GradedPoly.parse(table, "6*a^3")


def test_euler_class(b1: SingularityType) -> None:
    """Test the product of the normal weights."""
    assert euler_class(b1) == GradedPoly.parse(torus_table(1), "2*a^3")


def test_b1_principal_equation(b1_ansatz: Ansatz) -> None:
    """Test the principal row of the B1 worked example."""
    rows = principal_equation(b1_ansatz)
    assert len(rows) == 1
    assert rows[0].render() == B1_PRINCIPAL_ROW
    assert rows[0].kind == KIND_PRINCIPAL
    assert rows[0].tag == "B1@a^3"


def test_b1_rows_from_immersions(registry: Registry, b1_ansatz: Ansatz) -> None:
    """Test the homogeneous rows contributed by the immersion point."""
    rows = homogeneous_equations(b1_ansatz, registry.get("A0", PAIR_2_3))
    assert len(rows) == 6
    by_text = {row.render(): row for row in rows}
    assert "x6 = 0" in by_text
    assert "A0@a3^3" in by_text["x6 = 0"].tags


def test_b1_rows_from_crosscaps(registry: Registry, b1_ansatz: Ansatz) -> None:
    """Test the homogeneous rows contributed by the crosscap point."""
    rows = homogeneous_equations(b1_ansatz, registry.get("S0", PAIR_2_3))
    assert len(rows) == 4
    by_text = {row.render(): row for row in rows}
    assert by_text[B1_S0_ROW].tag == "S0@a1^3"


def test_b1_worked_example(registry: Registry, b1: SingularityType, b1_ansatz: Ansatz) -> None:
    """Test solving B1 from the immersion and crosscap points."""
    constraints = [registry.get("A0", PAIR_2_3), registry.get("S0", PAIR_2_3)]
    tp, report = solve_tp(b1, constraints, registry=registry, ansatz=b1_ansatz)
    assert tp == GradedPoly.parse(chern_table(2, 3), B1_TP)
    assert report.solution == B1_SOLUTION
    assert report.rank == 9
    assert report.unique
    assert report.verified
    assert report.integral
    assert len(report.rows) == 11
    assert report.constraint_types == ["A0", "S0"]


def test_default_constraints_give_the_same_answer(registry: Registry, b1: SingularityType) -> None:
    """Test that the default constraint set agrees with the minimal one."""
    assert [t.name for t in default_constraints(b1, registry)] == ["A0", "S0"]
    minimal, _ = solve_tp(b1, [registry.get("A0", PAIR_2_3), registry.get("S0", PAIR_2_3)], registry=registry)
    default, _ = solve_tp(b1, registry=registry)
    assert minimal == default


def test_default_basis_order(b1_ansatz: Ansatz) -> None:
    """Test that the default ansatz numbers the unknowns in the classical order."""
    assert b1_ansatz.basis_text() == B1_BASIS


def test_basis_order_does_not_change_the_answer(registry: Registry, b1: SingularityType, b1_ansatz: Ansatz) -> None:
    """Test that reordering the ansatz gives the same polynomial."""
    reversed_ansatz = Ansatz.for_type(b1, reversed(b1_ansatz.basis))
    reordered, _ = solve_tp(b1, registry=registry, ansatz=reversed_ansatz)
    default, _ = solve_tp(b1, registry=registry)
    assert reordered == default


@pytest.mark.parametrize(
    ("name", "pair", "expected"),
    [
        ("Fold", PAIR_2_2, FOLD_TP),
        ("Cusp", PAIR_2_2, CUSP_TP),
        ("S0", PAIR_2_3, S0_TP),
    ],
)
def test_low_codimension(registry: Registry, name: str, pair: tuple[int, int], expected: str) -> None:
    """Test the classical low-codimension polynomials."""
    tp, _ = solve_tp(registry.get(name, pair), registry=registry)
    assert tp == GradedPoly.parse(chern_table(*pair), expected)


@pytest.mark.parametrize("entry", SOLVED, ids=_entry_id)
def test_solved_rows_match_published(registry: Registry, entry: GoldenEntry) -> None:
    """Test every solvable published row."""
    tp, report = solve_tp(registry.get(entry.name, entry.pair), registry=registry)
    assert tp == entry.polynomial()
    assert tp.is_integral()
    assert tp.is_homogeneous(entry.codim)
    assert report.unique


@pytest.mark.parametrize("name", ["Goose", "Gulls"])
def test_corank_two_point_fixes_codim_four(registry: Registry, name: str) -> None:
    """Test that the corank-2 point removes the last free direction of a codim-4 system."""
    target = registry.get(name, PAIR_2_2)
    sharksfin = registry.get("Sharksfin", PAIR_2_2)
    published = golden_tp(name, PAIR_2_2)
    assert restrict(published, sharksfin).is_zero()
    assert not restrict(sharksfin.known_polynomial(), sharksfin).is_zero()

    corank_one = [t for t in default_constraints(target, registry) if t.name != "Sharksfin"]
    with pytest.raises(UnderdeterminedSystemError) as err:
        solve_tp(target, corank_one, registry=registry)
    assert err.value.kernel_dim == 1

    tp, report = solve_tp(target, registry=registry)
    assert tp == published
    assert "Sharksfin" in report.constraint_types


@pytest.mark.parametrize("entry", CLOSED, ids=_entry_id)
def test_closed_forms_are_consistent(registry: Registry, entry: GoldenEntry) -> None:
    """Test every closed-form row against the lower types."""
    t = registry.get(entry.name, entry.pair)
    report = check_closed_form(t, registry, entry.polynomial())
    assert report.passed
    assert report.violations == {}


@pytest.mark.parametrize(
    ("name", "pair", "expected"),
    [
        ("Butterfly", PAIR_2_2, BUTTERFLY_EULER),
        ("Sharksfin", PAIR_2_2, SHARKSFIN_EULER),
        ("I22", PAIR_3_3, I22_EULER),
    ],
)
def test_closed_form_restricts_to_euler_class(
    registry: Registry, name: str, pair: tuple[int, int], expected: str
) -> None:
    """Test the restriction of a closed form to its own fixed point."""
    t = registry.get(name, pair)
    restricted = restrict(t.known_polynomial(), t)
    assert restricted == GradedPoly.parse(torus_table(t.torus_rank), expected)
    assert restricted == euler_class(t)


def test_table_variant_wins(registry: Registry) -> None:
    """Test that the solved swallowtail agrees with the table, not the series."""
    entry = golden_entry("Swallowtail", PAIR_2_2)
    tp, _ = solve_tp(registry.get("Swallowtail", PAIR_2_2), registry=registry)
    assert tp == entry.variant_polynomial(VARIANT_TABLE)
    assert tp != entry.variant_polynomial(VARIANT_STABLE_SERIES)
    assert is_quotient_form(tp)


def test_series_variant_fails_consistency(registry: Registry) -> None:
    """Test that the rejected H2 form does not vanish where it should."""
    entry = golden_entry("H2", PAIR_2_3)
    h2 = registry.get("H2", PAIR_2_3)
    assert check_closed_form(h2, registry, entry.variant_polynomial(VARIANT_TABLE)).passed
    assert not check_closed_form(h2, registry, entry.variant_polynomial(VARIANT_STABLE_SERIES)).passed


def test_is_quotient_form() -> None:
    """Test the vanishing test at equal source and target classes."""
    table = chern_table(2, 3)
    assert is_quotient_form(GradedPoly.parse(table, S0_TP))
    assert not is_quotient_form(GradedPoly.parse(table, "c1"))


def test_quotient_form(registry: Registry) -> None:
    """Test rewriting solved polynomials in quotient classes."""
    fold, _ = solve_tp(registry.get("Fold", PAIR_2_2), registry=registry)
    assert quotient_form(fold, PAIR_2_2).render() == "cb1"
    cusp = GradedPoly.parse(chern_table(2, 2), CUSP_TP)
    assert quotient_form(cusp, PAIR_2_2) == GradedPoly.parse(chern_table(2, 2, quotient=2), "cb1^2 + cb2")
    assert quotient_form(GradedPoly.parse(chern_table(2, 3), B1_TP), PAIR_2_3) is None


def test_consistency_violation(registry: Registry) -> None:
    """Test that a perturbed closed form is caught at a lower type."""
    sharksfin = registry.get("Sharksfin", PAIR_2_2)
    table = chern_table(2, 2)
    perturbed = sharksfin.known_polynomial() + GradedPoly.parse(table, "c1^4")
    lower = [registry.get("Regular", PAIR_2_2), registry.get("Fold", PAIR_2_2)]
    report = consistency_check(perturbed, lower, target=sharksfin)
    assert not report.passed
    assert "Regular" in report.violations
    assert report.checked == ["Regular", "Fold"]


def test_modulus_type_is_not_solved(registry: Registry) -> None:
    """Test that a type with a zero normal weight is refused."""
    p3 = registry.get("P3", PAIR_2_3)
    with pytest.raises(ModulusDirectionError, match="modulus direction"):
        solve_tp(p3, registry=registry)
    with pytest.raises(ModulusDirectionError):
        principal_equation(Ansatz.for_type(p3))


def test_modulus_type_consistency(registry: Registry) -> None:
    """Test that the closed form of a modulus type skips the Euler comparison."""
    report = check_closed_form(registry.get("P3", PAIR_2_3), registry)
    assert report.passed
    assert report.principal_residual is None
    assert report.principal_type == "P3"


def test_closed_form_only_type(registry: Registry) -> None:
    """Test that a closed-form-only type is refused by the solver."""
    with pytest.raises(SolverError, match="closed form only"):
        solve_tp(registry.get("Butterfly", PAIR_2_2), registry=registry)


def test_underdetermined(registry: Registry, b1: SingularityType) -> None:
    """Test that too few constraints report the kernel and a hint."""
    with pytest.raises(UnderdeterminedSystemError, match="try adding constraint types") as err:
        solve_tp(b1, [], registry=registry)
    assert err.value.kernel_dim == 8
    assert "S0" in str(err.value)


def test_inconsistent(registry: Registry) -> None:
    """Test that a constraint sharing the target's weights is contradictory."""
    fold = registry.get("Fold", PAIR_2_2)
    twin = dataclasses.replace(fold, name="FoldTwin")
    with pytest.raises(InconsistentSystemError) as err:
        solve_tp(fold, [registry.get("Regular", PAIR_2_2), twin], registry=registry)
    assert err.value.row.startswith("FoldTwin@")


def test_fractional_solution_is_refused(registry: Registry) -> None:
    """Test that a solution with a denominator is reported, not returned."""
    regular = SingularityType("A0", 1, 1, 0, 1, ((1,),), ((1,),))
    stretched = SingularityType("A1", 1, 1, 1, 1, ((1,),), ((3,),), normal_weights=((1,),))
    with pytest.raises(IntegralityError, match="denominator 2"):
        solve_tp(stretched, [regular], registry=registry)


def test_constraint_checks(registry: Registry, b1: SingularityType, b1_ansatz: Ansatz) -> None:
    """Test constraint types that cannot be used."""
    with pytest.raises(UsageError, match="different dimension pairs"):
        homogeneous_equations(b1_ansatz, registry.get("Fold", PAIR_2_2))
    with pytest.raises(UsageError, match="cannot constrain itself"):
        homogeneous_equations(b1_ansatz, b1)
    with pytest.raises(UsageError, match="codimension"):
        homogeneous_equations(b1_ansatz, registry.get("S2", PAIR_2_3))


def test_ansatz_basis_checks(b1: SingularityType) -> None:
    """Test explicit bases that do not list the monomials exactly once."""
    with pytest.raises(UsageError, match="exactly once"):
        Ansatz.from_monomials(b1, ["c1^3", "c1*c2"])
    with pytest.raises(UsageError, match="single monomial"):
        Ansatz.from_monomials(b1, ["c1^3 + cp3"])


def test_report_to_dict(registry: Registry, b1: SingularityType) -> None:
    """Test the serialized solve report."""
    _, report = solve_tp(b1, registry=registry)
    data = report.to_dict()
    assert data["type"] == "B1"
    assert data["pair"] == [2, 3]
    assert data["unknowns"] == 9
    assert data["unique"] is True
    assert len(data["equations"]) == 11
    assert data["tp"] == report.tp
