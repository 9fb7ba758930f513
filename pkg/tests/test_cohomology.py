"""Test quotient rings, Chern class calculus and Gysin pushforward."""

import random

import pytest

from thompoly.cohomology import (
    ChernVector,
    expand_quotient_form,
    flag_ring,
    flag_target_chern,
    gysin_pushforward,
    integrate_pn,
    quotient_bindings,
    reduce,
    twist_chern,
)
from thompoly.exceptions import UsageError
from thompoly.polycore import GradedPoly, VarTable, chern_table
from thompoly.solver import is_quotient_form
from tests.common import random_poly


@pytest.mark.parametrize(
    ("n", "monomial", "expected"),
    [
        (3, "t^2", "1"),
        (3, "t^3", "-a"),
        (3, "t", "0"),
        (3, "a*t^2", "a"),
        (4, "t^3", "1"),
        (4, "t^4", "-a"),
        (4, "t^5", "0"),
    ],
)
def test_fiber_integrals(n: int, monomial: str, expected: str) -> None:
    """Test Gysin images of fiber powers on the flag manifold."""
    ring = flag_ring(n)
    pushed = ring.gysin(ring.element(monomial))
    assert pushed == GradedPoly.parse(ring.base_table, expected)


def test_relation() -> None:
    """Test the monic fiber relation."""
    ring = flag_ring(3)
    assert ring.relation() == ring.element("t^3 + a*t^2 + a^2*t + a^3")
    assert ring.reduce(ring.relation()).is_zero()


def test_base_degree_bound() -> None:
    """Test that classes above the base dimension vanish."""
    ring = flag_ring(3)
    assert reduce(ring.element("a^4"), ring).is_zero()
    assert reduce(ring.element("a^3*t"), ring) == ring.element("a^3*t")


@pytest.mark.parametrize("n", [3, 4])
def test_reduce_idempotent(n: int) -> None:
    """Test that the normal form is stable under a second reduction."""
    rng = random.Random(31 + n)
    ring = flag_ring(n)
    for _ in range(1000):
        x = random_poly(rng, ring.table, n + 3, terms=3)
        once = ring.reduce(x)
        assert ring.reduce(once) == once


@pytest.mark.parametrize("n", [3, 4])
def test_gysin_ignores_the_relation(n: int) -> None:
    """Test that pushforward is additive and kills multiples of the fiber relation."""
    rng = random.Random(47 + n)
    ring = flag_ring(n)
    relation = ring.relation()
    for _ in range(1000):
        x = random_poly(rng, ring.table, n + 2, terms=3)
        y = random_poly(rng, ring.table, 2, terms=2)
        assert ring.reduce(relation * y).is_zero()
        assert gysin_pushforward(x + relation * y, ring) == gysin_pushforward(x, ring)
        assert gysin_pushforward(x + y, ring) == gysin_pushforward(x, ring) + gysin_pushforward(y, ring)


def test_reduce_respects_products() -> None:
    """Test that reduction is compatible with multiplication."""
    rng = random.Random(5)
    ring = flag_ring(4)
    for _ in range(100):
        x = random_poly(rng, ring.table, 3, terms=3)
        y = random_poly(rng, ring.table, 3, terms=3)
        assert ring.reduce(ring.reduce(x) * ring.reduce(y)) == ring.reduce(x * y)


def test_integrate_pn() -> None:
    """Test degrees of classes on projective space."""
    table = VarTable(("a",), (1,))
    assert integrate_pn(GradedPoly.parse(table, "5*a^3 + a"), 3) == 5
    assert integrate_pn(GradedPoly.parse(table, "a^2"), 3) == 0


def test_quotient_classes_vanish_on_equal_bundles() -> None:
    """Test that every quotient class vanishes when source equals target."""
    table = chern_table(2, 3)
    bindings = quotient_bindings(table, 5)
    assert sorted(bindings) == ["cb1", "cb2", "cb3", "cb4", "cb5"]
    for value in bindings.values():
        assert is_quotient_form(value)


def test_quotient_class_expansions() -> None:
    """Test the first quotient classes in source and target classes."""
    table = chern_table(2, 3)
    bindings = quotient_bindings(table, 2)
    assert bindings["cb1"] == GradedPoly.parse(table, "cp1 - c1")
    assert bindings["cb2"] == GradedPoly.parse(table, "c1^2 - c2 - c1*cp1 + cp2")


def test_expand_quotient_form() -> None:
    """Test rewriting a polynomial in quotient classes."""
    table = chern_table(2, 2)
    cusp = GradedPoly.parse(chern_table(2, 2, quotient=2), "cb1^2 + cb2")
    assert expand_quotient_form(cusp, table) == GradedPoly.parse(
        table, "2*c1^2 - 3*c1*cp1 + cp1^2 - c2 + cp2"
    )


def test_twist_chern() -> None:
    """Test Chern classes of a line bundle twist."""
    table = VarTable(("h", "x1", "x2"), (1, 1, 2))
    bundle = ChernVector((GradedPoly.var(table, "x1"), GradedPoly.var(table, "x2")))
    twisted = twist_chern(GradedPoly.var(table, "h"), bundle)
    assert twisted[1] == GradedPoly.parse(table, "x1 + 2*h")
    assert twisted[2] == GradedPoly.parse(table, "x2 + h*x1 + h^2")


def test_twist_needs_degree_one() -> None:
    """Test twisting by a class of the wrong degree."""
    table = VarTable(("h",), (1,))
    bundle = ChernVector((GradedPoly.var(table, "h"),))
    with pytest.raises(UsageError):
        twist_chern(GradedPoly.parse(table, "h^2"), bundle)


def test_flag_target_chern_p3() -> None:
    """Test the target classes of the flag construction over P^3."""
    ring = flag_ring(3)
    target = flag_target_chern(3, ring)
    assert target.rank == 2
    assert target[1] == ring.element("3*a + t")


def test_flag_target_chern_unsupported() -> None:
    """Test an ambient dimension without a flag construction."""
    with pytest.raises(UsageError, match="available for n"):
        flag_target_chern(5)


def test_gysin_pushforward_is_base_linear() -> None:
    """Test that base classes pull out of the pushforward."""
    ring = flag_ring(4)
    x = ring.element("t^4 + 2*t^3")
    base = ring.element("a")
    pushed = gysin_pushforward(x, ring)
    assert pushed == GradedPoly.parse(ring.base_table, "2 - a")
    assert gysin_pushforward(base * x, ring) == pushed * GradedPoly.parse(ring.base_table, "a")
