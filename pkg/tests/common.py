"""Provide common test helpers."""

import itertools
import pathlib
import random

from thompoly.polycore import GradedPoly, Monomial, VarTable, monomial_basis


def get_fixture_path(filename: str) -> pathlib.Path:
    """Get path of fixture."""
    return pathlib.Path(__file__).parent.joinpath("fixtures", filename)


def load_fixture(filename: str) -> str:
    """Load a fixture."""
    return get_fixture_path(filename).read_text(encoding="utf8")


def brute_force_basis(table: VarTable, degree: int) -> set[Monomial]:
    """Every exponent vector of weighted degree ``degree``, by exhaustion."""
    ranges = [range(degree // weight + 1) for weight in table.weights]
    padding = (0,) * len(table.params)
    return {
        (*exponents, *padding)
        for exponents in itertools.product(*ranges)
        if sum(e * w for e, w in zip(exponents, table.weights, strict=True)) == degree
    }


def random_poly(
    rng: random.Random, table: VarTable, max_degree: int, terms: int = 4
) -> GradedPoly:
    """A random polynomial with small integer coefficients."""
    result = GradedPoly.zero(table)
    for _ in range(terms):
        degree = rng.randint(0, max_degree)
        basis = monomial_basis(table, degree)
        result = result + GradedPoly.monomial(table, rng.choice(basis), rng.randint(-5, 5))
    return result
