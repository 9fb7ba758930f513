"""Published Thom polynomials and enumerative formulas used as reference values.

Entries are kept as text exactly as tabulated; helpers parse them into
:class:`GradedPoly` values over the appropriate variable table.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .cohomology import expand_quotient_form
from .const import (
    COMPLETE_INTERSECTION_CHARS,
    ORDINARY_CHARS,
    PAIR_2_2,
    PAIR_2_3,
    PAIR_3_3,
    PRIMAL_CHARS,
    SURFACE_CHARS,
)
from .exceptions import UnknownTypeError
from .polycore import GradedPoly, VarTable, chern_table, params_table

MODE_SOLVE = "solve"
MODE_CLOSED_FORM = "closed-form"


@dataclass(frozen=True)
class GoldenEntry:
    """A published Thom polynomial."""

    name: str
    pair: tuple[int, int]
    codim: int
    text: str
    mode: str = MODE_SOLVE
    variants: dict[str, str] = field(default_factory=dict)

    def polynomial(self) -> GradedPoly:
        """The entry expanded in source and target Chern classes."""
        return _expand(self.text, self.pair, self.codim)

    def variant_polynomial(self, key: str) -> GradedPoly:
        """A conflicting published form, expanded."""
        return _expand(self.variants[key], self.pair, self.codim)

    def to_dict(self) -> dict[str, Any]:
        """Return a dictionary representation."""
        return {
            "name": self.name,
            "pair": list(self.pair),
            "codim": self.codim,
            "text": self.text,
            "mode": self.mode,
            "variants": dict(self.variants),
        }


def _expand(text: str, pair: tuple[int, int], codim: int) -> GradedPoly:
    m, n = pair
    parsed = GradedPoly.parse(chern_table(m, n, quotient=max(codim, 1)), text)
    return expand_quotient_form(parsed, chern_table(m, n))


VARIANT_TABLE = "table"
VARIANT_STABLE_SERIES = "stable-series"

_SWALLOWTAIL = "cb1^3 + 3*cb1*cb2 + 2*cb3"
_BUTTERFLY = "cb1^4 + 6*cb1^2*cb2 + 2*cb2^2 + 9*cb1*cb3 + 6*cb4"
_SHARKSFIN = "cb2^2 - cb1*cb3"

TP_2_2 = (
    GoldenEntry("Fold", PAIR_2_2, 1, "cb1"),
    GoldenEntry("Cusp", PAIR_2_2, 2, "cb1^2 + cb2"),
    GoldenEntry(
        "Lips/Beaks",
        PAIR_2_2,
        3,
        "-2*c1^3 + 5*c1^2*cp1 - 4*c1*cp1^2 - c1*c2 + c2*cp1 + cp1^3",
    ),
    GoldenEntry(
        "Swallowtail",
        PAIR_2_2,
        3,
        _SWALLOWTAIL,
        variants={
            VARIANT_TABLE: _SWALLOWTAIL,
            VARIANT_STABLE_SERIES: "cb1^3 + 3*cb1*cb2 + cb3",
        },
    ),
    GoldenEntry(
        "Goose",
        PAIR_2_2,
        4,
        "2*c1^4 + 5*c1^2*c2 + 4*c2^2 - 7*c1^3*cp1 - 10*c1*c2*cp1 + 9*c1^2*cp1^2"
        " + 5*c2*cp1^2 - 5*c1*cp1^3 + cp1^4 - 2*c1^2*cp2 - 6*c2*cp2 + 4*c1*cp1*cp2"
        " - 2*cp1^2*cp2 + 2*cp2^2",
    ),
    GoldenEntry(
        "Gulls",
        PAIR_2_2,
        4,
        "6*c1^4 - c1^2*c2 - 4*c2^2 - 17*c1^3*cp1 + 4*c1*c2*cp1 + 17*c1^2*cp1^2"
        " - 3*c2*cp1^2 - 7*c1*cp1^3 + cp1^4 + 2*c1^2*cp2 + 6*c2*cp2 - 4*c1*cp1*cp2"
        " + 2*cp1^2*cp2 - 2*cp2^2",
    ),
    GoldenEntry("Butterfly", PAIR_2_2, 4, _BUTTERFLY, MODE_CLOSED_FORM),
    GoldenEntry("Sharksfin", PAIR_2_2, 4, _SHARKSFIN, MODE_CLOSED_FORM),
)

_H2 = "cb2^2 + cb1*cb3 + 2*cb4"

TP_2_3 = (
    GoldenEntry("S0", PAIR_2_3, 2, "cb2"),
    GoldenEntry(
        "B1",
        PAIR_2_3,
        3,
        "-3*c1^3 + 4*c1*c2 + 4*c1^2*cp1 - 2*c2*cp1 - c1*cp1^2 - 3*c1*cp2 + cp1*cp2 + cp3",
    ),
    GoldenEntry(
        "S2",
        PAIR_2_3,
        4,
        "13*c1^4 - 22*c1^2*c2 + 3*c2^2 - 21*c1^3*cp1 + 19*c1*c2*cp1 + 9*c1^2*cp1^2"
        " - 3*c2*cp1^2 - c1*cp1^3 + 14*c1^2*cp2 - 4*c2*cp2 - 9*c1*cp1*cp2"
        " + cp1^2*cp2 + cp2^2 - 6*c1*cp3 + 2*cp1*cp3",
    ),
    GoldenEntry(
        "B2",
        PAIR_2_3,
        4,
        "11*c1^4 - 22*c1^2*c2 + c2^2 - 17*c1^3*cp1 + 21*c1*c2*cp1 + 7*c1^2*cp1^2"
        " - 5*c2*cp1^2 - c1*cp1^3 + 10*c1^2*cp2 - 5*c1*cp1*cp2 + cp1^2*cp2"
        " - cp2^2 - 10*c1*cp3 + 4*cp1*cp3",
    ),
    GoldenEntry(
        "H2",
        PAIR_2_3,
        4,
        _H2,
        variants={
            VARIANT_TABLE: _H2,
            VARIANT_STABLE_SERIES: "cb2^2 + cb1*cb3 + cb4",
        },
    ),
    GoldenEntry(
        "S3",
        PAIR_2_3,
        5,
        "-71*c1^5 + 149*c1^3*c2 - 48*c1*c2^2 + 132*c1^4*cp1 - 174*c1^2*c2*cp1"
        " + 20*c2^2*cp1 - 76*c1^3*cp1^2 + 53*c1*c2*cp1^2 + 16*c1^2*cp1^3"
        " - 4*c2*cp1^3 - c1*cp1^4 - 82*c1^3*cp2 + 53*c1*c2*cp2 + 75*c1^2*cp1*cp2"
        " - 17*c2*cp1*cp2 - 18*c1*cp1^2*cp2 + cp1^3*cp2 - 11*c1*cp2^2"
        " + 3*cp1*cp2^2 + 39*c1^2*cp3 - 9*c2*cp3 - 24*c1*cp1*cp3 + 3*cp1^2*cp3"
        " + 3*cp2*cp3",
    ),
    GoldenEntry(
        "B3",
        PAIR_2_3,
        5,
        "-110*c1^5 + 286*c1^3*c2 - 76*c1*c2^2 + 192*c1^4*cp1 - 356*c1^2*c2*cp1"
        " + 32*c2^2*cp1 - 104*c1^3*cp1^2 + 134*c1*c2*cp1^2 + 24*c1^2*cp1^3"
        " - 16*c2*cp1^3 - 2*c1*cp1^4 - 100*c1^3*cp2 + 54*c1*c2*cp2"
        " + 70*c1^2*cp1*cp2 - 18*c2*cp1*cp2 - 20*c1*cp1^2*cp2 + 2*cp1^3*cp2"
        " + 10*c1*cp2^2 - 2*cp1*cp2^2 + 106*c1^2*cp3 - 6*c2*cp3 - 72*c1*cp1*cp3"
        " + 14*cp1^2*cp3 - 6*cp2*cp3",
    ),
    GoldenEntry(
        "H3",
        PAIR_2_3,
        5,
        "-48*c1^5 + 156*c1^3*c2 - 90*c1*c2^2 + 80*c1^4*cp1 - 182*c1^2*c2*cp1"
        " + 42*c2^2*cp1 - 36*c1^3*cp1^2 + 48*c1*c2*cp1^2 + 4*c1^2*cp1^3"
        " - 2*c2*cp1^3 - 60*c1^3*cp2 + 84*c1*c2*cp2 + 46*c1^2*cp1*cp2"
        " - 26*c2*cp1*cp2 - 6*c1*cp1^2*cp2 - 12*c1*cp2^2 + 2*cp1*cp2^2"
        " + 45*c1^2*cp3 - 27*c2*cp3 - 27*c1*cp1*cp3 + 2*cp1^2*cp3 + 9*cp2*cp3",
    ),
    GoldenEntry(
        "C3",
        PAIR_2_3,
        5,
        "-33*c1^5 + 66*c1^3*c2 - 3*c1*c2^2 + 62*c1^4*cp1 - 85*c1^2*c2*cp1"
        " + c2^2*cp1 - 38*c1^3*cp1^2 + 36*c1*c2*cp1^2 + 10*c1^2*cp1^3"
        " - 5*c2*cp1^3 - c1*cp1^4 - 30*c1^3*cp2 + 25*c1^2*cp1*cp2"
        " - 8*c1*cp1^2*cp2 + cp1^3*cp2 + 3*c1*cp2^2 - cp1*cp2^2 + 30*c1^2*cp3"
        " - 22*c1*cp1*cp3 + 4*cp1^2*cp3",
    ),
    GoldenEntry(
        "P3",
        PAIR_2_3,
        5,
        "-16*c1^5 + 48*c1^3*c2 - 24*c1*c2^2 + 28*c1^4*cp1 - 58*c1^2*c2*cp1"
        " + 11*c2^2*cp1 - 14*c1^3*cp1^2 + 17*c1*c2*cp1^2 + 2*c1^2*cp1^3"
        " - c2*cp1^3 - 20*c1^3*cp2 + 24*c1*c2*cp2 + 17*c1^2*cp1*cp2"
        " - 8*c2*cp1*cp2 - 3*c1*cp1^2*cp2 - 4*c1*cp2^2 + cp1*cp2^2 + 14*c1^2*cp3"
        " - 6*c2*cp3 - 9*c1*cp1*cp3 + cp1^2*cp3 + 2*cp2*cp3",
        MODE_CLOSED_FORM,
    ),
)

TP_3_3 = (
    GoldenEntry("A1", PAIR_3_3, 1, "cb1"),
    GoldenEntry("A2", PAIR_3_3, 2, "cb1^2 + cb2"),
    GoldenEntry(
        "A3",
        PAIR_3_3,
        3,
        _SWALLOWTAIL,
        variants={
            VARIANT_TABLE: _SWALLOWTAIL,
            VARIANT_STABLE_SERIES: "cb1^3 + 3*cb1*cb2 + cb3",
        },
    ),
    GoldenEntry("A4", PAIR_3_3, 4, _BUTTERFLY),
    GoldenEntry(
        "C",
        PAIR_3_3,
        4,
        "2*c1^4 + c1^2*c2 - 2*c2^2 + 3*c1*c3 - 7*c1^3*cp1 - 3*c3*cp1 + 9*c1^2*cp1^2"
        " - c2*cp1^2 - 5*c1*cp1^3 + cp1^4 - 2*c1^2*cp2 + 4*c2*cp2 + 2*c1*cp1*cp2"
        " - 2*cp2^2 - 2*c1*cp3 + 2*cp1*cp3",
    ),
    GoldenEntry(
        "D",
        PAIR_3_3,
        4,
        "18*c1^4 - 21*c1^2*c2 - 2*c2^2 + 8*c1*c3 - 45*c1^3*cp1 + 31*c1*c2*cp1"
        " - 6*c3*cp1 + 40*c1^2*cp1^2 - 12*c2*cp1^2 - 15*c1*cp1^3 + 2*cp1^4"
        " + 13*c1^2*cp2 + 4*c2*cp2 - 17*c1*cp1*cp2 + 6*cp1^2*cp2 - 2*cp2^2"
        " - 8*c1*cp3 + 6*cp1*cp3",
    ),
    GoldenEntry("I22", PAIR_3_3, 4, _SHARKSFIN, MODE_CLOSED_FORM),
)

# Stable germs (n, n+1) written in quotient classes; A1 coincides with the S0 row
STABLE_SERIES = (
    GoldenEntry(
        "A2",
        PAIR_2_3,
        4,
        _H2,
        MODE_CLOSED_FORM,
        variants={
            VARIANT_TABLE: _H2,
            VARIANT_STABLE_SERIES: "cb2^2 + cb1*cb3 + cb4",
        },
    ),
)

GOLDEN_TP: dict[tuple[int, int], tuple[GoldenEntry, ...]] = {
    PAIR_2_2: TP_2_2,
    PAIR_2_3: TP_2_3,
    PAIR_3_3: TP_3_3,
}


def golden_entry(name: str, pair: tuple[int, int]) -> GoldenEntry:
    """The published entry for ``name`` in a dimension pair."""
    for entry in GOLDEN_TP.get(tuple(pair), ()):
        if entry.name == name:
            return entry
    msg = f"No published Thom polynomial for {name!r} in pair {tuple(pair)}"
    raise UnknownTypeError(msg)


def golden_tp(name: str, pair: tuple[int, int] | None = None) -> GradedPoly:
    """The published Thom polynomial, expanded in source and target classes."""
    if pair is not None:
        return golden_entry(name, pair).polynomial()
    matches = [entry for entries in GOLDEN_TP.values() for entry in entries if entry.name == name]
    if not matches:
        msg = f"No published Thom polynomial for {name!r}"
        raise UnknownTypeError(msg)
    if len(matches) > 1:
        pairs = ", ".join(str(entry.pair) for entry in matches)
        msg = f"Name {name!r} is published for several pairs ({pairs})"
        raise UnknownTypeError(msg)
    return matches[0].polynomial()


# Surfaces in P^3, in the characters d, xi1, xi2, xi01
P3_SURFACE = {
    "Lips/Beaks": "8*d - 4*xi1",
    "Swallowtail": "20*d - 11*xi1",
    "Butterfly": "5*(30*d - 5*xi01 + 12*(-3*xi1 + xi2))",
    "Gulls": "62*d + 3*xi01 - 72*xi1 + 19*xi2",
    "Sharksfin": "6*d - xi01 - 4*xi1 + xi2",
    "Goose": "22*d - xi01 - 24*xi1 + 7*xi2",
}

P3_LOCUS_NAMES = {
    "Lips/Beaks": "parabolic curve",
    "Swallowtail": "flecnodal curve",
    "Butterfly": "degenerate flecnodal points",
    "Gulls": "cusps of Gauss",
    "Sharksfin": "crosscaps",
    "Goose": "goose points",
}

# Surfaces in P^3 with ordinary singularities, in d, eps0, C, T
P3_ORDINARY = {
    "Lips/Beaks": "4*d*(d - 2) - 8*eps0",
    "Swallowtail": "d*(11*d - 24) - 22*eps0",
    "Butterfly": "5*d*(d - 4)*(7*d - 12) - 10*C + 105*T + 5*eps0*(80 - 21*d)",
    "Gulls": "2*d*(d - 2)*(11*d - 24) - 25*C + 66*T + eps0*(184 - 66*d)",
    "Sharksfin": "C",
    "Goose": "2*d*(d - 2)*(3*d - 8) - 5*C + 18*T + eps0*(56 - 18*d)",
}

# Smooth surfaces of degree d in P^3
P3_SMOOTH = {
    "Lips/Beaks": "4*d*(d - 2)",
    "Swallowtail": "d*(11*d - 24)",
    "Butterfly": "5*d*(d - 4)*(7*d - 12)",
    "Gulls": "2*d*(d - 2)*(11*d - 24)",
    "Sharksfin": "0",
}

P4_SURFACE = {
    "B1": "2*d",
    "B2": "25*d - 16*xi1",
    "H2": "10*d - 6*xi1",
    "H3": "5*(42*d - 11*xi01 - 51*xi1 + 19*xi2)",
    "P3": "80*d - 15*xi01 - 95*xi1 + 33*xi2",
}

P4_COMPLETE_INTERSECTION = {
    "B2": "d1*d2*(16*d1 + 16*d2 - 55)",
    "H2": "d1*d2*(6*d1 + 6*d2 - 20)",
    "H3": "5*d1*d2*(8*d1^2 + 8*d2^2 + 27*d1*d2 - 84*d1 - 84*d2 + 152)",
    "P3": "d1*d2*(18*d1^2 + 18*d2^2 + 51*d1*d2 - 160*d1 - 160*d2 + 280)",
}

P4_PRIMAL = {
    "A3": "6*d",
    "A4": "10*d*(5*d - 12)",
    "C": "5*d*(d - 2)",
    "D": "10*d*(4*d - 9)",
    "I22": "0",
}

# Stable multi-singularities of maps from a surface to P^3
MULTI_TP = {
    "A0^2": "s0 - cb1",
    "A1": "cb2",
    "A0^3": "1/2*(s0^2 - s1 - 2*s0*cb1 + 2*cb1^2 + 2*cb2)",
}
MULTI_TABLE = VarTable(("cb1", "cb2", "s0", "s1"), (1, 2, 1, 2))

# Double curve, triple points and pinch points of an ordinary surface
MULTI_CHARACTERS = {
    "C": "6*d - 4*xi1 + xi2 - xi01",
    "T": "1/6*(44*d - 12*d^2 + d^3 - 24*xi1 + 3*d*xi1 + 4*xi2 - 2*xi01)",
    "eps0": "1/2*(d^2 - 4*d + xi1)",
}

ORDINARY_TO_SURFACE = {
    "xi1": "d*(4 - d) + 2*eps0",
    "xi2": "d*(d - 4)^2 + (16 - 3*d)*eps0 + 3*T - C",
    "xi01": "d*(d^2 - 4*d + 6) + (8 - 3*d)*eps0 + 3*T - 2*C",
}


def character_formula(text: str, characters: tuple[str, ...]) -> GradedPoly:
    """Parse a formula in weight-zero characters."""
    return GradedPoly.parse(params_table(characters), text)


def surface_formula(text: str) -> GradedPoly:
    """A formula in ``d, xi1, xi2, xi01``."""
    return character_formula(text, SURFACE_CHARS)


def ordinary_formula(text: str) -> GradedPoly:
    """A formula in ``d, eps0, C, T``."""
    return character_formula(text, ORDINARY_CHARS)


def complete_intersection_formula(text: str) -> GradedPoly:
    """A formula in ``d1, d2``."""
    return character_formula(text, COMPLETE_INTERSECTION_CHARS)


def primal_formula(text: str) -> GradedPoly:
    """A formula in ``d``."""
    return character_formula(text, PRIMAL_CHARS)


def multi_tp(name: str) -> GradedPoly:
    """A multi-singularity Thom polynomial in ``cb1, cb2, s0, s1``."""
    try:
        return GradedPoly.parse(MULTI_TABLE, MULTI_TP[name])
    except KeyError as err:
        msg = f"Unknown multi-singularity {name!r}"
        raise UnknownTypeError(msg) from err
