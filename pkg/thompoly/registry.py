"""Catalogue of singularity types with their torus weight systems."""

from __future__ import annotations

import json
import logging
import re
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Any

import voluptuous as vol
from sympy import Poly, Symbol
from sympy.core.sympify import SympifyError
from sympy.parsing.sympy_parser import convert_xor, parse_expr, standard_transformations

from .cohomology import expand_quotient_form
from .const import DOMAIN, REGISTRY_KEYS, REGISTRY_RESOURCE, TYPE_ALIASES
from .exceptions import UnknownTypeError, UsageError, ValidationError
from .polycore import GradedPoly, chern_table

_LOGGER = logging.getLogger(__name__)

Weight = tuple[int, ...]
Pair = tuple[int, int]

COORDINATES = ("x", "y", "z")
_NORMAL_FORM = re.compile(r"normal form \(([^()]*)\)")

_WEIGHTS = [[int]]

RECORD_SCHEMA = vol.Schema(
    {
        vol.Required("name"): vol.All(str, vol.Length(min=1)),
        vol.Required("source_dim"): vol.All(int, vol.Range(min=1)),
        vol.Required("target_dim"): vol.All(int, vol.Range(min=1)),
        vol.Required("codim"): vol.All(int, vol.Range(min=0)),
        vol.Required("torus_rank"): vol.All(int, vol.Range(min=1)),
        vol.Required("source_weights"): _WEIGHTS,
        vol.Required("target_weights"): _WEIGHTS,
        vol.Required("unfolding_weights"): _WEIGHTS,
        vol.Required("normal_weights"): _WEIGHTS,
        vol.Required("known_tp"): vol.Any(None, str),
        vol.Required("solvable"): bool,
        vol.Required("notes"): str,
    }
)


def _weights(rows: Iterable[Iterable[int]]) -> tuple[Weight, ...]:
    return tuple(tuple(int(v) for v in row) for row in rows)


@dataclass(frozen=True)
class SingularityType:
    """A singularity type with the torus data of its normal form."""

    name: str
    source_dim: int
    target_dim: int
    codim: int
    torus_rank: int
    source_weights: tuple[Weight, ...]
    target_weights: tuple[Weight, ...]
    unfolding_weights: tuple[Weight, ...] = ()
    normal_weights: tuple[Weight, ...] = ()
    known_tp: str | None = None
    solvable: bool = True
    notes: str = ""

    @property
    def pair(self) -> Pair:
        """The dimension pair ``(m, n)``."""
        return (self.source_dim, self.target_dim)

    @property
    def label(self) -> str:
        """Name qualified by the dimension pair."""
        return f"{self.name} ({self.source_dim},{self.target_dim})"

    @property
    def has_modulus(self) -> bool:
        """Return True when some normal direction has zero torus weight."""
        return any(not any(w) for w in self.normal_weights)

    @property
    def has_weights(self) -> bool:
        """Return True when the type carries usable torus data."""
        return bool(self.source_weights) and bool(self.target_weights)

    def normal_form(self) -> tuple[str, ...] | None:
        """Components of the normal form recorded in the notes."""
        match = _NORMAL_FORM.search(self.notes)
        if match is None:
            return None
        return tuple(part.strip() for part in match.group(1).split(","))

    def known_polynomial(self) -> GradedPoly | None:
        """The stored closed form, expanded in source and target classes."""
        if self.known_tp is None:
            return None
        quotient_table = chern_table(self.source_dim, self.target_dim, quotient=max(self.codim, 1))
        parsed = GradedPoly.parse(quotient_table, self.known_tp)
        return expand_quotient_form(parsed, chern_table(self.source_dim, self.target_dim))

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> SingularityType:
        """Build a type from a registry record."""
        try:
            record = RECORD_SCHEMA(dict(data))
        except vol.Invalid as err:
            name = data.get("name", "?") if isinstance(data, Mapping) else "?"
            msg = f"Malformed registry record {name!r}: {err}"
            raise ValidationError(msg, [str(err)]) from err
        return cls(
            name=record["name"],
            source_dim=record["source_dim"],
            target_dim=record["target_dim"],
            codim=record["codim"],
            torus_rank=record["torus_rank"],
            source_weights=_weights(record["source_weights"]),
            target_weights=_weights(record["target_weights"]),
            unfolding_weights=_weights(record["unfolding_weights"]),
            normal_weights=_weights(record["normal_weights"]),
            known_tp=record["known_tp"],
            solvable=record["solvable"],
            notes=record["notes"],
        )

    def to_dict(self) -> dict[str, Any]:
        """Return the registry record, keys in file order."""
        values = {
            "name": self.name,
            "source_dim": self.source_dim,
            "target_dim": self.target_dim,
            "codim": self.codim,
            "torus_rank": self.torus_rank,
            "source_weights": [list(w) for w in self.source_weights],
            "target_weights": [list(w) for w in self.target_weights],
            "unfolding_weights": [list(w) for w in self.unfolding_weights],
            "normal_weights": [list(w) for w in self.normal_weights],
            "known_tp": self.known_tp,
            "solvable": self.solvable,
            "notes": self.notes,
        }
        return {key: values[key] for key in REGISTRY_KEYS}


def _weight_text(weight: Weight) -> str:
    return str(weight[0]) if len(weight) == 1 else str(weight)


def _component_diagnostics(t: SingularityType, components: tuple[str, ...]) -> list[str]:
    coords = COORDINATES[: t.source_dim]
    if len(components) != t.target_dim:
        return [f"{t.label}: normal form has {len(components)} components, expected {t.target_dim}"]
    local = {name: Symbol(name) for name in coords}
    diagnostics = []
    for index, (text, target) in enumerate(zip(components, t.target_weights, strict=True), start=1):
        try:
            expr = parse_expr(
                text, local_dict=local, transformations=(*standard_transformations, convert_xor)
            )
        except (SyntaxError, TypeError, SympifyError) as err:
            diagnostics.append(f"{t.label}: component {index} {text!r} cannot be parsed: {err}")
            continue
        if expr == 0:
            continue
        monoms = Poly(expr, *(local[name] for name in coords)).monoms()
        for monom in monoms:
            degree = tuple(
                sum(e * w[k] for e, w in zip(monom, t.source_weights, strict=True))
                for k in range(t.torus_rank)
            )
            if degree != target:
                diagnostics.append(
                    f"{t.label}: component {text} not homogeneous of degree {_weight_text(target)}"
                )
                break
    return diagnostics


def validate(t: SingularityType) -> list[str]:
    """Check the invariants of one type and return human-readable diagnostics."""
    diagnostics: list[str] = []
    for label, rows, length in (
        ("source_weights", t.source_weights, t.source_dim),
        ("target_weights", t.target_weights, t.target_dim),
    ):
        if len(rows) != length:
            diagnostics.append(f"{t.label}: {label} has {len(rows)} vectors, expected {length}")
    for label, rows in (
        ("source_weights", t.source_weights),
        ("target_weights", t.target_weights),
        ("unfolding_weights", t.unfolding_weights),
        ("normal_weights", t.normal_weights),
    ):
        for row in rows:
            if len(row) != t.torus_rank:
                diagnostics.append(
                    f"{t.label}: {label} vector {list(row)} does not have rank {t.torus_rank}"
                )
    if diagnostics:
        return diagnostics

    components = t.normal_form()
    if components is not None:
        diagnostics.extend(_component_diagnostics(t, components))

    if len(t.normal_weights) != t.codim:
        diagnostics.append(
            f"{t.label}: {len(t.normal_weights)} normal weights for codimension {t.codim}"
        )
    slice_weights = t.source_weights + t.unfolding_weights
    if len(slice_weights) == t.codim and sorted(slice_weights) != sorted(t.normal_weights):
        diagnostics.append(
            f"{t.label}: normal weights differ from source and unfolding weights"
        )

    if t.known_tp is not None:
        try:
            known = t.known_polynomial()
        except UsageError as err:
            diagnostics.append(f"{t.label}: known_tp cannot be parsed: {err}")
        else:
            if known is not None and not known.is_homogeneous(t.codim):
                diagnostics.append(f"{t.label}: known_tp is not homogeneous of degree {t.codim}")
    return diagnostics


@dataclass
class Registry:
    """Lookup of singularity types by dimension pair and name."""

    types: list[SingularityType] = field(default_factory=list)

    def __post_init__(self) -> None:
        """Index the types."""
        self._index: dict[tuple[Pair, str], SingularityType] = {}
        for t in self.types:
            key = (t.pair, t.name)
            if key in self._index:
                msg = f"Duplicate registry entry {t.label}"
                raise ValidationError(msg, [msg])
            self._index[key] = t

    def __iter__(self) -> Iterator[SingularityType]:
        """Iterate in registry order."""
        return iter(self.types)

    def __len__(self) -> int:
        """Number of types."""
        return len(self.types)

    def __contains__(self, key: object) -> bool:
        """Return True for a known ``(pair, name)`` key."""
        return key in self._index

    def pairs(self) -> list[Pair]:
        """Dimension pairs in registry order."""
        return list(dict.fromkeys(t.pair for t in self.types))

    def types_for(self, pair: Pair) -> list[SingularityType]:
        """Types of one dimension pair in registry order."""
        return [t for t in self.types if t.pair == tuple(pair)]

    def _resolve(self, name: str, pair: Pair) -> SingularityType | None:
        aliases = TYPE_ALIASES.get(pair, {})
        for candidate in (name, aliases.get(name)):
            if candidate is not None and (pair, candidate) in self._index:
                return self._index[(pair, candidate)]
        lowered = name.lower()
        for (key_pair, key_name), t in self._index.items():
            if key_pair == pair and key_name.lower() == lowered:
                return t
        return None

    def get(self, name: str, pair: Pair | None = None) -> SingularityType:
        """Look up a type by name or alias, optionally restricted to a pair."""
        pairs = [tuple(pair)] if pair is not None else self.pairs()
        found = [t for p in pairs if (t := self._resolve(name, p)) is not None]
        if not found:
            where = f" for pair {tuple(pair)}" if pair is not None else ""
            msg = f"Unknown singularity type {name!r}{where}"
            raise UnknownTypeError(msg)
        if len(found) > 1:
            labels = ", ".join(t.label for t in found)
            msg = f"Type name {name!r} is ambiguous ({labels}); give the dimension pair"
            raise UnknownTypeError(msg)
        return found[0]

    def merge(self, other: Iterable[SingularityType]) -> Registry:
        """New registry with ``other`` replacing or extending these types."""
        merged = {(t.pair, t.name): t for t in self.types}
        for t in other:
            if (t.pair, t.name) in merged:
                _LOGGER.info("Registry entry %s overridden", t.label)
            merged[(t.pair, t.name)] = t
        return Registry(list(merged.values()))

    def validate_all(self) -> dict[str, list[str]]:
        """Diagnostics per type label, omitting clean types."""
        report = {}
        for t in self.types:
            diagnostics = validate(t)
            if diagnostics:
                report[t.label] = diagnostics
        return report

    def to_json(self) -> str:
        """Serialize to the registry file format."""
        return json.dumps([t.to_dict() for t in self.types], indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str, *, source: str = DOMAIN, check: bool = True) -> Registry:
        """Parse a registry document and optionally validate every entry."""
        try:
            records = json.loads(text)
        except json.JSONDecodeError as err:
            msg = f"Registry {source} is not valid JSON: {err}"
            raise ValidationError(msg, [str(err)]) from err
        if not isinstance(records, list):
            msg = f"Registry {source} must hold a list of records"
            raise ValidationError(msg, [msg])
        registry = cls([SingularityType.from_dict(record) for record in records])
        if check:
            report = registry.validate_all()
            if report:
                diagnostics = [line for lines in report.values() for line in lines]
                msg = f"Registry {source} failed validation: {diagnostics[0]}"
                raise ValidationError(msg, diagnostics)
        _LOGGER.debug("Loaded %s registry entries from %s", len(registry), source)
        return registry


def load_registry(path: str | Path) -> Registry:
    """Load and validate a registry file."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as err:
        msg = f"Cannot read registry file {path}: {err}"
        raise UsageError(msg) from err
    return Registry.from_json(text, source=str(path))


@lru_cache(maxsize=1)
def _builtin() -> Registry:
    text = resources.files(__package__).joinpath("data", REGISTRY_RESOURCE).read_text("utf-8")
    return Registry.from_json(text, source=f"builtin {REGISTRY_RESOURCE}")


def builtin_registry() -> list[SingularityType]:
    """The bundled singularity types."""
    return list(_builtin())


def default_registry(extra: str | Path | None = None) -> Registry:
    """The bundled registry, merged with an optional override file."""
    registry = _builtin()
    if extra is not None:
        registry = registry.merge(load_registry(extra))
    return registry
