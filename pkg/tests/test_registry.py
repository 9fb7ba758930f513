"""Test the singularity type registry."""

import dataclasses
import json
import pathlib

import pytest

from thompoly.const import PAIR_2_2, PAIR_2_3, PAIR_3_3, REGISTRY_KEYS
from thompoly.exceptions import UnknownTypeError, UsageError, ValidationError
from thompoly.polycore import GradedPoly, chern_table
from thompoly.registry import (
    Registry,
    SingularityType,
    builtin_registry,
    default_registry,
    load_registry,
    validate,
)
from tests.common import get_fixture_path, load_fixture
from tests.const import CORRUPT_DIAGNOSTIC, EXTRA_PAIR


def test_builtin_registry_is_valid(registry: Registry) -> None:
    """Test that every bundled type passes validation."""
    assert registry.validate_all() == {}
    assert registry.pairs() == [PAIR_2_2, PAIR_2_3, PAIR_3_3]
    assert len(registry.types_for(PAIR_2_2)) == 9
    assert len(registry.types_for(PAIR_2_3)) == 11
    assert len(registry.types_for(PAIR_3_3)) == 8


def test_codimensions_are_bounded(registry: Registry) -> None:
    """Test that codimensions stay within the tables and Euler data fits."""
    for t in registry:
        assert 0 <= t.codim <= 5
        assert len(t.normal_weights) == t.codim


@pytest.mark.parametrize(
    ("name", "pair", "expected"),
    [
        ("Crosscap", PAIR_2_3, "S0"),
        ("A1", PAIR_2_3, "S0"),
        ("A2", PAIR_2_3, "H2"),
        ("A1", PAIR_2_2, "Fold"),
        ("Lips", PAIR_2_2, "Lips/Beaks"),
        ("fold", PAIR_2_2, "Fold"),
        ("A4", PAIR_3_3, "A4"),
    ],
)
def test_aliases(registry: Registry, name: str, pair: tuple[int, int], expected: str) -> None:
    """Test lookup by alias and case-insensitive name."""
    assert registry.get(name, pair).name == expected


def test_ambiguous_name(registry: Registry) -> None:
    """Test a name shared by several pairs."""
    with pytest.raises(UnknownTypeError, match="ambiguous"):
        registry.get("A1")
    assert registry.get("Goose").pair == PAIR_2_2


def test_unknown_name(registry: Registry) -> None:
    """Test an unknown type."""
    with pytest.raises(UnknownTypeError, match="Unknown singularity type"):
        registry.get("Q7", PAIR_2_3)


def test_modulus_flag(registry: Registry) -> None:
    """Test detection of a zero-weight normal direction."""
    assert registry.get("P3", PAIR_2_3).has_modulus
    assert not registry.get("B1", PAIR_2_3).has_modulus
    assert not registry.get("P3", PAIR_2_3).solvable


def test_normal_form(registry: Registry) -> None:
    """Test the normal form components recorded in the notes."""
    assert registry.get("B1", PAIR_2_3).normal_form() == ("x", "y^2", "y^3 + x^2*y")
    assert registry.get("S0", PAIR_2_3).normal_form() == ("x", "y^2", "x*y")


def test_known_polynomial(registry: Registry) -> None:
    """Test expansion of a stored quotient form."""
    fold = registry.get("Fold", PAIR_2_2)
    assert fold.known_polynomial() == GradedPoly.parse(chern_table(2, 2), "cp1 - c1")
    assert registry.get("B1", PAIR_2_3).known_polynomial() is None


def test_record_round_trip() -> None:
    """Test that records survive the file format in key order."""
    for t in builtin_registry():
        record = t.to_dict()
        assert list(record) == list(REGISTRY_KEYS)
        assert SingularityType.from_dict(record) == t


def test_json_round_trip(registry: Registry) -> None:
    """Test dumping and reloading the registry."""
    reloaded = Registry.from_json(registry.to_json())
    assert reloaded.types == registry.types


def test_malformed_record() -> None:
    """Test a record with a missing field."""
    record = builtin_registry()[0].to_dict()
    del record["codim"]
    with pytest.raises(ValidationError, match="Malformed registry record"):
        SingularityType.from_dict(record)


def test_invalid_json() -> None:
    """Test a document that is not JSON."""
    with pytest.raises(ValidationError, match="not valid JSON"):
        Registry.from_json("[{")
    with pytest.raises(ValidationError, match="list of records"):
        Registry.from_json(json.dumps({"name": "B1"}))


def test_duplicate_entry() -> None:
    """Test two records with the same name and pair."""
    fold = builtin_registry()[1]
    with pytest.raises(ValidationError, match="Duplicate"):
        Registry([fold, fold])


def test_corrupt_weights_are_reported() -> None:
    """Test that a wrong target weight names the offending component."""
    with pytest.raises(ValidationError) as err:
        Registry.from_json(load_fixture("corrupt_registry.json"))
    assert CORRUPT_DIAGNOSTIC in err.value.diagnostics


def test_validate_component_count(registry: Registry) -> None:
    """Test a weight vector count that does not match the dimension."""
    b1 = registry.get("B1", PAIR_2_3)
    broken = dataclasses.replace(b1, target_weights=((1,), (2,)))
    assert validate(broken) == ["B1 (2,3): target_weights has 2 vectors, expected 3"]


def test_validate_normal_weights(registry: Registry) -> None:
    """Test normal weights that disagree with the slice."""
    b1 = registry.get("B1", PAIR_2_3)
    broken = dataclasses.replace(b1, normal_weights=((1,), (1,), (3,)))
    assert "B1 (2,3): normal weights differ from source and unfolding weights" in validate(broken)


def test_validate_known_tp_degree(registry: Registry) -> None:
    """Test a closed form of the wrong degree."""
    fold = registry.get("Fold", PAIR_2_2)
    broken = dataclasses.replace(fold, known_tp="cb1^2")
    assert validate(broken) == ["Fold (2,2): known_tp is not homogeneous of degree 1"]


def test_load_extra_registry() -> None:
    """Test merging an extra file over the bundled types."""
    merged = default_registry(get_fixture_path("extra_type.json"))
    assert EXTRA_PAIR in merged.pairs()
    assert [t.name for t in merged.types_for(EXTRA_PAIR)] == ["A0", "A1"]
    assert len(merged) == len(builtin_registry()) + 2


def test_merge_overrides(registry: Registry) -> None:
    """Test that a merged entry replaces the bundled one."""
    fold = registry.get("Fold", PAIR_2_2)
    merged = registry.merge([dataclasses.replace(fold, notes="normal form (x, y^2); replaced")])
    assert merged.get("Fold", PAIR_2_2).notes.endswith("replaced")
    assert len(merged) == len(registry)


def test_load_missing_file(tmp_path: pathlib.Path) -> None:
    """Test loading a file that does not exist."""
    with pytest.raises(UsageError, match="Cannot read registry file"):
        load_registry(tmp_path / "missing.json")
