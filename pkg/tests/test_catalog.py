from dataclasses import replace
from fractions import Fraction

import pytest

from circlesig.catalog import (
    REQUIRED,
    UnknownEntryError,
    catalog_entries,
    catalog_entry,
    check_entry,
    run_catalog,
)


def test_required_entries_present():
    names = [d.name for d in catalog_entries()]
    assert set(REQUIRED) <= set(names)
    assert len(names) == len(set(names))


@pytest.mark.parametrize(
    "name, sig",
    [("cp1_rotation", 0), ("cp2_linear", 1), ("cp2_with_fixed_cp1", 1), ("s2xs2_diagonal", 0), ("free_action", 0)],
)
def test_known_signatures(name, sig):
    assert catalog_entry(name).expected.signature == sig


def test_full_catalog_run_is_clean():
    report = run_catalog()
    assert report.ok, [(r.entry, r.check, r.detail) for r in report.mismatches]
    assert report.entries() == [d.name for d in catalog_entries()]


def test_single_entry_run():
    report = run_catalog("s2xs2_diagonal")
    assert report.entries() == ["s2xs2_diagonal"]
    assert report.ok


def test_unknown_entry():
    with pytest.raises(UnknownEntryError):
        catalog_entry("nonexistent")


def test_wrong_expectation_is_reported():
    d = catalog_entry("cp2_linear")
    bad = replace(d, expected=replace(d.expected, signature=Fraction(2)))
    failed = [r.check for r in check_entry(bad) if not r.ok]
    assert failed == ["signature"]


def test_entries_are_fresh_objects():
    a = catalog_entry("cp1_rotation")
    b = catalog_entry("cp1_rotation")
    assert a == b and a is not b
