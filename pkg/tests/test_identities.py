from fractions import Fraction

import pytest

from ydilog.identities import (
    expected_constant,
    level_identity_value,
    table_value,
    verify_cf_identity,
    verify_flat_specialization,
    verify_folding,
    verify_level_identity,
)
from ydilog.rootsys import TypeLabel, default_labels, parse_label


def test_expected_constant_examples():
    assert expected_constant(TypeLabel("E", 8), "a") == Fraction(15, 2)
    assert expected_constant(TypeLabel("G", 2), "aflat") == Fraction(8, 3)
    assert expected_constant(TypeLabel("T", 1), "a") == Fraction(3, 5)
    assert expected_constant(TypeLabel("B", 3), "a") == Fraction(15, 4)
    assert expected_constant(TypeLabel("F", 4), "aflat") == Fraction(24, 5)
    assert expected_constant(TypeLabel("E", 7), "aflat") == Fraction(6)


@pytest.mark.parametrize("label", default_labels())
@pytest.mark.parametrize("variant", ["a", "aflat"])
def test_dual_route_matches_closed_forms(label, variant):
    # Duality formula and the hard-coded table must agree exactly.
    assert expected_constant(label, variant) == table_value(label, variant)


@pytest.mark.parametrize("n", range(1, 9))
@pytest.mark.parametrize("variant", ["a", "aflat"])
def test_tadpole_halving_exact(n, variant):
    tadpole = expected_constant(TypeLabel("T", n), variant)
    source = expected_constant(TypeLabel("A", 2 * n), variant)
    assert 2 * tadpole == source


def test_verify_cf_examples():
    report = verify_cf_identity(TypeLabel("A", 1), "a")
    assert report.passed and report.expected == Fraction(1, 2)
    assert abs(report.computed - 0.5) <= 1e-12

    report = verify_cf_identity(TypeLabel("B", 3), "a")
    assert report.passed and report.expected == Fraction(15, 4)
    assert report.deviation <= 1e-9

    report = verify_cf_identity(TypeLabel("F", 4), "aflat")
    assert report.passed and report.expected == Fraction(24, 5)


def test_verify_level_examples():
    report = verify_level_identity(TypeLabel("A", 1), 2)
    assert report.passed and report.expected == Fraction(1, 2)

    # Golden-ratio level: 2 * (6/pi^2) * L((3 - sqrt 5)/2) = 4/5.
    report = verify_level_identity(TypeLabel("A", 1), 3)
    assert report.passed and report.expected == Fraction(4, 5)
    assert abs(report.computed - 0.8) <= 1e-12

    report = verify_level_identity(TypeLabel("A", 2), 2)
    assert report.passed and report.expected == Fraction(6, 5)


def test_level_identity_value_rejects_folded():
    with pytest.raises(ValueError):
        level_identity_value(TypeLabel("B", 2), 2)


def test_verify_folding_examples():
    report = verify_folding(TypeLabel("B", 2))
    assert report.passed and "A3" in report.detail

    report = verify_folding(TypeLabel("G", 2))
    assert report.passed and "D4" in report.detail

    report = verify_folding(TypeLabel("T", 1))
    assert report.passed and "A2" in report.detail

    report = verify_folding(TypeLabel("C", 2))
    assert report.passed and "direct" in report.detail


def test_verify_folding_rejects_simply_laced():
    with pytest.raises(ValueError):
        verify_folding(TypeLabel("D", 4))


@pytest.mark.parametrize("label", [l for l in default_labels() if l.is_foldable])
def test_folding_sweep(label):
    report = verify_folding(label)
    assert report.passed, report.detail


def test_verify_flat_specialization_examples():
    report = verify_flat_specialization(TypeLabel("A", 1))
    assert report.passed and report.deviation <= 1e-10

    report = verify_flat_specialization(TypeLabel("E", 7))
    assert report.passed
    assert expected_constant(TypeLabel("E", 7), "aflat") == Fraction(6)

    report = verify_flat_specialization(TypeLabel("C", 2))
    assert report.passed and "direct" in report.detail

    report = verify_flat_specialization(TypeLabel("B", 3))
    assert report.passed and "A5" in report.detail


def test_report_pass_flag_tracks_tolerance():
    tight = verify_cf_identity(TypeLabel("E", 8), "aflat", tol=1e-16)
    assert not tight.passed
    assert tight.deviation > 1e-16
    loose = verify_cf_identity(TypeLabel("E", 8), "aflat", tol=1e-9)
    assert loose.passed
    assert (loose.deviation <= 1e-9) == loose.passed


def test_report_line_format():
    line = verify_cf_identity(parse_label("T1"), "a").line()
    assert "T1[a]" in line and "PASS" in line and "3/5" in line
