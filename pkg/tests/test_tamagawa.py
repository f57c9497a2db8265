import math
from fractions import Fraction

import pytest

from tamagawa_calc.curve_zeta import CurveZeta, base_change
from tamagawa_calc.errors import InvariantViolation
from tamagawa_calc.finite_groups import steinberg_count
from tamagawa_calc.root_datum import InvariantDegrees, make_root_datum
from tamagawa_calc.tamagawa import (
    MassReport,
    base_change_invariance_check,
    compute_report,
    local_volume,
    siegel_mass,
    tamagawa_number,
    vol_k_exact,
    vol_k_truncated,
)

A1 = make_root_datum("A", 1)
A1_AD = make_root_datum("A", 1, "adjoint")
A2 = make_root_datum("A", 2)
A2_AD = make_root_datum("A", 2, "adjoint")
P1 = CurveZeta.projective_line(2)
E5 = CurveZeta(2, 1, (1, 2, 2))
E3 = CurveZeta(2, 1, (1, 0, 2))

DATA = [A1, A1_AD, A2, make_root_datum("B", 2), make_root_datum("G", 2), make_root_datum("D", 4, "adjoint"),
        make_root_datum("C", 3), make_root_datum("F", 4)]


def test_local_volume_examples():
    assert local_volume(A1, 2) == Fraction(3, 4)
    assert local_volume(A1, 4) == Fraction(15, 16)
    assert local_volume(A2, 2) == Fraction(21, 32)


@pytest.mark.parametrize("datum", DATA, ids=lambda d: f"{d.dynkin}-{d.isogeny}")
@pytest.mark.parametrize("q_x", [2, 3, 4, 5, 8, 9])
def test_local_volume_duality(datum, q_x):
    expected = Fraction(1)
    for d in datum.degrees.degrees:
        expected *= 1 - Fraction(1, q_x**d)
    assert Fraction(steinberg_count(datum, q_x), q_x**datum.dim_g) == expected == local_volume(datum, q_x)


def test_vol_k_examples():
    assert vol_k_exact(A1, P1) == 3
    assert vol_k_exact(A2, P1) == 63
    assert vol_k_exact(A1, E5) == Fraction(3, 13)


def test_vol_k_truncated_examples():
    assert vol_k_truncated(A1, P1, 1) == pytest.approx(3.375, rel=1e-14)
    assert abs(vol_k_truncated(A1, P1, 25) - 3) < 1e-6


@pytest.mark.parametrize("datum", [A1, A2], ids=str)
@pytest.mark.parametrize("curve", [P1, E5, E3], ids=["P1", "E5", "E3"])
def test_truncation_error_non_increasing(datum, curve):
    exact = math.log(float(vol_k_exact(datum, curve)))
    errors = [abs(math.log(vol_k_truncated(datum, curve, b)) - exact) for b in range(5, 26)]
    assert all(later <= earlier for earlier, later in zip(errors, errors[1:]))


def test_truncated_matches_exact_partial_product():
    # degree <= 3 product, evaluated in exact arithmetic, against the float path
    exact = Fraction(P1.q) ** A2.dim_g
    for m in (1, 2, 3):
        exact *= local_volume(A2, P1.q**m) ** P1.closed_points(m)
    assert vol_k_truncated(A2, P1, 3) == pytest.approx(float(exact), rel=1e-13)


def test_tamagawa_number_examples():
    for letter, rank in [("A", 1), ("A", 3), ("E", 6), ("G", 2), ("D", 4)]:
        assert tamagawa_number(make_root_datum(letter, rank)) == 1
    assert tamagawa_number(A1_AD) == 2
    assert tamagawa_number(A2_AD) == 3


def test_siegel_mass_examples():
    assert siegel_mass(A1, P1) == Fraction(1, 3)
    assert siegel_mass(A1_AD, P1) == Fraction(2, 3)
    assert siegel_mass(A1, E5) == Fraction(13, 3)


@pytest.mark.parametrize("datum", DATA, ids=lambda d: f"{d.dynkin}-{d.isogeny}")
@pytest.mark.parametrize("curve", [P1, E5, E3, CurveZeta.projective_line(3)], ids=["P1", "E5", "E3", "P1q3"])
def test_mass_times_volume_is_tau(datum, curve):
    assert siegel_mass(datum, curve) * vol_k_exact(datum, curve) == tamagawa_number(datum)


def test_degree_order_irrelevant():
    shuffled = InvariantDegrees((12, 2, 8, 6))
    f4 = make_root_datum("F", 4)
    assert shuffled == f4.degrees
    assert steinberg_count(shuffled, 3) == steinberg_count(f4, 3)


@pytest.mark.parametrize(
    "datum,curve,max_m",
    [(A1, P1, 5), (A1_AD, E5, 3), (A2_AD, CurveZeta.projective_line(3), 4), (A1, E3, 5)],
)
def test_base_change_invariance(datum, curve, max_m):
    assert base_change_invariance_check(datum, curve, max_m) is True
    assert vol_k_exact(datum, base_change(curve, 2)) != vol_k_exact(datum, curve)


def test_report_identity_enforced():
    report = compute_report(A1_AD, P1, base_change_max=3)
    assert report.component_count == report.tamagawa_number == 2
    assert report.siegel_mass * report.vol_k == 2
    with pytest.raises(InvariantViolation):
        MassReport({}, {}, 2, Fraction(3), Fraction(1, 3), 2, 3.0, 25)
    with pytest.raises(InvariantViolation):
        MassReport({}, {}, 2, Fraction(3), Fraction(2, 3), 1, 3.0, 25)
