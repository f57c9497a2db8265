from fractions import Fraction

import pytest

from oracles import (
    brute_instability_count,
    enumerate_pgl2_splitting_automorphisms,
    enumerate_sl2_splitting_automorphisms,
)
from tamagawa_calc.bundle_oracle import (
    count_instability_types,
    gamma_threshold,
    mass_limit,
    mass_partial_sum,
    mass_tail,
    pgl2_aut_order,
    relative_dimension,
    sl2_aut_order,
    stratum_table,
)
from tamagawa_calc.curve_zeta import CurveZeta
from tamagawa_calc.errors import InvalidInputError
from tamagawa_calc.finite_groups import brute_force_group_order
from tamagawa_calc.root_datum import make_root_datum
from tamagawa_calc.tamagawa import siegel_mass, vol_k_exact

A1 = make_root_datum("A", 1)
A1_AD = make_root_datum("A", 1, "adjoint")


def test_aut_order_examples():
    assert sl2_aut_order(0, 2) == 6
    assert sl2_aut_order(1, 2) == 8
    assert sl2_aut_order(2, 3) == 486
    assert pgl2_aut_order(0, 3) == 24
    assert pgl2_aut_order(1, 2) == 4
    assert pgl2_aut_order(2, 2) == 8


@pytest.mark.parametrize("q", [2, 3, 5])
def test_generic_stratum_matches_brute_force(q):
    assert sl2_aut_order(0, q) == brute_force_group_order("SL", 2, q)
    assert pgl2_aut_order(0, q) == brute_force_group_order("PGL", 2, q)


@pytest.mark.parametrize("q,n", [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2)])
def test_unstable_aut_orders_by_enumeration(q, n):
    assert sl2_aut_order(n, q) == enumerate_sl2_splitting_automorphisms(n, q)
    assert pgl2_aut_order(n, q) == enumerate_pgl2_splitting_automorphisms(n, q)


def test_partial_sum_examples():
    assert mass_partial_sum("SL2", 2, 1) == Fraction(7, 24)
    assert abs(mass_partial_sum("SL2", 2, 20) - Fraction(1, 3)) < Fraction(1, 4**19)
    for parity in ("even", "odd"):
        assert abs(mass_partial_sum("PGL2", 2, 6, parity) - Fraction(1, 3)) < Fraction(1, 2**5)


def test_parity_filter_rejected_for_sl2():
    with pytest.raises(InvalidInputError):
        mass_partial_sum("SL2", 2, 5, "even")
    with pytest.raises(InvalidInputError):
        mass_partial_sum("PGL2", 2, 5, "both")


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_sl2_partial_sums(q):
    limit = siegel_mass(A1, CurveZeta.projective_line(q))
    sums = [mass_partial_sum("SL2", q, n) for n in range(15)]
    assert all(a < b for a, b in zip(sums, sums[1:]))
    for n, s in enumerate(sums):
        assert s < limit
        tail = sum(Fraction(1, (q - 1) * q ** (2 * k + 1)) for k in range(n + 1, n + 200))
        assert limit - s == mass_tail("SL2", q, n)
        assert 0 <= mass_tail("SL2", q, n) - tail < Fraction(1, q**390)


@pytest.mark.parametrize("q", [2, 3, 5])
def test_pgl2_components(q):
    curve = CurveZeta.projective_line(q)
    for n in range(12):
        total = mass_partial_sum("PGL2", q, n)
        assert total == mass_partial_sum("PGL2", q, n, "even") + mass_partial_sum("PGL2", q, n, "odd")
        for parity in ("even", "odd"):
            assert mass_partial_sum("PGL2", q, n, parity) + mass_tail("PGL2", q, n, parity) == 1 / vol_k_exact(
                A1_AD, curve
            )
    assert mass_limit("PGL2", q) == 2 / vol_k_exact(A1_AD, curve) == siegel_mass(A1_AD, curve)
    assert mass_limit("SL2", q) == 1 / vol_k_exact(A1, curve)


def test_stratum_examples():
    rows = stratum_table("SL2", 2, 2)
    assert (rows[1].codim, rows[1].mass) == (1, Fraction(1, 8))
    assert (rows[2].codim, rows[2].mass) == (3, Fraction(1, 32))
    for q in (2, 3, 7):
        assert stratum_table("SL2", q, 0)[0].codim == 0


@pytest.mark.parametrize("group", ["SL2", "PGL2"])
@pytest.mark.parametrize("q", [2, 3])
def test_stratum_invariants(group, q):
    for row in stratum_table(group, q, 20)[1:]:
        assert row.codim == row.r_u_dim * (0 - 1) + row.instability_degree
        assert row.mass == Fraction(1, row.aut_order)
        if group == "SL2":
            assert row.instability_degree == 2 * row.n
            assert row.codim == 2 * row.n - 1


def test_relative_dimension_examples():
    assert relative_dimension(0, 1, 2) == -3
    assert relative_dimension(2, 1, 0) == 1
    assert relative_dimension(1, 3, 5) == -5


def test_gamma_threshold_examples():
    assert gamma_threshold(0, 0, 2) == 3
    assert gamma_threshold(3, 1) == 3
    assert gamma_threshold(4, 2) == 3
    assert gamma_threshold(5, 0, 6) == 1 + 3 + 6


def test_count_instability_examples():
    assert count_instability_types([2], 4) == 1
    assert count_instability_types([1, 1], 3) == 2
    assert count_instability_types([2], 3) == 0


@pytest.mark.parametrize("coeffs", [[1], [3], [1, 2], [2, 3], [1, 1, 1], [1, 2, 3]])
def test_count_instability_vs_brute_force(coeffs):
    for mu in range(0, 25):
        assert count_instability_types(coeffs, mu) == brute_instability_count(coeffs, mu)


def test_count_instability_rejects_bad_input():
    with pytest.raises(InvalidInputError):
        count_instability_types([0, 1], 3)
    with pytest.raises(InvalidInputError):
        count_instability_types([1], -1)
