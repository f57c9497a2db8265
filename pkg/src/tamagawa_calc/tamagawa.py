"""Local and global volumes, Tamagawa numbers and Siegel masses.

Conventions for a split group G over a curve X / F_q of genus g:

* local volume at a closed point with residue field F_{q_x}:
  q_x^{-dim G} |G(F_{q_x})| = prod_i (1 - q_x^{-d_i})
* vol(K) = q^{(1-g) dim G} * prod_i Z(X, d_i)^{-1}, since for split G the
  Artin L-function of the degree-n invariants is Z(X, s)^{#{i : d_i = n}}
* tau(G) = |pi_1(G)|, which rests on two assumptions recorded in every
  report: Weil's conjecture for the simply connected cover (known for
  split groups) and Ono's formula with trivial Galois action and trivial
  Tate-Shafarevich group.
* Siegel mass sum_P 1/|Aut P| = tau(G) / vol(K).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import prod

from .curve_zeta import CurveZeta, base_change, zeta_special_value
from .errors import InvariantViolation
from .finite_groups import steinberg_count
from .root_datum import RootDatum

DEFAULT_TRUNCATION = 25

ASSUMPTIONS = (
    "split group: Galois acts trivially on the dual of the fundamental group, Tate-Shafarevich group trivial",
    "Weil's conjecture tau = 1 for the simply connected cover (known for split groups)",
)


def local_volume(datum: RootDatum, q_x: int) -> Fraction:
    """Volume of G(O_x) for a point with residue field of size ``q_x``.

    Computed both from the Steinberg count and from the degree product;
    the two must agree exactly.
    """
    via_count = Fraction(steinberg_count(datum, q_x), q_x**datum.dim_g)
    via_degrees = prod((1 - Fraction(1, q_x**d) for d in datum.degrees.degrees), start=Fraction(1))
    if via_count != via_degrees:
        raise InvariantViolation(f"local volume mismatch at q_x={q_x}: {via_count} != {via_degrees}")
    return via_count


def vol_k_exact(datum: RootDatum, curve: CurveZeta) -> Fraction:
    scale = Fraction(curve.q) ** ((1 - curve.genus) * datum.dim_g)
    zeta_product = prod((zeta_special_value(curve, d) for d in datum.degrees.degrees), start=Fraction(1))
    return scale / zeta_product


def euler_factor_logs(datum: RootDatum, curve: CurveZeta, bound: int) -> list[tuple[int, int, float]]:
    """Per-degree rows (m, b_m, b_m * log local_volume(q^m)), ascending m."""
    rows = []
    for m in range(1, bound + 1):
        b_m = curve.closed_points(m)
        q_m = curve.q**m
        log_local = sum(math.log1p(-(q_m ** -float(d))) for d in datum.degrees.degrees)
        rows.append((m, b_m, b_m * log_local))
    return rows


def vol_k_truncated(datum: RootDatum, curve: CurveZeta, bound: int = DEFAULT_TRUNCATION) -> float:
    """Euler product over closed points of degree <= ``bound``, in floating point.

    Works in log space: b_m grows like q^m / m, far too large to raise an
    exact rational to.  Summation order is ascending m.
    """
    if bound < 1:
        raise ValueError("truncation bound must be at least 1")
    log_total = (1 - curve.genus) * datum.dim_g * math.log(curve.q)
    for _, _, contribution in euler_factor_logs(datum, curve, bound):
        log_total += contribution
    return math.exp(log_total)


def tamagawa_number(datum: RootDatum) -> int:
    """tau(G) for split G: |H^0(dual of pi_1)| / |Sha| = |pi_1(G)|."""
    return datum.pi1_order


def siegel_mass(datum: RootDatum, curve: CurveZeta) -> Fraction:
    """Predicted sum over isomorphism classes of G-torsors of 1/|Aut|."""
    return tamagawa_number(datum) / vol_k_exact(datum, curve)


def base_change_invariance_check(datum: RootDatum, curve: CurveZeta, max_m: int) -> bool:
    """Recompute over F_{q^m}, m = 1..max_m, and confirm mass * vol stays tau."""
    if max_m < 1:
        raise ValueError("max_m must be at least 1")
    tau = tamagawa_number(datum)
    for m in range(1, max_m + 1):
        curve_m = base_change(curve, m)
        tau_m = tamagawa_number(datum)
        product = siegel_mass(datum, curve_m) * vol_k_exact(datum, curve_m)
        if tau_m != tau or product != tau:
            raise InvariantViolation(f"base change to degree {m}: tau_m={tau_m}, mass*vol={product}, tau={tau}")
    return True


@dataclass
class MassReport:
    datum_echo: dict[str, object]
    curve_echo: dict[str, object]
    tamagawa_number: int
    vol_k: Fraction
    siegel_mass: Fraction
    component_count: int
    vol_k_truncated: float
    truncation_bound: int
    assumptions: tuple[str, ...] = ASSUMPTIONS
    base_change_checked_up_to: int | None = None
    oracle_section: dict[str, object] | None = None
    euler_rows: list[tuple[int, int, float]] = field(default_factory=list)

    def __post_init__(self) -> None:
        if self.siegel_mass * self.vol_k != self.tamagawa_number:
            raise InvariantViolation("siegel_mass * vol_k != tamagawa_number")
        if self.component_count != self.tamagawa_number:
            raise InvariantViolation("component count differs from the Tamagawa number")


def compute_report(
    datum: RootDatum,
    curve: CurveZeta,
    truncation: int = DEFAULT_TRUNCATION,
    base_change_max: int | None = None,
    keep_euler_rows: bool = False,
) -> MassReport:
    tau = tamagawa_number(datum)
    vol = vol_k_exact(datum, curve)
    if base_change_max:
        base_change_invariance_check(datum, curve, base_change_max)
    return MassReport(
        datum_echo=datum.summary(),
        curve_echo=curve.summary(),
        tamagawa_number=tau,
        vol_k=vol,
        siegel_mass=siegel_mass(datum, curve),
        component_count=tau,
        vol_k_truncated=vol_k_truncated(datum, curve, truncation),
        truncation_bound=truncation,
        base_change_checked_up_to=base_change_max or None,
        euler_rows=euler_factor_logs(datum, curve, truncation) if keep_euler_rows else [],
    )
