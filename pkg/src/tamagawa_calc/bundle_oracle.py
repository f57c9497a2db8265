"""Brute-force Siegel mass on the projective line for SL_2 and PGL_2.

Torsors on P^1 over F_q are classified by splitting type:

* SL_2-torsors <-> rank-2 bundles O(n) + O(-n), n >= 0.
* PGL_2-torsors <-> P^1-bundles P(O + O(n)), n >= 0; the parity of n is the
  connected component (degree mod 2).

Automorphism groups, using h^0(O(k)) = max(0, k + 1):

* n = 0: the constant group, |SL_2(F_q)| = |PGL_2(F_q)| = q(q^2 - 1).
* SL_2, n >= 1: automorphisms are [[t, s], [0, t^-1]] with t in F_q^* and
  s in H^0(O(2n)), giving (q - 1) q^{2n+1}.
* PGL_2, n >= 1: [[t, s], [0, 1]] with s in H^0(O(n)), giving (q - 1) q^{n+1}.

For n >= 1 the canonical (Harder-Narasimhan) reduction is to the Borel,
with unipotent radical of rank one.  Its instability degree is taken to be
deg Lie(B-reduction): 2n for SL_2 and n for PGL_2.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .errors import InvalidInputError, InvariantViolation

GROUPS = ("SL2", "PGL2")


def _check(n: int, q: int) -> None:
    if n < 0:
        raise InvalidInputError("splitting parameter n must be non-negative")
    if q < 2:
        raise InvalidInputError("q must be at least 2")


def sl2_aut_order(n: int, q: int) -> int:
    _check(n, q)
    if n == 0:
        return q * (q * q - 1)
    return (q - 1) * q ** (2 * n + 1)


def pgl2_aut_order(n: int, q: int) -> int:
    _check(n, q)
    if n == 0:
        return q * (q * q - 1)
    return (q - 1) * q ** (n + 1)


def aut_order(group: str, n: int, q: int) -> int:
    if group == "SL2":
        return sl2_aut_order(n, q)
    if group == "PGL2":
        return pgl2_aut_order(n, q)
    raise InvalidInputError(f"unknown group {group!r}; expected one of {GROUPS}")


def _parity_ok(n: int, parity: str | None) -> bool:
    return parity is None or (n % 2 == 0) == (parity == "even")


def _check_parity(group: str, parity: str | None) -> None:
    if parity is None:
        return
    if parity not in ("even", "odd"):
        raise InvalidInputError(f"parity filter must be 'even' or 'odd', not {parity!r}")
    if group == "SL2":
        raise InvalidInputError("parity filter is undefined for SL2 (a single component)")


def mass_partial_sum(group: str, q: int, cutoff: int, parity_filter: str | None = None) -> Fraction:
    """Exact sum of 1/|Aut| over splitting types n <= cutoff."""
    if cutoff < 0:
        raise InvalidInputError("cutoff must be non-negative")
    _check_parity(group, parity_filter)
    return sum(
        (Fraction(1, aut_order(group, n, q)) for n in range(cutoff + 1) if _parity_ok(n, parity_filter)),
        start=Fraction(0),
    )


def mass_tail(group: str, q: int, cutoff: int, parity_filter: str | None = None) -> Fraction:
    """Closed-form sum of 1/|Aut| over n > cutoff (geometric series)."""
    _check_parity(group, parity_filter)
    start = cutoff + 1
    if group == "SL2":
        # sum_{n >= start} 1/((q-1) q^{2n+1}) = q^{-(2 start + 1)} / ((q-1)(1 - q^-2))
        return Fraction(q * q, (q - 1) * q ** (2 * start + 1) * (q * q - 1))
    aut_order(group, 1, q)
    if parity_filter is None:
        # sum_{n >= start} 1/((q-1) q^{n+1})
        return Fraction(q, (q - 1) * q ** (start + 1) * (q - 1))
    if not _parity_ok(start, parity_filter):
        start += 1
    return Fraction(q * q, (q - 1) * q ** (start + 1) * (q * q - 1))


def mass_limit(group: str, q: int, parity_filter: str | None = None) -> Fraction:
    """Full mass: partial sum through n = 0 plus the closed-form tail."""
    return mass_partial_sum(group, q, 0, parity_filter) + mass_tail(group, q, 0, parity_filter)


def relative_dimension(g: int, dim_ru: int, deg_p: int) -> int:
    """Relative dimension of Bun_P -> Bun_{P/R_u(P)}: dim R_u (g - 1) - deg."""
    if dim_ru < 0:
        raise InvalidInputError("dim_ru must be non-negative")
    return dim_ru * (g - 1) - deg_p


def stratum_codimension(r_u_dim: int, m: int, g: int = 0) -> int:
    return r_u_dim * (g - 1) + m


@dataclass(frozen=True)
class StratumRecord:
    n: int
    instability_degree: int
    codim: int
    r_u_dim: int
    aut_order: int
    mass: Fraction


def instability_degree(group: str, n: int) -> int:
    aut_order(group, 0, 2)
    if n == 0:
        return 0
    return 2 * n if group == "SL2" else n


def stratum_table(group: str, q: int, cutoff: int) -> list[StratumRecord]:
    """One Harder-Narasimhan stratum per splitting type n <= cutoff.

    For n >= 1 the mass must factor as (fibre mass of Bun_B -> Bun_T) times
    the torus mass 1/(q - 1), i.e. q^{relative dimension} / (q - 1).
    """
    if cutoff < 0:
        raise InvalidInputError("cutoff must be non-negative")
    records = []
    for n in range(cutoff + 1):
        order = aut_order(group, n, q)
        mass = Fraction(1, order)
        m = instability_degree(group, n)
        if n == 0:
            # semistable stratum: canonical parabolic is G itself
            records.append(StratumRecord(0, 0, 0, 0, order, mass))
            continue
        r_u = 1
        codim = stratum_codimension(r_u, m)
        predicted = Fraction(q) ** relative_dimension(0, r_u, m) / (q - 1)
        if predicted != mass:
            raise InvariantViolation(f"{group} stratum n={n}: mass {mass} != fibration prediction {predicted}")
        records.append(StratumRecord(n, m, codim, r_u, order, mass))
    return records


def gamma_threshold(i: int, g: int, num_roots: int = 0) -> int:
    """Smallest integer >= 1 + i/2 (plus |Phi| when g = 0)."""
    if i < 0:
        raise InvalidInputError("i must be non-negative")
    value = 1 + -(-i // 2)
    return value + num_roots if g == 0 else value


def count_instability_types(coeffs: Sequence[int], mu: int) -> int:
    """Number of (n_1..n_s), all n_i >= 1, with sum n_i c_i = mu."""
    c = tuple(int(x) for x in coeffs)
    if any(x < 1 for x in c):
        raise InvalidInputError("coefficients must be positive")
    if mu < 0:
        raise InvalidInputError("mu must be non-negative")
    return _count(c, mu)


@lru_cache(maxsize=None)
def _count(c: tuple[int, ...], mu: int) -> int:
    if not c:
        return int(mu == 0)
    head, rest = c[0], c[1:]
    floor_rest = sum(rest)
    return sum(_count(rest, mu - k * head) for k in range(1, (mu - floor_rest) // head + 1))


def oracle_summary(group: str, q: int, cutoff: int, verbose: bool = False) -> dict[str, object]:
    """Oracle section for a report: partial sums, tails and (for PGL2) components."""
    partial = mass_partial_sum(group, q, cutoff)
    limit = mass_limit(group, q)
    out: dict[str, object] = {
        "group": group,
        "q": q,
        "cutoff": cutoff,
        "partial_sum": partial,
        "closed_form_tail": mass_tail(group, q, cutoff),
        "limit": limit,
        "gap": limit - partial,
    }
    if group == "PGL2":
        out["components"] = {
            parity: {
                "partial_sum": mass_partial_sum(group, q, cutoff, parity),
                "limit": mass_limit(group, q, parity),
            }
            for parity in ("even", "odd")
        }
    if verbose:
        out["strata"] = stratum_table(group, q, cutoff)
    return out
