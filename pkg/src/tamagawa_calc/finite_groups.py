"""Orders of split groups over finite fields.

``steinberg_count`` is the closed form; ``brute_force_group_order`` is an
independent oracle that literally enumerates matrices over a prime field.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import prod
from typing import Sequence

import numpy as np

from .errors import InvalidInputError, ResourceBoundError
from .root_datum import InvariantDegrees, RootDatum

MAX_BRUTE_FORCE = 5**9
MAX_FROBENIUS_ORDER = 10_000

_SMALL_PRIMES = (2, 3, 5)


def is_prime_power(q: int) -> bool:
    if q < 2:
        return False
    p = next(d for d in range(2, q + 1) if q % d == 0)
    while q % p == 0:
        q //= p
    return q == 1


def _check_q(q: int) -> None:
    if not isinstance(q, int) or not is_prime_power(q):
        raise InvalidInputError(f"q = {q!r} is not a prime power")


def _degrees(datum: RootDatum | InvariantDegrees) -> InvariantDegrees:
    return datum.degrees if isinstance(datum, RootDatum) else datum


def steinberg_count(datum: RootDatum | InvariantDegrees, q: int) -> int:
    """|G(F_q)| = q^N * prod_i (q^{d_i} - 1) for a split group.

    Depends only on the invariant degrees, so every isogeny class of one
    root system gets the same count.
    """
    _check_q(q)
    deg = _degrees(datum)
    return q**deg.num_positive * prod(q**d - 1 for d in deg.degrees)


def _fraction_det(m: list[list[Fraction]]) -> Fraction:
    a = [row[:] for row in m]
    n = len(a)
    det = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            det = -det
        det *= a[k][k]
        for i in range(k + 1, n):
            f = a[i][k] / a[k][k]
            if f:
                for j in range(k, n):
                    a[i][j] -= f * a[k][j]
    return det


def matrix_order(frobenius: Sequence[Sequence[int]], bound: int = MAX_FROBENIUS_ORDER) -> int:
    """Multiplicative order of an integer matrix, or an error past ``bound``."""
    f = np.array(frobenius, dtype=object)
    if f.ndim != 2 or f.shape[0] != f.shape[1]:
        raise InvalidInputError("Frobenius must be a square matrix")
    ident = np.identity(f.shape[0], dtype=int).astype(object)
    power = f.copy()
    for k in range(1, bound + 1):
        if (power == ident).all():
            return k
        power = power.dot(f)
    raise InvalidInputError(f"Frobenius matrix has no finite order up to {bound}")


def twisted_euler_factor(frobenius: Sequence[Sequence[int]], q: int, n: int) -> Fraction:
    """det(1 - q^{-n} F) for a finite-order integer matrix F."""
    _check_q(q)
    if n < 2:
        raise InvalidInputError("n must be at least 2")
    matrix_order(frobenius)
    x = Fraction(1, q**n)
    size = len(frobenius)
    m = [[Fraction(int(i == j)) - x * frobenius[i][j] for j in range(size)] for i in range(size)]
    return _fraction_det(m)


def _all_matrices(n: int, q: int) -> np.ndarray:
    entries = np.array(list(product(range(q), repeat=n * n)), dtype=np.int64)
    return entries.reshape(-1, n, n)


def _det_mod(mats: np.ndarray, q: int) -> np.ndarray:
    if mats.shape[1] == 2:
        d = mats[:, 0, 0] * mats[:, 1, 1] - mats[:, 0, 1] * mats[:, 1, 0]
    else:
        a = mats
        d = (
            a[:, 0, 0] * (a[:, 1, 1] * a[:, 2, 2] - a[:, 1, 2] * a[:, 2, 1])
            - a[:, 0, 1] * (a[:, 1, 0] * a[:, 2, 2] - a[:, 1, 2] * a[:, 2, 0])
            + a[:, 0, 2] * (a[:, 1, 0] * a[:, 2, 1] - a[:, 1, 1] * a[:, 2, 0])
        )
    return d % q


def brute_force_group_order(family: str, n: int, q: int) -> int:
    """Count SL_n(F_q) or PGL_n(F_q) by enumerating every n x n matrix.

    PGL is counted as |GL| / (q - 1): scalars act freely on invertible
    matrices, so every class has exactly q - 1 members.
    """
    if family not in ("SL", "PGL"):
        raise InvalidInputError(f"unknown family {family!r}")
    if n not in (2, 3) or q not in _SMALL_PRIMES or q ** (n * n) > MAX_BRUTE_FORCE:
        raise ResourceBoundError(f"brute force limited to n in (2, 3), prime q <= 5; got n={n}, q={q}")
    dets = _det_mod(_all_matrices(n, q), q)
    if family == "SL":
        return int(np.count_nonzero(dets == 1))
    invertible = int(np.count_nonzero(dets))
    count, rem = divmod(invertible, q - 1)
    assert rem == 0
    return count
