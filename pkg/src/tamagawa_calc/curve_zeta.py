"""Zeta functions of smooth projective curves over F_q.

A curve is identified with its L-polynomial

    P(T) = a_0 + a_1 T + ... + a_{2g} T^{2g} = prod_i (1 - alpha_i T),

so that Z(X, s) = P(q^-s) / ((1 - q^-s)(1 - q^{1-s})).  Everything here is
exact integer/rational arithmetic except the numeric Weil-bound screen.

Validity screening is a necessary-condition check only (functional
equation, root moduli, non-negative N_m and b_m for m <= 30); it does not
decide whether a curve with the given zeta function actually exists.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

import numpy as np

from .errors import InvalidCurveError, InvalidInputError
from .finite_groups import is_prime_power

SCREEN_DEPTH = 30
WEIL_TOLERANCE = 1e-9


def _power_sums_from_elementary(e: Sequence[int], count: int) -> list[int]:
    """Newton's identities: p_1..p_count from e_0=1, e_1, ..., e_k."""
    k = len(e) - 1
    p = [0] * (count + 1)
    for m in range(1, count + 1):
        total = 0
        for i in range(1, min(m - 1, k) + 1):
            total += (-1) ** (i - 1) * e[i] * p[m - i]
        if m <= k:
            total += (-1) ** (m - 1) * m * e[m]
        p[m] = total
    return p[1:]


def _elementary_from_power_sums(p: Sequence[int], count: int) -> list[int]:
    """Inverse Newton: e_0..e_count from p_1..p_count; raises if not integral."""
    e = [Fraction(1)]
    for k in range(1, count + 1):
        total = sum((-1) ** (i - 1) * e[k - i] * p[i - 1] for i in range(1, k + 1))
        e.append(Fraction(total, k))
    if any(x.denominator != 1 for x in e):
        raise InvalidCurveError("point counts give non-integral L-polynomial coefficients")
    return [int(x) for x in e]


def _trim(p: list[Fraction]) -> list[Fraction]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_rem(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a = a[:]
    while len(a) >= len(b):
        c = a[-1] / b[-1]
        shift = len(a) - len(b)
        for i, x in enumerate(b):
            a[shift + i] -= c * x
        a = _trim(a)
    return a


def _poly_quo(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a = a[:]
    quo = [Fraction(0)] * (len(a) - len(b) + 1)
    for k in range(len(quo) - 1, -1, -1):
        c = a[k + len(b) - 1] / b[-1]
        quo[k] = c
        for i, x in enumerate(b):
            a[k + i] -= c * x
    return quo


def squarefree_part(coeffs: Sequence[int]) -> list[Fraction]:
    """P / gcd(P, P') over Q, lowest degree first.

    Repeated roots are common after base change and numeric root finders
    lose half their digits on them.
    """
    p = _trim([Fraction(c) for c in coeffs])
    dp = _trim([i * c for i, c in enumerate(p)][1:])
    if not dp:
        return p
    a, b = p, dp
    while b:
        a, b = b, _poly_rem(a, b)
    return _poly_quo(p, a) if len(a) > 1 else p


def _mobius(n: int) -> int:
    result, d = 1, 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return 0
            result = -result
        d += 1
    return -result if n > 1 else result


@dataclass(frozen=True)
class CurveZeta:
    q: int
    genus: int
    l_coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        if not isinstance(self.q, int) or not is_prime_power(self.q):
            raise InvalidInputError(f"q = {self.q!r} is not a prime power")
        if not isinstance(self.genus, int) or self.genus < 0:
            raise InvalidInputError("genus must be a non-negative integer")
        object.__setattr__(self, "l_coeffs", tuple(int(a) for a in self.l_coeffs))
        a, g, q = self.l_coeffs, self.genus, self.q
        if len(a) != 2 * g + 1 or a[0] != 1:
            raise InvalidCurveError(f"need 2g+1 = {2 * g + 1} coefficients starting with 1, got {list(a)}")
        for i in range(g + 1):
            if a[2 * g - i] != q ** (g - i) * a[i]:
                raise InvalidCurveError(f"functional equation fails at index {i}")
        if g:
            # np.roots wants highest degree first
            roots = np.roots([float(x) for x in reversed(squarefree_part(a))])
            target = self.q ** -0.5
            if np.any(np.abs(np.abs(roots) - target) > WEIL_TOLERANCE):
                raise InvalidCurveError("invalid curve: L-polynomial roots violate the Weil bound")
        for m in range(1, SCREEN_DEPTH + 1):
            if self.point_count(m) < 0:
                raise InvalidCurveError(f"invalid curve: N_{m} is negative")
            if self.closed_points(m) < 0:
                raise InvalidCurveError(f"invalid curve: b_{m} is negative")

    @classmethod
    def projective_line(cls, q: int) -> CurveZeta:
        return cls(q, 0, (1,))

    @property
    def elementary(self) -> list[int]:
        """e_0..e_{2g} of the Frobenius eigenvalues alpha_i."""
        return [(-1) ** i * a for i, a in enumerate(self.l_coeffs)]

    @cached_property
    def _sums(self) -> dict[int, int]:
        return {}

    def power_sum(self, m: int) -> int:
        """sum_i alpha_i^m, exactly."""
        if m < 1:
            raise InvalidInputError("m must be positive")
        cache = self._sums
        if m not in cache:
            for j, v in enumerate(_power_sums_from_elementary(self.elementary, m), start=1):
                cache.setdefault(j, v)
        return cache[m]

    def point_count(self, m: int) -> int:
        """N_m = |X(F_{q^m})| = q^m + 1 - sum_i alpha_i^m."""
        return self.q**m + 1 - self.power_sum(m)

    def closed_points(self, m: int) -> int:
        """Number b_m of closed points of degree m (Mobius inversion)."""
        if m < 1:
            raise InvalidInputError("m must be positive")
        total = sum(_mobius(m // d) * self.point_count(d) for d in range(1, m + 1) if m % d == 0)
        b, rem = divmod(total, m)
        if rem:
            raise InvalidCurveError(f"b_{m} is not an integer")
        return b

    def special_value(self, n: int) -> Fraction:
        return zeta_special_value(self, n)

    def summary(self) -> dict[str, object]:
        return {"q": self.q, "genus": self.genus, "l_coeffs": list(self.l_coeffs)}


def from_point_counts(q: int, g: int, counts: Sequence[int]) -> CurveZeta:
    """Recover the L-polynomial from N_1..N_g; the upper half comes from the
    functional equation."""
    counts = [int(c) for c in counts]
    if len(counts) != g:
        raise InvalidInputError(f"expected {g} point counts, got {len(counts)}")
    if any(c < 0 for c in counts):
        raise InvalidCurveError("point counts must be non-negative")
    sums = [q**m + 1 - n for m, n in enumerate(counts, start=1)]
    e = _elementary_from_power_sums(sums, g)
    low = [(-1) ** i * e[i] for i in range(g + 1)]
    high = [q ** (g - i) * low[i] for i in range(g - 1, -1, -1)]
    return CurveZeta(q, g, tuple(low + high))


def point_count(curve: CurveZeta, m: int) -> int:
    return curve.point_count(m)


def closed_points(curve: CurveZeta, m: int) -> int:
    return curve.closed_points(m)


def zeta_special_value(curve: CurveZeta, n: int) -> Fraction:
    """Z(X, n) = P(q^-n) / ((1 - q^-n)(1 - q^{1-n})) for integers n >= 2."""
    if n <= 1:
        raise InvalidInputError(f"Z(X, s) has a pole or is not in range at s = {n}")
    x = Fraction(1, curve.q**n)
    num = sum(a * x**i for i, a in enumerate(curve.l_coeffs))
    return num / ((1 - x) * (1 - x * curve.q))


def base_change(curve: CurveZeta, m: int) -> CurveZeta:
    """The same curve over F_{q^m}: Frobenius eigenvalues become alpha_i^m."""
    if m < 1:
        raise InvalidInputError("base change degree must be positive")
    g = curve.genus
    if g == 0 or m == 1:
        return CurveZeta(curve.q**m, g, curve.l_coeffs if m == 1 else (1,))
    sums = [curve.power_sum(m * j) for j in range(1, 2 * g + 1)]
    e = _elementary_from_power_sums(sums, 2 * g)
    return CurveZeta(curve.q**m, g, tuple((-1) ** i * x for i, x in enumerate(e)))
