"""Split root data: Cartan matrices, roots, Weyl groups and invariant degrees.

Cartan convention
-----------------
``cartan[i][j] = <alpha_i^vee, alpha_j>`` with Bourbaki numbering of the
simple roots.  Row ``i`` therefore drives the simple reflection

    s_i(v) = v - (sum_j cartan[i][j] * v_j) * alpha_i

on vectors written in the root-lattice basis.  For the non-simply-laced
types the long simple roots are:

* ``B_n``: alpha_1 .. alpha_{n-1} (alpha_n short)
* ``C_n``: alpha_n only
* ``F_4``: alpha_1, alpha_2
* ``G_2``: alpha_1, i.e. ``[[2, -1], [-3, 2]]``

Transposing gives the dual root system, which has the same Weyl group,
degrees and determinant, so nothing downstream depends on the choice.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from math import factorial, prod
from typing import Sequence

from .errors import InvalidInputError, ResourceBoundError

Matrix = tuple[tuple[int, ...], ...]
Vector = tuple[int, ...]
Poly = list[int]

DEFAULT_WEYL_BOUND = 10**7
MAX_ROOTS = 20_000

_RANK_RULES = {
    "A": lambda r: r >= 1,
    "B": lambda r: r >= 2,
    "C": lambda r: r >= 3,
    "D": lambda r: r >= 4,
    "E": lambda r: 6 <= r <= 8,
    "F": lambda r: r == 4,
    "G": lambda r: r == 2,
}


@dataclass(frozen=True)
class DynkinType:
    letter: str
    rank: int

    def __post_init__(self) -> None:
        rule = _RANK_RULES.get(self.letter)
        if rule is None:
            raise InvalidInputError(f"unknown Dynkin letter {self.letter!r}")
        if not isinstance(self.rank, int) or isinstance(self.rank, bool) or not rule(self.rank):
            raise InvalidInputError(f"rank {self.rank!r} is not valid for type {self.letter}")

    def __str__(self) -> str:
        return f"{self.letter}_{self.rank}"


def cartan_matrix(dtype: DynkinType) -> Matrix:
    """Return the Cartan matrix of ``dtype`` (see module docstring for orientation)."""
    n = dtype.rank
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def link(i: int, j: int, a_ij: int = -1, a_ji: int = -1) -> None:
        a[i][j] = a_ij
        a[j][i] = a_ji

    letter = dtype.letter
    if letter in "ABC":
        for i in range(n - 1):
            link(i, i + 1)
        if letter == "B":
            link(n - 2, n - 1, a_ij=-1, a_ji=-2)
        elif letter == "C":
            link(n - 2, n - 1, a_ij=-2, a_ji=-1)
    elif letter == "D":
        for i in range(n - 2):
            link(i, i + 1)
        link(n - 3, n - 1)
    elif letter == "E":
        # Bourbaki: 1-3-4-5-6(-7-8), with 2 attached to 4
        link(0, 2)
        link(1, 3)
        for i in range(2, n - 1):
            link(i, i + 1)
    elif letter == "F":
        link(0, 1)
        link(1, 2, a_ij=-1, a_ji=-2)
        link(2, 3)
    elif letter == "G":
        link(0, 1, a_ij=-1, a_ji=-3)
    return tuple(tuple(row) for row in a)


def _check_cartan(cartan: Sequence[Sequence[int]]) -> Matrix:
    m = tuple(tuple(int(x) for x in row) for row in cartan)
    n = len(m)
    if n == 0 or any(len(row) != n for row in m):
        raise InvalidInputError("Cartan matrix must be square and non-empty")
    for i in range(n):
        if m[i][i] != 2:
            raise InvalidInputError("Cartan matrix must have 2 on the diagonal")
        for j in range(n):
            if i != j and (m[i][j] > 0 or (m[i][j] == 0) != (m[j][i] == 0)):
                raise InvalidInputError("Cartan matrix off-diagonal pattern is invalid")
    return m


def reflect(cartan: Matrix, i: int, v: Vector) -> Vector:
    """Apply the simple reflection ``s_i`` to ``v`` (root-lattice coordinates)."""
    pairing = sum(c * x for c, x in zip(cartan[i], v))
    if pairing == 0:
        return v
    out = list(v)
    out[i] -= pairing
    return tuple(out)


@dataclass(frozen=True)
class RootSystem:
    cartan: Matrix
    simple_roots: tuple[Vector, ...]
    all_roots: tuple[Vector, ...]
    num_positive: int

    @property
    def rank(self) -> int:
        return len(self.cartan)

    @property
    def positive_roots(self) -> tuple[Vector, ...]:
        return tuple(r for r in self.all_roots if is_positive(r))


def is_positive(root: Vector) -> bool:
    return all(c >= 0 for c in root) and any(c > 0 for c in root)


def generate_roots(cartan: Sequence[Sequence[int]], order: Sequence[int] | None = None) -> RootSystem:
    """Close the simple roots under the simple reflections.

    ``order`` permutes the sequence in which reflections are tried; the
    resulting root set does not depend on it.
    """
    m = _check_cartan(cartan)
    n = len(m)
    idx = list(order) if order is not None else list(range(n))
    if sorted(idx) != list(range(n)):
        raise InvalidInputError("reflection order must be a permutation of the simple indices")
    simple = tuple(tuple(1 if k == i else 0 for k in range(n)) for i in range(n))

    seen: set[Vector] = set(simple)
    queue = deque(simple)
    while queue:
        v = queue.popleft()
        for i in idx:
            w = reflect(m, i, v)
            if w not in seen:
                seen.add(w)
                if len(seen) > MAX_ROOTS:
                    raise InvalidInputError("root closure does not terminate; not a finite-type Cartan matrix")
                queue.append(w)

    for r in seen:
        if not (all(c >= 0 for c in r) or all(c <= 0 for c in r)):
            raise InvalidInputError("root with mixed signs found; not a finite-type Cartan matrix")
    roots = tuple(sorted(seen))
    num_pos = sum(1 for r in roots if is_positive(r))
    return RootSystem(cartan=m, simple_roots=simple, all_roots=roots, num_positive=num_pos)


def classical_weyl_order(dtype: DynkinType) -> int:
    """Tabulated |W|, used only as a size guard before enumerating W."""
    n = dtype.rank
    return {
        "A": lambda: factorial(n + 1),
        "B": lambda: 2**n * factorial(n),
        "C": lambda: 2**n * factorial(n),
        "D": lambda: 2 ** (n - 1) * factorial(n),
        "E": lambda: {6: 51840, 7: 2903040, 8: 696729600}[n],
        "F": lambda: 1152,
        "G": lambda: 12,
    }[dtype.letter]()


def weyl_poincare(rs: RootSystem, bound: int = DEFAULT_WEYL_BOUND, expected_order: int | None = None) -> Poly:
    """Return the coefficients of sum_{w in W} t^{l(w)}, lowest degree first.

    W is enumerated breadth first in its Cayley graph on the simple
    reflections, so the BFS depth of an element is its length.  Elements
    are keyed by their image of 2*rho (the sum of the positive roots),
    which is regular, so distinct elements give distinct keys.

    ``expected_order`` lets callers refuse oversized groups up front;
    otherwise enumeration aborts once ``bound`` elements are seen.
    """
    if expected_order is not None and expected_order > bound:
        raise ResourceBoundError(f"Weyl group of order {expected_order} exceeds bound {bound}")
    two_rho = tuple(sum(col) for col in zip(*rs.positive_roots))
    seen = {two_rho}
    layer = [two_rho]
    coeffs: Poly = []
    while layer:
        coeffs.append(len(layer))
        nxt = []
        for v in layer:
            for i in range(rs.rank):
                w = reflect(rs.cartan, i, v)
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        if len(seen) > bound:
            raise ResourceBoundError(f"Weyl group exceeds bound {bound}")
        layer = nxt
    if len(coeffs) - 1 != rs.num_positive:
        raise InvalidInputError("longest Weyl element length differs from the number of positive roots")
    return coeffs


def _poly_divmod(num: Poly, den: Poly) -> tuple[Poly, Poly]:
    num = list(num)
    if len(num) < len(den):
        return [0], num
    quo = [0] * (len(num) - len(den) + 1)
    lead = den[-1]
    for k in range(len(quo) - 1, -1, -1):
        c, r = divmod(num[k + len(den) - 1], lead)
        if r:
            return quo, num
        quo[k] = c
        if c:
            for j, d in enumerate(den):
                num[k + j] -= c * d
    return quo, num


def q_integer(d: int) -> Poly:
    """Coefficients of 1 + t + ... + t^{d-1}."""
    return [1] * d


@dataclass(frozen=True)
class InvariantDegrees:
    degrees: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(d < 2 for d in self.degrees):
            raise InvalidInputError("invariant degrees must be at least 2")
        object.__setattr__(self, "degrees", tuple(sorted(self.degrees)))

    @property
    def weyl_order(self) -> int:
        return prod(self.degrees)

    @property
    def num_positive(self) -> int:
        return sum(d - 1 for d in self.degrees)

    def graded_dimension(self, n: int) -> int:
        """Number of basic invariants of degree ``n``."""
        return self.degrees.count(n)


def invariant_degrees(poincare: Sequence[int]) -> InvariantDegrees:
    """Factor a Weyl Poincare polynomial as a product of t-integers [d_i].

    Works from the largest candidate degree down: the largest d for which
    [d] divides the polynomial is always a degree, because a cyclotomic
    factor Phi_k can only occur when k divides some d_i.
    """
    p = list(poincare)
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    if not p or p[0] != 1:
        raise InvalidInputError("Poincare polynomial must have constant term 1")
    found: list[int] = []
    while len(p) > 1:
        for d in range(len(p), 1, -1):
            quo, rem = _poly_divmod(p, q_integer(d))
            if not any(rem):
                found.append(d)
                p = quo
                break
        else:
            raise InvalidInputError("polynomial is not a product of t-integers")
    if p != [1]:
        raise InvalidInputError("polynomial is not a product of t-integers")
    return InvariantDegrees(tuple(found))


def smith_normal_form(m: Sequence[Sequence[int]]) -> list[int]:
    """Invariant factors d_1 | d_2 | ... of a square integer matrix."""
    a = [[int(x) for x in row] for row in m]
    n = len(a)
    if any(len(row) != n for row in a):
        raise InvalidInputError("matrix must be square")

    for t in range(n):
        while True:
            nonzero = [(abs(a[i][j]), i, j) for i in range(t, n) for j in range(t, n) if a[i][j]]
            if not nonzero:
                return [abs(a[i][i]) for i in range(t)] + [0] * (n - t)
            _, pi, pj = min(nonzero)
            a[t], a[pi] = a[pi], a[t]
            for row in a:
                row[t], row[pj] = row[pj], row[t]
            p = a[t][t]
            clean = True
            for i in range(t + 1, n):
                c = a[i][t] // p
                if c:
                    a[i] = [x - c * y for x, y in zip(a[i], a[t])]
                clean &= a[i][t] == 0
            for j in range(t + 1, n):
                c = a[t][j] // p
                if c:
                    for row in a:
                        row[j] -= c * row[t]
                clean &= a[t][j] == 0
            if not clean:
                continue
            # pivot must divide the remaining block
            bad = next(((i, j) for i in range(t + 1, n) for j in range(t + 1, n) if a[i][j] % p), None)
            if bad is None:
                break
            a[t] = [x + y for x, y in zip(a[t], a[bad[0]])]
    return [abs(a[i][i]) for i in range(n)]


def determinant(m: Sequence[Sequence[int]]) -> int:
    """Integer determinant via fraction-free (Bareiss) elimination."""
    a = [list(map(int, row)) for row in m]
    n = len(a)
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1] if n else 1


# Center of the simply connected group, as a list of cyclic factors.
def center_structure(dtype: DynkinType) -> tuple[int, ...]:
    n = dtype.rank
    if dtype.letter == "A":
        return (n + 1,)
    if dtype.letter in "BC":
        return (2,)
    if dtype.letter == "D":
        return (2, 2) if n % 2 == 0 else (4,)
    if dtype.letter == "E":
        return {6: (3,), 7: (2,), 8: ()}[n]
    return ()


D_EVEN_VARIANTS = ("special_orthogonal", "half_spin")


@dataclass(frozen=True)
class Isogeny:
    """Isogeny class: ``simply_connected``, ``adjoint`` or ``quotient`` by a
    central subgroup of order ``order``.  ``variant`` picks between the
    order-2 subgroups of the center for D_even and is otherwise unused."""

    kind: str
    order: int | None = None
    variant: str | None = None

    def __post_init__(self) -> None:
        if self.kind not in ("simply_connected", "adjoint", "quotient"):
            raise InvalidInputError(f"unknown isogeny kind {self.kind!r}")
        if self.kind == "quotient":
            if not isinstance(self.order, int) or self.order < 1:
                raise InvalidInputError("quotient isogeny needs a positive integer order")
        elif self.order is not None:
            raise InvalidInputError(f"{self.kind} isogeny takes no order")
        if self.variant is not None and self.variant not in D_EVEN_VARIANTS:
            raise InvalidInputError(f"unknown D_even variant {self.variant!r}")

    def __str__(self) -> str:
        if self.kind != "quotient":
            return self.kind
        tag = f", {self.variant}" if self.variant else ""
        return f"quotient(order={self.order}{tag})"


@dataclass(frozen=True)
class RootDatum:
    dynkin: DynkinType
    root_system: RootSystem
    isogeny: Isogeny
    pi1_order: int
    dim_g: int
    degrees: InvariantDegrees = field(compare=False)

    @property
    def rank(self) -> int:
        return self.dynkin.rank

    @property
    def num_roots(self) -> int:
        return len(self.root_system.all_roots)

    def summary(self) -> dict[str, object]:
        return {
            "type": str(self.dynkin),
            "isogeny": str(self.isogeny),
            "rank": self.rank,
            "dim": self.dim_g,
            "num_roots": self.num_roots,
            "invariant_degrees": list(self.degrees.degrees),
            "weyl_order": self.degrees.weyl_order,
            "pi1_order": self.pi1_order,
        }


def fundamental_group_order(
    dtype: DynkinType, isogeny: Isogeny, cartan: Sequence[Sequence[int]] | None = None
) -> int:
    """Order of pi_1 for the given isogeny class.

    The adjoint order is the lattice index [P:Q], read off from the Smith
    form of the Cartan matrix.
    """
    cartan = cartan if cartan is not None else cartan_matrix(dtype)
    det = abs(determinant(cartan))
    if isogeny.variant is not None and not (dtype.letter == "D" and dtype.rank % 2 == 0):
        raise InvalidInputError("isogeny variant only applies to D_n with n even")
    if isogeny.kind == "simply_connected":
        return 1
    if isogeny.kind == "adjoint":
        return prod(smith_normal_form(cartan))
    k = isogeny.order
    assert k is not None
    if det % k:
        raise InvalidInputError(f"order {k} does not divide det(Cartan) = {det} for {dtype}")
    center = center_structure(dtype)
    if len(center) == 2:
        if k == 2 and isogeny.variant is None:
            raise InvalidInputError(f"{dtype} has several order-2 central subgroups; give a variant")
        if k != 2 and isogeny.variant is not None:
            raise InvalidInputError("variant is only meaningful for order 2")
    elif isogeny.variant is not None:
        raise InvalidInputError("variant is only meaningful for D_n with n even")
    elif prod(center) % k:
        raise InvalidInputError(f"center of {dtype} has no subgroup of order {k}")
    return k


def make_root_datum(
    letter: str,
    rank: int,
    isogeny: Isogeny | str = "simply_connected",
    weyl_bound: int = DEFAULT_WEYL_BOUND,
) -> RootDatum:
    """Build a split root datum, deriving roots, degrees and pi_1 from scratch."""
    dtype = DynkinType(letter, rank)
    iso = Isogeny(isogeny) if isinstance(isogeny, str) else isogeny
    cartan = cartan_matrix(dtype)
    rs = generate_roots(cartan)
    poincare = weyl_poincare(rs, bound=weyl_bound, expected_order=classical_weyl_order(dtype))
    degrees = invariant_degrees(poincare)
    if degrees.num_positive != rs.num_positive or degrees.weyl_order != sum(poincare):
        raise InvalidInputError("invariant degrees inconsistent with the root system")
    pi1 = fundamental_group_order(dtype, iso, cartan)
    return RootDatum(
        dynkin=dtype,
        root_system=rs,
        isogeny=iso,
        pi1_order=pi1,
        dim_g=rank + len(rs.all_roots),
        degrees=degrees,
    )
