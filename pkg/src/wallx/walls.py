"""Intersection lattices of the relevant surfaces and enumeration of the
integral classes defining walls of a given type between two period points.

The built-in geometries are the rank-2 lattices the pipeline needs: the
odd unimodular form diag(1,-1) of the one-point blowup of the plane, and
the hyperbolic plane of the quadric surface, each optionally extended by
further -1 summands.

A class xi with xi^2 < 0 defines a wall of type (N) when

    xi^2 + N + 3 == 0  (mod 4)   and   -(N+3) <= xi^2 < 0.

Note on the congruence: it is equivalent to the integrality of the
crossing sign exponent (5N+3+xi^2+(xi-c1)^2)/4 and of the wall dimension
(N+3+xi^2)/4, and it is preserved by the blowup shifts
xi -> xi + (2n+1)E, N -> N+1.  A congruence of the shape
xi^2 == N+3 (mod 4) fails all three checks for even N.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import isqrt

from .arith import Rational
from .errors import UnboundedSearch

__all__ = [
    "Lattice",
    "WallClass",
    "defines_wall_type",
    "walls_blowupP2_h",
    "walls_blowupP2_e",
    "walls_P1xP1",
    "enumerate_walls",
]


def defines_wall_type(xi_sq: int, N: int) -> bool:
    """True iff a class of square xi_sq defines a wall of type (N)."""
    return xi_sq < 0 and -(N + 3) <= xi_sq and (xi_sq + N + 3) % 4 == 0


@dataclass(frozen=True, order=True)
class WallClass:
    """Integer lattice class with its cached self-intersection."""

    coords: tuple
    xi_sq: int


class Lattice:
    """Rank-r lattice of signature (1, r-1).

    kind "diag":        diag(1, -1, ..., -1)
    kind "hyperbolic":  [[0,1],[1,0]] plus diag(-1, ..., -1)
    """

    def __init__(self, kind: str, rank: int):
        if kind not in ("diag", "hyperbolic"):
            raise ValueError(f"unknown lattice kind {kind!r}")
        if rank < 2:
            raise ValueError("rank must be at least 2")
        self.kind = kind
        self.rank = rank

    @staticmethod
    def blowup_p2(extra_blowups: int = 0) -> "Lattice":
        return Lattice("diag", 2 + extra_blowups)

    @staticmethod
    def p1xp1(extra_blowups: int = 0) -> "Lattice":
        return Lattice("hyperbolic", 2 + extra_blowups)

    def pairing(self, x, y):
        if self.kind == "diag":
            acc = x[0] * y[0]
            start = 1
        else:
            acc = x[0] * y[1] + x[1] * y[0]
            start = 2
        for i in range(start, self.rank):
            acc -= x[i] * y[i]
        return acc

    def norm(self, x):
        return self.pairing(x, x)

    def pairing_vector(self, a):
        """Vector pi with (xi . a-dual) = sum_i xi_i pi_i for integral xi."""
        basis = [tuple(1 if j == i else 0 for j in range(self.rank))
                 for i in range(self.rank)]
        return tuple(self.pairing(e, a) for e in basis)


# -- closed-form wall sets --------------------------------------------------

def _sorted_walls(classes) -> list[WallClass]:
    return sorted(WallClass(tuple(c), s) for c, s in classes)


def walls_blowupP2_h(N: int) -> list[WallClass]:
    """(2n-1)H - 2aE with a >= n > 0 defining a wall of type (N);
    the classes crossed between the ruling fibre H-E and H."""
    out = []
    n = 1
    while (2 * n - 1) ** 2 - 4 * n * n + N + 3 >= 0:
        a = n
        while True:
            xi_sq = (2 * n - 1) ** 2 - 4 * a * a
            if xi_sq < -(N + 3):
                break
            if defines_wall_type(xi_sq, N):
                out.append(((2 * n - 1, -2 * a), xi_sq))
            a += 1
        n += 1
    return _sorted_walls(out)


def walls_blowupP2_e(N: int) -> list[WallClass]:
    """2nH - (2a-1)E with a > n > 0 defining a wall of type (N)."""
    out = []
    n = 1
    while 4 * n * n - (2 * n + 1) ** 2 + N + 3 >= 0:
        a = n + 1
        while True:
            xi_sq = 4 * n * n - (2 * a - 1) ** 2
            if xi_sq < -(N + 3):
                break
            if defines_wall_type(xi_sq, N):
                out.append(((2 * n, -(2 * a - 1)), xi_sq))
            a += 1
        n += 1
    return _sorted_walls(out)


def walls_P1xP1(N: int) -> list[WallClass]:
    """(2n-1)F - (2m-1)G with n, m > 0 defining a wall of type (N);
    the classes crossed between the two rulings."""
    out = []
    n = 1
    while 2 * (2 * n - 1) <= N + 3:
        m = 1
        while True:
            xi_sq = -2 * (2 * n - 1) * (2 * m - 1)
            if xi_sq < -(N + 3):
                break
            if defines_wall_type(xi_sq, N):
                out.append(((2 * n - 1, -(2 * m - 1)), xi_sq))
            m += 1
        n += 1
    return _sorted_walls(out)


# -- generic brute-force enumeration ---------------------------------------

def _sqrt_upper(x) -> int:
    """Integer upper bound for sqrt of a nonnegative rational."""
    x = Rational(x)
    if x < 0:
        raise ValueError("negative argument")
    num, den = x.numerator, x.denominator
    return (isqrt(num * den) + den) // den  # >= sqrt(num/den)


def _min_positive_pairing(pi) -> Rational:
    """Smallest positive |sum xi_i pi_i| over integral xi, as a lower bound:
    1/lcm of the denominators of the nonzero entries."""
    den = 1
    any_nonzero = False
    for p in pi:
        if p:
            any_nonzero = True
            d = Rational(p).denominator
            den = den * d // _gcd(den, d)
    if not any_nonzero:
        raise UnboundedSearch("endpoint pairs to zero with the whole lattice")
    return Rational(1, den)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _invert(mat):
    """Exact inverse of a small square rational matrix (Gauss-Jordan)."""
    n = len(mat)
    aug = [[Rational(mat[i][j]) for j in range(n)]
           + [Rational(1 if i == j else 0) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col]), None)
        if piv is None:
            raise UnboundedSearch("degenerate complement Gram matrix")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                factor = aug[r][col]
                aug[r] = [x - factor * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def _kernel_basis(pi_minus, pi_plus, rank):
    """Rational basis of the subspace pairing to zero with both endpoints."""
    rows = [list(pi_minus), list(pi_plus)]
    pivots = []
    for r in range(2):
        piv = next((c for c in range(rank) if rows[r][c] and c not in pivots), None)
        if piv is None:
            raise UnboundedSearch("endpoints do not span a plane")
        inv = 1 / Rational(rows[r][piv])
        rows[r] = [x * inv for x in rows[r]]
        for r2 in range(2):
            if r2 != r and rows[r2][piv]:
                factor = rows[r2][piv]
                rows[r2] = [x - factor * y for x, y in zip(rows[r2], rows[r])]
        pivots.append(piv)
    basis = []
    for free in range(rank):
        if free in pivots:
            continue
        vec = [Rational(0)] * rank
        vec[free] = Rational(1)
        for r, piv in enumerate(pivots):
            vec[piv] = -rows[r][free]
        basis.append(vec)
    return basis


def enumerate_walls(lat: Lattice, parity, N: int, A_minus, A_plus) -> list[WallClass]:
    """All integral xi with xi = parity mod 2 defining a wall of type (N)
    with xi.A_minus < 0 < xi.A_plus, by exhaustive scan of a finite box.

    The box is derived exactly: writing p-+ = xi.A-+, the constraint
    xi^2 >= -(N+3) projected to the plane of the endpoints gives

        2b|p-|p+ + c p-^2 + a p+^2 <= (N+3) |det G|,

    all terms nonnegative, where G = [[a,b],[b,c]] is the endpoint Gram
    matrix; integrality of xi bounds |p-|, p+ away from zero, hence both
    from above, hence the plane component of xi; the complement is
    negative definite and bounded by (N+3).  Completeness is re-asserted
    by checking that the boundary shell of the box contains no solution.
    """
    parity = tuple(int(x) % 2 for x in parity)
    if len(parity) != lat.rank:
        raise ValueError("parity length must equal the lattice rank")
    A_minus = tuple(Rational(x) for x in A_minus)
    A_plus = tuple(Rational(x) for x in A_plus)
    a = lat.norm(A_minus)
    c = lat.norm(A_plus)
    b = lat.pairing(A_minus, A_plus)
    det = a * c - b * b
    if a < 0 or c < 0 or b <= 0 or det >= 0:
        raise UnboundedSearch(
            "endpoints must be independent classes in the closed positive cone "
            f"(got A-^2={a}, A+^2={c}, A-.A+={b})")
    pi_minus = lat.pairing_vector(A_minus)
    pi_plus = lat.pairing_vector(A_plus)
    budget = (N + 3) * (-det)
    p_minus_cap = budget / (2 * b * _min_positive_pairing(pi_plus))
    p_plus_cap = budget / (2 * b * _min_positive_pairing(pi_minus))
    # plane component in the endpoint basis: (u, v) = G^{-1} (p-, p+)
    u_cap = (c * p_minus_cap + b * p_plus_cap) / (-det)
    v_cap = (b * p_minus_cap + a * p_plus_cap) / (-det)
    plane_bound = [abs(A_minus[i]) * u_cap + abs(A_plus[i]) * v_cap
                   for i in range(lat.rank)]
    # negative-definite complement, ||.||^2 <= N+3
    perp_bound = [Rational(0)] * lat.rank
    if lat.rank > 2:
        kernel = _kernel_basis(pi_minus, pi_plus, lat.rank)
        gram = [[-lat.pairing(w1, w2) for w2 in kernel] for w1 in kernel]
        ginv = _invert(gram)
        for j, w in enumerate(kernel):
            yj = _sqrt_upper((N + 3) * ginv[j][j])
            for i in range(lat.rank):
                perp_bound[i] += abs(w[i]) * yj

    box = [int(plane_bound[i] + perp_bound[i]) + 1 for i in range(lat.rank)]

    def matches(xi):
        if any(x % 2 != p for x, p in zip(xi, parity)):
            return None
        xi_sq = lat.norm(xi)
        if not defines_wall_type(xi_sq, N):
            return None
        pm = sum(x * p for x, p in zip(xi, pi_minus))
        pp = sum(x * p for x, p in zip(xi, pi_plus))
        if not (pm < 0 < pp):
            return None
        return WallClass(tuple(xi), xi_sq)

    found = []
    for xi in itertools.product(*(range(-B, B + 1) for B in box)):
        w = matches(xi)
        if w is not None:
            found.append(w)

    # boundary shell must be empty, or the bound derivation is wrong
    shell = [B + 1 for B in box]
    for xi in itertools.product(*(range(-B, B + 1) for B in shell)):
        if all(abs(x) <= B for x, B in zip(xi, box)):
            continue
        if matches(xi) is not None:  # pragma: no cover - proven impossible
            raise UnboundedSearch(f"solution {xi} found on the boundary shell")

    return sorted(found)
