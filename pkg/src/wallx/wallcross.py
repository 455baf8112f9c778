"""Wall-crossing terms as modular-forms residues, their universal
generating function, and the verification suites for the recursion
system, differential equations, blowup consistency and residue
vanishing.

The single authoritative definition of a wall-crossing term is the
closed generating series

    g(sigma, cycles) = exp( sum_i (xi/2 . a_i) z_i / f
                            - (1/2) sum_{ij} Q(a_i,a_j) z_i z_j D / f^2
                            + 3 x e3(2t) / f^2 )
                       * theta^sigma * f * Delta(2t)^2/(Delta(t) Delta(4t))

with D = 2 G2(2t) + e3(2t) = -q dlog theta, and

    delta_{xi, a+2r}(a^a p^r) = a! r! [z^a x^r q^(xi^2/4)] g.

Everything else here (the L,Q,x,t generating function, its normalized
coefficients, the blowup recursions) is a derived view used to
cross-verify that closed form.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import factorial, isqrt

from .arith import CYC_ONE, CYC_ZERO, Cyc8, Rational, rational_part
from .errors import BeyondTruncation, WallxError
from .forms import (delta_2tau, delta_4tau, delta_tau, e3_2tau, eta2tau_cubed,
                    f_form, g2_2tau, g_tilde_4k, phi_form, theta)
from .qseries import MultiSeries, QSeries, ms_exp
from .report import SuiteReport
from .walls import defines_wall_type

__all__ = [
    "CycleData",
    "DeltaTable",
    "LambdaCaps",
    "build_g",
    "delta_eval",
    "build_lambda",
    "p_coefficient",
    "recursion_suite",
    "diffeq_suite",
    "blowup_consistency",
    "blowup_suite",
    "h_k_residue",
    "residue_suite",
    "auto_truncation",
]


def auto_truncation(degree_cap: int) -> int:
    """Truncation (in 1/48 units) sufficient for residue extraction at
    every exponent in [-(degree_cap+3)/4, 0].

    ceil((cap+4)/4) exponents past zero, plus a fixed margin of four
    more; two of the margin exponents are eaten by the
    Delta(2t)^2/(Delta(t)Delta(4t)) division depth.
    """
    return 48 * ((degree_cap + 7) // 4 + 2) + 96


@dataclass(frozen=True)
class CycleData:
    """Pairings of the wall class and intersection numbers of the cycles
    fed into the generating series.

    half_pairings[i] holds (xi/2 . a_i); gram[i][j] holds Q(a_i, a_j).
    ``x_scale`` rescales the point-class slot (used to feed i*p instead
    of p into the exponential).  Entries may be cyclotomic.
    """

    names: tuple
    half_pairings: tuple
    gram: tuple
    x_scale: Cyc8 = CYC_ONE

    def __post_init__(self):
        names = tuple(self.names)
        hp = tuple(Cyc8.of(x) for x in self.half_pairings)
        gram = tuple(tuple(Cyc8.of(x) for x in row) for row in self.gram)
        if len(hp) != len(names) or len(gram) != len(names):
            raise ValueError("cycle data sizes do not match")
        for i, row in enumerate(gram):
            if len(row) != len(names):
                raise ValueError("gram matrix is not square")
            for j in range(len(names)):
                if gram[i][j] != gram[j][i]:
                    raise ValueError("gram matrix is not symmetric")
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "half_pairings", hp)
        object.__setattr__(self, "gram", gram)
        object.__setattr__(self, "x_scale", Cyc8.of(self.x_scale))

    @staticmethod
    def single(half_pairing, gram, x_scale=1) -> "CycleData":
        return CycleData(("z",), (half_pairing,), ((gram,),), Cyc8.of(x_scale))

    def is_rational(self) -> bool:
        return (all(c.is_rational() for c in self.half_pairings)
                and all(c.is_rational() for row in self.gram for c in row)
                and self.x_scale.is_rational())


# -- cached building blocks -------------------------------------------------

@lru_cache(maxsize=None)
def _inv_f(T: int) -> QSeries:
    f = f_form(T)
    return QSeries.constant(1, T - 12) / f


@lru_cache(maxsize=None)
def _inv_f_pow(j: int, T: int) -> QSeries:
    if j == 0:
        return QSeries.constant(1, T)
    return _inv_f_pow(j - 1, T) * _inv_f(T)


@lru_cache(maxsize=None)
def _dt_over_f2(T: int) -> QSeries:
    """(2 G2(2t) + e3(2t)) / f^2, the z^2-slot series."""
    return (g2_2tau(T).scale(2) + e3_2tau(T)) * _inv_f_pow(2, T)


@lru_cache(maxsize=None)
def _e3_over_f2(T: int) -> QSeries:
    return e3_2tau(T) * _inv_f_pow(2, T)


@lru_cache(maxsize=None)
def _inv_theta(T: int) -> QSeries:
    return QSeries.constant(1, T) / theta(T)


@lru_cache(maxsize=None)
def _theta_pow(sigma: int, T: int) -> QSeries:
    if sigma >= 0:
        return theta(T) ** sigma
    return _inv_theta(T) ** (-sigma)


@lru_cache(maxsize=None)
def _prefactor(sigma: int, T: int) -> QSeries:
    """theta^sigma f Delta(2t)^2 / (Delta(t) Delta(4t)); valuation -3/4
    for sigma = 0."""
    quot = delta_2tau(T) ** 2 / (delta_tau(T) * delta_4tau(T))
    return _theta_pow(sigma, T) * f_form(T) * quot


def _exp_argument(cycles: CycleData, layout, T: int) -> MultiSeries:
    """The multivariate argument of the exponential in the closed form."""
    m = len(cycles.names)
    inv_f = _inv_f(T)
    dt = _dt_over_f2(T)
    terms = {}

    def tup(**kw):
        return tuple(kw.get(v, 0) for v in layout.vars)

    for i, name in enumerate(cycles.names):
        if cycles.half_pairings[i]:
            terms[tup(**{name: 1})] = inv_f.scale(cycles.half_pairings[i])
    for i in range(m):
        for j in range(i, m):
            gij = cycles.gram[i][j]
            if not gij:
                continue
            coeff = -gij if i != j else -gij * Cyc8(Rational(1, 2))
            key = {cycles.names[i]: 1}
            key[cycles.names[j]] = key.get(cycles.names[j], 0) + 1
            t = tup(**key)
            terms[t] = (terms[t] + dt.scale(coeff)) if t in terms else dt.scale(coeff)
    # The x-slot sign: the differential equation for the point class,
    # together with the q dlog identities, forces the x-term of the
    # exponent to be +3 x e3(2t)/f^2 = (q dlog eta(2t)^3 - 3 q dlog theta) x.
    xs = cycles.x_scale * Cyc8(3)
    if xs:
        terms[tup(x=1)] = _e3_over_f2(T).scale(xs)
    return MultiSeries(layout.vars, layout.weights, terms, layout.weight_cap,
                       layout.var_caps, q_valid=T - 48)


@dataclass(frozen=True)
class _Layout:
    vars: tuple
    weights: tuple
    weight_cap: int | None
    var_caps: tuple | None


def build_g(sigma: int, cycles: CycleData, weight_cap: int, T: int | None = None,
            var_caps=None) -> MultiSeries:
    """The closed generating series in the cycle variables and x."""
    if T is None:
        T = auto_truncation(weight_cap)
    layout = _Layout(cycles.names + ("x",), (1,) * len(cycles.names) + (2,),
                     weight_cap, tuple(var_caps) if var_caps else None)
    return ms_exp(_exp_argument(cycles, layout, T)) * _prefactor(sigma, T)


@dataclass
class DeltaTable:
    """Wall-crossing values delta_{xi, a+2r}(alpha^a p^r) for one cycle.

    Stored with the exponential-generating normalization: the (a, r)
    entry is a! r! times the series coefficient, so the known value
    delta((2G)^3) = 1 on the quadric is a direct lookup.
    """

    xi_sq: int
    sigma: int
    degree_cap: int
    trunc_used: int
    cycles: CycleData
    entries: dict = field(default_factory=dict)

    def entry(self, a: int, r: int) -> Cyc8:
        return self.entries.get((a, r), CYC_ZERO)

    def rational_entries(self) -> dict:
        return {key: rational_part(val) for key, val in self.entries.items()}

    def to_json_obj(self) -> dict:
        return {
            "xi_sq": self.xi_sq,
            "sigma": self.sigma,
            "degree_cap": self.degree_cap,
            "trunc_used": self.trunc_used,
            "half_pairing": self.cycles.half_pairings[0].serialize(),
            "gram": self.cycles.gram[0][0].serialize(),
            "entries": [
                {"a": a, "r": r, "value": self.entries[(a, r)].serialize()}
                for (a, r) in sorted(self.entries)
            ],
        }


def delta_eval(xi_sq: int, sigma: int, cycles: CycleData, degree_cap: int,
               T: int | None = None) -> DeltaTable:
    """Evaluate the wall-crossing terms of one wall on one cycle.

    Residue extraction is coefficient extraction: the (a, r) entry is
    a! r! [z^a x^r q^(xi_sq/4)] g.  Entries whose weight violates the
    wall-type congruence or bound are asserted to vanish and stored as
    zero.
    """
    if xi_sq >= 0:
        raise ValueError("wall classes have negative square")
    if len(cycles.names) != 1:
        raise ValueError("delta tables are single-cycle; use build_g directly")
    if T is None:
        T = auto_truncation(degree_cap)
    g = build_g(sigma, cycles, degree_cap, T)
    e48 = 12 * xi_sq
    table = DeltaTable(xi_sq, sigma, degree_cap, T, cycles)
    for a, r in g.tuples():
        coeff = g.coeff((a, r)).coeff_at(e48)
        value = coeff * Cyc8(Rational(factorial(a) * factorial(r)))
        if not defines_wall_type(xi_sq, a + 2 * r) and value:
            raise WallxError(
                f"nonzero residue off the wall type: xi^2={xi_sq}, N={a + 2*r}")
        table.entries[(a, r)] = value
    return table


# -- universal generating function -----------------------------------------

@dataclass(frozen=True)
class LambdaCaps:
    L: int
    Q: int
    x: int
    t: int


@lru_cache(maxsize=None)
def build_lambda(caps: LambdaCaps, sigma: int, T: int) -> MultiSeries:
    """The universal generating function in L, Q, x, t:

    exp(L/f - (Q/2) D/f^2 + 3x e3(2t)/f^2 + t/theta)
        * theta^sigma f Delta(2t)^2/(Delta(t) Delta(4t)).

    The t-slot is exp(t/theta) and the normalizing series carries
    theta^sigma: these are the forms consistent with the differential
    equation theta dLambda/dt = Lambda, and the diffeq suite enforces
    them.  The x-slot sign likewise follows from its differential
    equation: +3 e3(2t)/f^2 = q dlog(eta(2t)^3)/f^2 - 3 q dlog(theta)/f^2.
    """
    vars_ = ("L", "Q", "x", "t")
    weights = (1, 2, 2, 0)
    var_caps = (caps.L, caps.Q, caps.x, caps.t)
    terms = {
        (1, 0, 0, 0): _inv_f(T),
        (0, 1, 0, 0): _dt_over_f2(T).scale(Rational(-1, 2)),
        (0, 0, 1, 0): _e3_over_f2(T).scale(3),
        (0, 0, 0, 1): _inv_theta(T),
    }
    arg = MultiSeries(vars_, weights, terms, None, var_caps, q_valid=T - 48)
    return ms_exp(arg) * _prefactor(sigma, T)


def p_coefficient(l: int, k: int, r: int, b: int, w, sigma_base: int = 0,
                  lam: MultiSeries | None = None) -> Cyc8:
    """Normalized coefficient of the universal generating function:
    l! k! r! b! times the coefficient of L^l Q^k x^r t^b q^w.

    ``w`` must be a multiple of 1/4 (it plays the role of xi^2/4).
    """
    if min(l, k, r, b) < 0:
        return CYC_ZERO
    w = Rational(w)
    e48 = 48 * w
    if e48.denominator != 1 or int(e48) % 12:
        raise ValueError(f"w must be a multiple of 1/4, got {w}")
    e48 = int(e48)
    if lam is None:
        T = max(auto_truncation(l + 2 * k + 2 * r + 2 * b + 3), e48 + 48)
        lam = build_lambda(LambdaCaps(l, k, r, b), sigma_base, T)
    scale = Cyc8(Rational(factorial(l) * factorial(k) * factorial(r) * factorial(b)))
    return lam.coeff((l, k, r, b)).coeff_at(e48) * scale


# -- recursion suite --------------------------------------------------------

def recursion_suite(max_weight: int = 8, max_b: int = 2, min_w4: int = -25,
                    max_w4: int = 11, sigma_base: int = 0) -> SuiteReport:
    """Check the four blowup recursions of the normalized coefficients
    P(l,k,r,b,w) exactly on the grid l+2k+2r <= max_weight, b <= max_b,
    min_w4 <= 4w <= max_w4.

    The lattice sums over n are finite because P(l,k,r,b,w) vanishes
    for 4w < -(l+2k+2r+3); the sums themselves are pure rational
    arithmetic on the coefficient table, independent of the series
    machinery that produced it.
    """
    caps = LambdaCaps(max_weight + 3, max_weight // 2 + 1, max_weight // 2 + 1,
                      max_b + 1)
    T = max(auto_truncation(caps.L + 2 * caps.Q + 2 * caps.x + 3), 12 * max_w4 + 96)
    lam = build_lambda(caps, sigma_base, T)
    fact = factorial

    @lru_cache(maxsize=None)
    def P(l, k, r, b, w4):
        if min(l, k, r, b) < 0:
            return Rational(0)
        if w4 < -(l + 2 * k + 2 * r + 3):
            return Rational(0)
        coeff = lam.coeff((l, k, r, b)).coeff_at(12 * w4)
        return rational_part(coeff) * fact(l) * fact(k) * fact(r) * fact(b)

    def sum_even(l, k, r, b, w4, weight=0):
        # sum over n of n^weight P(l,k,r,b, w - n^2)
        bound = w4 + l + 2 * k + 2 * r + 3
        acc = Rational(0)
        n = 0
        while 4 * n * n <= bound:
            term = P(l, k, r, b, w4 - 4 * n * n) * n ** weight
            acc += term if n == 0 else 2 * term
            n += 1
        return acc

    def sum_odd(l, k, r, b, w4, weight=1):
        # sum over n of (-1)^n (n+1/2)^weight P(l,k,r,b, w-(n+1/2)^2);
        # pairs n and -n-1 combine to 2*(-1)^n (n+1/2)^weight for odd weight
        bound = w4 + l + 2 * k + 2 * r + 3
        acc = Rational(0)
        n = 0
        while (2 * n + 1) ** 2 <= bound:
            half = Rational(2 * n + 1, 2)
            term = P(l, k, r, b, w4 - (2 * n + 1) ** 2) * half ** weight
            acc += 2 * term if n % 2 == 0 else -2 * term
            n += 1
        return acc

    grid = [(l, k, r) for l in range(max_weight + 1)
            for k in range((max_weight - l) // 2 + 1)
            for r in range((max_weight - l - 2 * k) // 2 + 1)]
    names = ["identity: P(.,b,w) = sum_n P(.,b+1,w-n^2)",
             "blowup: P(.,b,w) = sum_n (-1)^n (n+1/2) P(l+1,.,b+1,w-(n+1/2)^2)",
             "square-class: sum n^2 P(.,b+1,.) = 2 sum P(l-2,k+1,b+1,.)",
             "point-class: P(.,r+1,b,w) = sum (-1)^(n+1)((n+1/2)^3 P(l+3) - 6(n+1/2) P(l+1,k+1))"]
    fails = [[] for _ in range(4)]
    count = 0
    for w4 in range(min_w4, max_w4 + 1):
        for l, k, r in grid:
            count += 1
            if P(l, k, r, 0, w4) is None:  # pragma: no cover
                continue
            for b in range(max_b + 1):
                lhs0 = P(l, k, r, b, w4)
                if lhs0 != sum_even(l, k, r, b + 1, w4):
                    fails[0].append((l, k, r, b, w4))
                if lhs0 != sum_odd(l + 1, k, r, b + 1, w4, weight=1):
                    fails[1].append((l, k, r, b, w4))
                if sum_even(l, k, r, b + 1, w4, weight=2) != \
                        2 * sum_even(l - 2, k + 1, r, b + 1, w4):
                    fails[2].append((l, k, r, b, w4))
                rhs3 = (sum_odd(l + 3, k, r, b + 1, w4, weight=3)
                        - 6 * sum_odd(l + 1, k + 1, r, b + 1, w4, weight=1))
                if P(l, k, r + 1, b, w4) != -rhs3:
                    fails[3].append((l, k, r, b, w4))
    report = SuiteReport("recursions")
    for name, bad in zip(names, fails):
        detail = f"{len(bad)} failures, first {bad[:3]}" if bad else \
            f"{count * (max_b + 1)} instances"
        report.add(name, not bad, detail)
    return report


# -- differential equation suite --------------------------------------------

def _ms_equal(lhs: MultiSeries, rhs: MultiSeries, region, through: int):
    """First (tuple, exponent) where two multiseries differ on a region."""
    for t in region:
        e = lhs.coeff(t).first_difference(rhs.coeff(t), through)
        if e is not None:
            return t, e
    return None


def diffeq_suite(caps: LambdaCaps = LambdaCaps(6, 3, 2, 3), q_max: int = 10,
                 sigma_base: int = 0) -> SuiteReport:
    """Verify the four differential equations of the universal generating
    function exactly through q-exponent ``q_max`` on the given caps:

        theta dL/dt = L
        eta(2t)^3 d^2 L/dLdt = L
        2 theta dL/dQ = (q d/dq theta) d^2 L/dL^2
        dL/dx = (q d/dq eta(2t)^3) d^3L/dL^3 dt - 6 eta(2t)^3 d^3L/dLdQdt
    """
    build = LambdaCaps(caps.L + 3, caps.Q + 1, caps.x + 1, caps.t + 1)
    N_max = build.L + 2 * build.Q + 2 * build.x
    T = auto_truncation(N_max) + 48 * q_max
    lam = build_lambda(build, sigma_base, T)
    th = theta(T)
    eta3 = eta2tau_cubed(T)
    region = [t for t in lam.tuples()
              if t[0] <= caps.L and t[1] <= caps.Q and t[2] <= caps.x
              and t[3] <= caps.t]
    through = 48 * q_max
    report = SuiteReport("diffeq")

    d_t = lam.partial("t")
    d_L = lam.partial("L")

    checks = [
        ("theta dL/dt = L", d_t * th, lam),
        ("eta(2t)^3 d2L/dLdt = L", d_t.partial("L") * eta3, lam),
        ("2 theta dL/dQ = (q d/dq theta) d2L/dL2",
         lam.partial("Q") * th.scale(2), d_L.partial("L") * th.euler()),
        ("dL/dx = (q d/dq eta(2t)^3) d4L/dL3dt - 6 eta(2t)^3 d3L/dLdQdt",
         lam.partial("x"),
         d_t.partial("L").partial("L").partial("L") * eta3.euler()
         - d_t.partial("L").partial("Q") * eta3 * 6),
    ]
    for name, lhs, rhs in checks:
        bad = _ms_equal(lhs, rhs, region, through)
        if bad is None:
            report.add(name, True, f"{len(region)} slots through q^{q_max}")
        else:
            t, e = bad
            report.add(name, False, detail=f"slot {t}", first_fail_exponent48=e)
    return report


# -- blowup consistency ------------------------------------------------------

def blowup_consistency(xi_sq: int, sigma: int, degree_cap: int,
                       half_pairing=Rational(3, 2), gram=Rational(-2),
                       T: int | None = None) -> SuiteReport:
    """Check that the closed form reproduces its own blowup extension:

    (0)-type:  delta_{xi,N}(a^a p^r) = sum_n delta'_{xi+2nE,N}(a^a p^r)
    (1)-type:  delta_{xi,N}(a^a p^r) = sum_n (-1)^(n-1) delta'_{xi+(2n+1)E,N+1}(E a^a p^r)
    (3)-type:  delta_{xi,N}(a^a p^(r+1)) = sum_n (-1)^n delta'_{xi+(2n+1)E,N+1}(E^3 a^a p^r)

    where delta' lives on the blowup (sigma drops by one) and the
    exceptional-class insertions are realized as derivatives in an
    auxiliary weight-1 variable with pairing -(2n+1)/2 and self
    intersection -1.  Sums are finite by the wall-type bound.
    """
    if T is None:
        T = auto_truncation(degree_cap + 3)
    lam, c = Cyc8.of(half_pairing), Cyc8.of(gram)
    layout = _Layout(("z", "w", "x"), (1, 1, 2), degree_cap + 3, (degree_cap, 3, degree_cap // 2))
    base_cycles = CycleData(("z", "w"), (lam, CYC_ZERO), ((c, CYC_ZERO), (CYC_ZERO, CYC_ZERO)))
    exp_z = ms_exp(_exp_argument(base_cycles, layout, T))
    g_X = exp_z * _prefactor(sigma, T)          # w-slots empty: the base surface
    g_hat_base = exp_z * _prefactor(sigma - 1, T)

    inv_f = _inv_f(T)
    dt = _dt_over_f2(T)

    def g_hat(two_n_plus_1: int) -> MultiSeries:
        """Blowup series with the auxiliary exceptional variable."""
        mu = Cyc8(Rational(-two_n_plus_1, 2))
        terms = {}
        if mu:
            terms[(0, 1, 0)] = inv_f.scale(mu)
        # gram(w,w) = -1 contributes +(1/2) w^2 D/f^2
        terms[(0, 2, 0)] = dt.scale(Rational(1, 2))
        arg = MultiSeries(layout.vars, layout.weights, terms, layout.weight_cap,
                          layout.var_caps, q_valid=T - 48)
        return g_hat_base * ms_exp(arg)

    pairs = [(a, r) for a in range(degree_cap + 1)
             for r in range((degree_cap - a) // 2 + 1)]
    report = SuiteReport(f"blowup xi^2={xi_sq} sigma={sigma}")
    e48 = 12 * xi_sq

    def lhs_entry(a, r):
        coeff = g_X.coeff((a, 0, r)).coeff_at(e48)
        return coeff * Rational(factorial(a) * factorial(r))

    # (0)-type: even shifts, same weight, no insertion
    bad = []
    for a, r in pairs:
        N = a + 2 * r
        rhs = CYC_ZERO
        n = 0
        while 4 * n * n <= N + 3 + xi_sq:
            term = g_hat_base.coeff((a, 0, r)).coeff_at(e48 - 48 * n * n)
            rhs = rhs + (term if n == 0 else term * 2)
            n += 1
        if lhs_entry(a, r) != rhs * Rational(factorial(a) * factorial(r)):
            bad.append((a, r))
    report.add("even shifts: delta = sum_n delta'(xi+2nE)", not bad,
               f"{len(bad)} failures {bad[:3]}" if bad else f"{len(pairs)} entries")

    # odd shifts need the per-n auxiliary series
    cache = {}

    def ghat_for(m_odd):
        if m_odd not in cache:
            cache[m_odd] = g_hat(m_odd)
        return cache[m_odd]

    bad1, bad3 = [], []
    for a, r in pairs:
        N = a + 2 * r
        rhs1 = CYC_ZERO
        n = 0
        while (2 * n + 1) ** 2 <= N + 4 + xi_sq:
            for nn in (n, -n - 1):  # 2nn+1 = +/-(2n+1)
                sign = 1 if (nn - 1) % 2 == 0 else -1  # (-1)^(nn-1)
                coeff = ghat_for(2 * nn + 1).coeff((a, 1, r)).coeff_at(
                    e48 - 12 * (2 * n + 1) ** 2)
                rhs1 = rhs1 + coeff * Rational(sign * factorial(a) * factorial(r))
            n += 1
        if lhs_entry(a, r) != rhs1:
            bad1.append((a, r))

        if a + 2 * r + 2 > degree_cap:
            continue
        lhs3 = g_X.coeff((a, 0, r + 1)).coeff_at(e48) * \
            Rational(factorial(a) * factorial(r + 1))
        rhs3 = CYC_ZERO
        N3 = a + 2 * r + 2
        n = 0
        while (2 * n + 1) ** 2 <= N3 + 4 + xi_sq:
            for nn in (n, -n - 1):
                sign = 1 if nn % 2 == 0 else -1  # (-1)^nn
                coeff = ghat_for(2 * nn + 1).coeff((a, 3, r)).coeff_at(
                    e48 - 12 * (2 * n + 1) ** 2)
                rhs3 = rhs3 + coeff * Rational(
                    sign * factorial(3) * factorial(a) * factorial(r))
            n += 1
        if lhs3 != rhs3:
            bad3.append((a, r))

    report.add("odd shifts: delta = sum (-1)^(n-1) delta'(xi+(2n+1)E, E insertion)",
               not bad1, f"{len(bad1)} failures {bad1[:3]}" if bad1 else f"{len(pairs)} entries")
    report.add("point class: delta(p.) = sum (-1)^n delta'(xi+(2n+1)E, E^3 insertion)",
               not bad3, f"{len(bad3)} failures {bad3[:3]}" if bad3 else "all entries")
    return report


def blowup_suite(xi_min: int = -10, xi_max: int = -3, sigma_lo: int = -2,
                 sigma_hi: int = 2, degree_cap: int = 8) -> SuiteReport:
    """Blowup consistency over a grid of wall squares and signatures."""
    report = SuiteReport("blowup")
    for xi_sq in range(xi_max, xi_min - 1, -1):
        for sigma in range(sigma_lo, sigma_hi + 1):
            sub = blowup_consistency(xi_sq, sigma, degree_cap)
            ok = sub.ok
            detail = "" if ok else "; ".join(
                c.line() for c in sub.checks if not c.passed)
            report.add(f"xi^2={xi_sq} sigma={sigma}", ok, detail)
    return report


# -- residue vanishing -------------------------------------------------------

def h_k_residue(k: int, T: int | None = None) -> Cyc8:
    """Constant-term residue of the weight-2 combination

        H_k = [sum_{d odd} (-1)^((d-1)/2) sigma_{4k-1}(d) q^(d/4)]
              * Delta(t) / phi^(2k+5),

    with phi the half-scale eta quotient of leading term q^(1/4).
    Vanishes for every k >= 1.
    """
    if T is None:
        T = 48 * (4 * k + 10)
    h = g_tilde_4k(k, T) * delta_tau(T) / phi_form(T) ** (2 * k + 5)
    return h.coeff_at(0)


def residue_suite(k_max: int = 3) -> SuiteReport:
    report = SuiteReport("residues")
    for k in range(1, k_max + 1):
        val = h_k_residue(k)
        report.add(f"res_q H_{k} = 0", not val, "" if not val else f"got {val!r}")
    return report
