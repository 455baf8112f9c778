"""Constructors for the named modular forms of the pipeline, and a
machine-checkable identity suite relating them.

All forms are exact q-expansions on the 1/48 lattice:

* eta quotients  prod_m eta(m*tau)^{e_m}  for half-integral scales m,
  built from the sparse pentagonal-number expansion of the Euler product;
* theta(tau) = sum_n q^{n^2} as a lattice sum;
* the weight-2 Eisenstein series G_2(2*tau) and the 2-division value
  e_3(2*tau) from sieved divisor sums;
* f(tau) = eta(2*tau)^3/theta(tau), whose numerator the engine takes
  from the signed half-integer-square sum (sparse), cross-checked
  against the eta product by the identity suite;
* the odd-divisor twisted Eisenstein sums  sum_{d odd}
  (-1)^((d-1)/2) sigma_{4k-1}(d) q^(d/4).

Constructors are memoized per truncation; they are pure, so the caching
is observationally transparent.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .arith import Cyc8, Rational
from .qseries import QSeries, q_log_deriv
from .report import SuiteReport

__all__ = [
    "EtaQuotientSpec",
    "eta_quotient",
    "theta",
    "g2_2tau",
    "e3_2tau",
    "eta2tau_cubed",
    "f_form",
    "g_tilde_4k",
    "delta_tau",
    "delta_2tau",
    "delta_4tau",
    "phi_form",
    "identity_suite",
    "sigma1",
    "sigma1_odd",
    "sigma_pow",
]


# -- divisor sums ---------------------------------------------------------

@lru_cache(maxsize=None)
def _sigma_table(bound: int, power: int):
    """sieved sigma_power(n) for 1 <= n <= bound"""
    table = [0] * (bound + 1)
    for d in range(1, bound + 1):
        dk = d ** power
        for n in range(d, bound + 1, d):
            table[n] += dk
    return table


def sigma1(n: int) -> int:
    return _sigma_table(n, 1)[n]


def sigma_pow(n: int, power: int) -> int:
    return _sigma_table(n, power)[n]


def sigma1_odd(n: int) -> int:
    """Sum of the odd divisors of n."""
    return sum(d for d in range(1, n + 1, 2) if n % d == 0)


# -- eta quotients --------------------------------------------------------

@dataclass(frozen=True)
class EtaQuotientSpec:
    """Finite product prod eta(scale*tau)^power.

    Scales must be positive half-integers so that each factor's leading
    exponent scale*power/24 lands on the 1/48 lattice.
    """

    factors: tuple

    def __post_init__(self):
        factors = tuple((Rational(s), int(p)) for s, p in self.factors)
        for s, p in factors:
            if s <= 0 or (2 * s).denominator != 1:
                raise ValueError(f"eta scale must be a positive half-integer, got {s}")
        if not factors:
            raise ValueError("eta quotient needs at least one factor")
        object.__setattr__(self, "factors", factors)


@lru_cache(maxsize=None)
def _euler_product(m48: int, T: int) -> QSeries:
    """prod_{n>0} (1 - q^(m48*n/48)) via generalized pentagonal numbers."""
    pairs = [(0, 1)]
    k = 1
    while True:
        e1 = m48 * (k * (3 * k - 1) // 2)
        e2 = m48 * (k * (3 * k + 1) // 2)
        if e1 > T and e2 > T:
            break
        sign = -1 if k % 2 else 1
        if e1 <= T:
            pairs.append((e1, sign))
        if e2 <= T:
            pairs.append((e2, sign))
        k += 1
    return QSeries.from_pairs(pairs, T)


def eta_quotient(spec, T: int) -> QSeries:
    """Exact expansion of an eta quotient through exponent T/48."""
    if not isinstance(spec, EtaQuotientSpec):
        spec = EtaQuotientSpec(tuple(spec))
    return _eta_quotient_cached(spec.factors, T)


@lru_cache(maxsize=None)
def _eta_quotient_cached(factors, T: int) -> QSeries:
    result = None
    for s, p in factors:
        m48 = int(48 * s)
        prefix = Rational(m48, 24) * p
        if prefix.denominator != 1:
            raise ValueError(f"factor eta({s}*tau)^{p} leaves the 1/48 lattice")
        # build deep enough that the shifted, multiplied result reaches T
        depth = T + max(0, -int(prefix)) + 8
        ser = (_euler_product(m48, depth) ** p).shift(int(prefix))
        result = ser if result is None else result * ser
    return QSeries(result.lo, result.coeffs, min(result.valid_to, T + 4))


@lru_cache(maxsize=None)
def theta(T: int) -> QSeries:
    """theta(tau) = sum_{n in Z} q^(n^2)."""
    pairs = [(0, 1)]
    n = 1
    while 48 * n * n <= T:
        pairs.append((48 * n * n, 2))
        n += 1
    return QSeries.from_pairs(pairs, T)


@lru_cache(maxsize=None)
def g2_2tau(T: int) -> QSeries:
    """G_2(2*tau) = -1/24 + sum sigma_1(n) q^(2n)."""
    bound = T // 96
    sig = _sigma_table(bound, 1) if bound >= 1 else [0]
    pairs = [(0, Rational(-1, 24))]
    pairs += [(96 * n, sig[n]) for n in range(1, bound + 1)]
    return QSeries.from_pairs(pairs, T)


@lru_cache(maxsize=None)
def e3_2tau(T: int) -> QSeries:
    """e_3(2*tau) = 1/12 + 2 sum (-1)^n sigma_1^odd(n) q^n.

    The alternating sign is forced by the rest of the system: this is
    the unique series with constant term 1/12 satisfying
    q dlog theta = -2 G2(2*tau) - e3(2*tau), and only with it do the
    blowup recursions and their differential equations close up.  (A
    non-alternating odd-divisor sum would differ from this one by the
    half-period shift tau -> tau + 1/2 hidden in the q^(n/2) powers of
    the untwisted 2-division value.)
    """
    bound = T // 48
    pairs = [(0, Rational(1, 12))]
    pairs += [(48 * n, (2 if n % 2 == 0 else -2) * sigma1_odd(n))
              for n in range(1, bound + 1)]
    return QSeries.from_pairs(pairs, T)


@lru_cache(maxsize=None)
def eta2tau_cubed(T: int) -> QSeries:
    """eta(2*tau)^3 as the signed sum of half-integer squares,
    sum_{n in Z} (-1)^n (n+1/2) q^((n+1/2)^2) = sum_{n>=0} (-1)^n (2n+1) q^((2n+1)^2/4)."""
    pairs = []
    n = 0
    while 12 * (2 * n + 1) ** 2 <= T:
        sign = -1 if n % 2 else 1
        pairs.append((12 * (2 * n + 1) ** 2, Rational(sign * (2 * n + 1))))
        n += 1
    return QSeries.from_pairs(pairs, T)


@lru_cache(maxsize=None)
def f_form(T: int) -> QSeries:
    """f(tau) = eta(2*tau)^3 / theta(tau); valuation 1/4, leading coefficient 1."""
    return eta2tau_cubed(T) / theta(T)


@lru_cache(maxsize=None)
def g_tilde_4k(k: int, T: int) -> QSeries:
    """sum over odd d > 0 of (-1)^((d-1)/2) sigma_{4k-1}(d) q^(d/4)."""
    if k < 1:
        raise ValueError("k must be a positive integer")
    bound = T // 12
    pairs = []
    for d in range(1, bound + 1, 2):
        sign = -1 if (d - 1) // 2 % 2 else 1
        pairs.append((12 * d, sign * sigma_pow(d, 4 * k - 1)))
    return QSeries.from_pairs(pairs, T)


def delta_tau(T: int) -> QSeries:
    """Delta(tau) = eta(tau)^24 = q prod (1-q^n)^24."""
    return eta_quotient(((1, 24),), T)


def delta_2tau(T: int) -> QSeries:
    return eta_quotient(((2, 24),), T)


def delta_4tau(T: int) -> QSeries:
    return eta_quotient(((4, 24),), T)


def phi_form(T: int) -> QSeries:
    """(eta(tau/2) eta(2*tau) / eta(tau))^4, leading term q^(1/4).

    Built directly as a half-scale eta quotient; no tau/2 substitution
    machinery exists anywhere else in the pipeline.
    """
    return eta_quotient(((Rational(1, 2), 4), (2, 4), (1, -4)), T)


# -- identity suite -------------------------------------------------------

def _check(report, name, lhs, rhs, through):
    e = lhs.first_difference(rhs, through)
    if e is None:
        report.add(name, True)
    else:
        report.add(name, False,
                   detail=f"{lhs.coeff_at(e)!r} != {rhs.coeff_at(e)!r}",
                   first_fail_exponent48=e)


def identity_suite(T: int, _theta_override=None) -> SuiteReport:
    """Verify the modular identities used by the engine, coefficientwise
    through exponent T/48.

    The checks: the two constructions of eta(2*tau)^3; theta and f as
    eta quotients; the q-logarithmic derivatives of eta(2*tau) and
    theta; f^12 = Delta(tau)Delta(4*tau)/Delta(2*tau); and the two forms
    of the series normalizing the wall-crossing generating function,
    Delta(2*tau)/f^11 = f Delta(2*tau)^2/(Delta(tau)Delta(4*tau)).

    ``_theta_override`` substitutes a perturbed theta series; it exists
    so tests can confirm the suite catches a wrong form.
    """
    Tb = T + 288  # internal margin so every derived series stays valid past T
    report = SuiteReport("identities")
    th = _theta_override if _theta_override is not None else theta(Tb)
    eta3_sum = eta2tau_cubed(Tb)
    eta3_prod = eta_quotient(((2, 3),), Tb)
    _check(report, "eta2tau_cubed: signed square sum = eta product",
           eta3_sum, eta3_prod, T)
    _check(report, "theta = eta(2t)^5 / (eta(t)^2 eta(4t)^2)",
           th, eta_quotient(((2, 5), (1, -2), (4, -2)), Tb), T)
    f = eta3_sum / th
    _check(report, "f = eta(t)^2 eta(4t)^2 / eta(2t)^2",
           f, eta_quotient(((1, 2), (4, 2), (2, -2)), Tb), T)
    _check(report, "q dlog eta(2t) = -2 G2(2t)",
           q_log_deriv(eta_quotient(((2, 1),), Tb)),
           g2_2tau(Tb).scale(-2), T)
    _check(report, "q dlog theta = -2 G2(2t) - e3(2t)",
           q_log_deriv(th),
           -(g2_2tau(Tb).scale(2) + e3_2tau(Tb)), T)
    dq = delta_tau(Tb) * delta_4tau(Tb) / delta_2tau(Tb)
    _check(report, "f^12 = Delta(t) Delta(4t) / Delta(2t)", f ** 12, dq, T)
    _check(report, "Delta(2t)/f^11 = f Delta(2t)^2/(Delta(t) Delta(4t))",
           delta_2tau(Tb) / f ** 11,
           f * delta_2tau(Tb) ** 2 / (delta_tau(Tb) * delta_4tau(Tb)), T)
    return report
