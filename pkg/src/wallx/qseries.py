"""Truncated Laurent series on the 1/48 exponent lattice, and weighted
multivariate polynomials with such series as coefficients.

Exponents are integers in units of 1/48; the unit is fixed globally so
that every form used anywhere in the pipeline (including the half-scale
eta quotients, whose finest exponent is q^{1/48}) lives on one lattice.

A :class:`QSeries` knows the lowest exponent ``lo`` of its support, the
coefficients of its support window, and ``valid_to``: the series is
exact for all exponents <= valid_to/48.  All arithmetic derives the
tightest valid bound obtainable from the operands, so a final
``coeff_at`` either returns an exact coefficient or raises
:class:`~wallx.errors.BeyondTruncation`.  Coefficients are
:class:`~wallx.arith.Cyc8` values; purely rational series pay almost
nothing for the cyclotomic generality.

Internally the support window is trimmed at both ends; the serialized
form pads the window out to ``valid_to`` so that the wire format is the
plain dense one.
"""

from __future__ import annotations

from .arith import CYC_ONE, CYC_ZERO, Cyc8, Rational
from .errors import (BeyondTruncation, ConstantPartPresent,
                     NonPositiveValuation, ZeroLeading)

UNIT = 48  # exponent denominators: all exponents are multiples of 1/UNIT


class QSeries:
    """Truncated Laurent series sum_e c_e q^(e/48), exact through valid_to."""

    __slots__ = ("lo", "coeffs", "valid_to", "is_rat")

    def __init__(self, lo: int, coeffs, valid_to: int):
        coeffs = list(coeffs)
        # drop anything beyond the exact range
        if lo + len(coeffs) - 1 > valid_to:
            coeffs = coeffs[: valid_to - lo + 1]
        # trim zero margins so lo is the true valuation
        i = 0
        while i < len(coeffs) and not coeffs[i]:
            i += 1
        j = len(coeffs)
        while j > i and not coeffs[j - 1]:
            j -= 1
        if i == j:
            self.lo = valid_to + 1
            self.coeffs = ()
        else:
            self.lo = lo + i
            self.coeffs = tuple(coeffs[i:j])
        self.valid_to = valid_to
        # purely rational series take fast scalar paths in mul/div
        self.is_rat = all(c.is_rational() for c in self.coeffs)

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero(valid_to: int) -> "QSeries":
        return QSeries(valid_to + 1, (), valid_to)

    @staticmethod
    def constant(c, valid_to: int) -> "QSeries":
        return QSeries(0, (Cyc8.of(c),), valid_to)

    @staticmethod
    def monomial(c, e48: int, valid_to: int) -> "QSeries":
        return QSeries(e48, (Cyc8.of(c),), valid_to)

    @staticmethod
    def from_pairs(pairs, valid_to: int) -> "QSeries":
        """Build from (exponent48, coefficient) pairs."""
        pairs = [(e, Cyc8.of(c)) for e, c in pairs if c]
        if not pairs:
            return QSeries.zero(valid_to)
        lo = min(e for e, _ in pairs)
        hi = max(e for e, _ in pairs)
        coeffs = [CYC_ZERO] * (hi - lo + 1)
        for e, c in pairs:
            coeffs[e - lo] = coeffs[e - lo] + c
        return QSeries(lo, coeffs, valid_to)

    # -- basic queries -------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> Cyc8:
        if not self.coeffs:
            raise ZeroLeading("series is zero through its valid range")
        return self.coeffs[0]

    def coeff_at(self, e48: int) -> Cyc8:
        """Exact coefficient of q^(e48/48); BeyondTruncation past valid_to."""
        if e48 > self.valid_to:
            raise BeyondTruncation(
                f"coefficient at {e48}/48 requested, valid only to {self.valid_to}/48")
        if e48 < self.lo or e48 >= self.lo + len(self.coeffs):
            return CYC_ZERO
        return self.coeffs[e48 - self.lo]

    def support(self):
        """Nonzero (exponent48, coefficient) pairs, ascending."""
        return [(self.lo + i, c) for i, c in enumerate(self.coeffs) if c]

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return (self.lo == other.lo and self.coeffs == other.coeffs
                and self.valid_to == other.valid_to)

    def __hash__(self):
        return hash((self.lo, self.coeffs, self.valid_to))

    def agrees_with(self, other: "QSeries", through: int | None = None) -> bool:
        """Coefficientwise equality on the shared valid range.

        If ``through`` is given, both series must be valid at least that far.
        """
        bound = min(self.valid_to, other.valid_to)
        if through is not None:
            if bound < through:
                raise BeyondTruncation(
                    f"comparison through {through} requested, valid to {bound}")
            bound = through
        e = self.first_difference(other, bound)
        return e is None

    def first_difference(self, other: "QSeries", bound: int) -> int | None:
        """Smallest exponent <= bound where the series differ, or None."""
        lo = min(self.lo, other.lo)
        for e in range(lo, bound + 1):
            if self.coeff_at(e) != other.coeff_at(e):
                return e
        return None

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        vt = min(self.valid_to, other.valid_to)
        if self.is_zero():
            return QSeries(other.lo, other.coeffs, vt)
        if other.is_zero():
            return QSeries(self.lo, self.coeffs, vt)
        lo = min(self.lo, other.lo)
        hi = max(self.lo + len(self.coeffs), other.lo + len(other.coeffs))
        out = [CYC_ZERO] * (hi - lo)
        for i, c in enumerate(self.coeffs):
            out[self.lo - lo + i] = c
        for i, c in enumerate(other.coeffs):
            k = other.lo - lo + i
            out[k] = out[k] + c
        return QSeries(lo, out, vt)

    def __neg__(self):
        return QSeries(self.lo, tuple(-c for c in self.coeffs), self.valid_to)

    def __sub__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "QSeries":
        """Multiply by a scalar (Cyc8, Rational or int)."""
        c = Cyc8.of(c)
        if not c:
            return QSeries.zero(self.valid_to)
        return QSeries(self.lo, tuple(c * x for x in self.coeffs), self.valid_to)

    def shift(self, e48: int) -> "QSeries":
        """Multiply by the monomial q^(e48/48)."""
        return QSeries(self.lo + e48, self.coeffs, self.valid_to + e48)

    def __mul__(self, other):
        if isinstance(other, (Cyc8, int, type(Rational(0)))):
            return self.scale(other)
        if not isinstance(other, QSeries):
            return NotImplemented
        a, b = self, other
        # valid bound also covers zero operands via the lo = valid+1 convention
        vt = min(a.valid_to + b.lo, b.valid_to + a.lo)
        if a.is_zero() or b.is_zero():
            return QSeries.zero(vt)
        lo = a.lo + b.lo
        n = vt - lo + 1
        if n <= 0:
            return QSeries.zero(vt)
        if a.is_rat and b.is_rat:
            # plain rational Cauchy product: no Cyc8 object churn inside
            nza = [(i, c.c0) for i, c in enumerate(a.coeffs) if c.c0]
            nzb = [(j, c.c0) for j, c in enumerate(b.coeffs) if c.c0]
            if len(nza) > len(nzb):
                nza, nzb = nzb, nza
            out = [None] * n
            for i, ca in nza:
                for j, cb in nzb:
                    k = i + j
                    if k >= n:
                        break
                    prod = ca * cb
                    out[k] = prod if out[k] is None else out[k] + prod
            return QSeries(lo, [Cyc8(c) if c else CYC_ZERO for c in out], vt)
        nza = [(i, c) for i, c in enumerate(a.coeffs) if c]
        nzb = [(j, c) for j, c in enumerate(b.coeffs) if c]
        if len(nza) > len(nzb):
            nza, nzb = nzb, nza
        out = [None] * n
        for i, ca in nza:
            for j, cb in nzb:
                k = i + j
                if k >= n:
                    break
                prod = ca * cb
                out[k] = prod if out[k] is None else out[k] + prod
        return QSeries(lo, [c if c is not None else CYC_ZERO for c in out], vt)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (Cyc8, int, type(Rational(0)))):
            return self.scale(Cyc8.of(other).inverse())
        if not isinstance(other, QSeries):
            return NotImplemented
        a, b = self, other
        if b.is_zero():
            raise ZeroLeading("division by a series that is zero through its valid range")
        depth = min(a.valid_to - a.lo, b.valid_to - b.lo)
        lo = a.lo - b.lo
        vt = lo + depth
        if a.is_zero():
            return QSeries.zero(a.valid_to - b.lo)
        n = depth + 1
        if a.is_rat and b.is_rat:
            blead = 1 / b.coeffs[0].c0
            nzb = [(j, c.c0) for j, c in enumerate(b.coeffs) if j and c.c0 and j < n]
            awin = a.coeffs
            out = [None] * n
            for k in range(n):
                acc = awin[k].c0 if k < len(awin) else None
                for j, cb in nzb:
                    if j > k:
                        break
                    c = out[k - j]
                    if c is not None:
                        prod = cb * c
                        acc = -prod if acc is None else acc - prod
                if acc is not None and acc:
                    out[k] = acc * blead
            return QSeries(lo, [Cyc8(c) if c is not None else CYC_ZERO for c in out], vt)
        blead = b.coeffs[0].inverse()
        nzb = [(j, c) for j, c in enumerate(b.coeffs) if j and c and j < n]
        out = [CYC_ZERO] * n
        for k in range(n):
            acc = a.coeff_at(a.lo + k)
            for j, cb in nzb:
                if j > k:
                    break
                c = out[k - j]
                if c:
                    acc = acc - cb * c
            out[k] = acc * blead
        return QSeries(lo, out, vt)

    def __pow__(self, n: int) -> "QSeries":
        if n < 0:
            recip = QSeries.constant(1, self.valid_to - self.lo) / self
            return recip ** (-n)
        acc = QSeries.constant(1, self.valid_to - self.lo if not self.is_zero()
                               else self.valid_to)
        base = self
        while n:
            if n & 1:
                acc = acc * base
            base_needed = n >> 1
            if base_needed:
                base = base * base
            n >>= 1
        return acc

    def euler(self) -> "QSeries":
        """Apply q d/dq: the coefficient at q^e is scaled by e."""
        return QSeries(
            self.lo,
            tuple(c * Cyc8(Rational(self.lo + i, UNIT)) for i, c in enumerate(self.coeffs)),
            self.valid_to)

    def serialize(self) -> dict:
        """Dense JSON form: window padded from lo through valid_to."""
        if self.is_zero():
            return {"unit": UNIT, "lo": self.valid_to + 1, "valid_to": self.valid_to,
                    "coeffs": []}
        pad = self.valid_to - (self.lo + len(self.coeffs) - 1)
        coeffs = list(self.coeffs) + [CYC_ZERO] * pad
        return {"unit": UNIT, "lo": self.lo, "valid_to": self.valid_to,
                "coeffs": [c.serialize() for c in coeffs]}

    @staticmethod
    def deserialize(obj) -> "QSeries":
        assert obj["unit"] == UNIT
        return QSeries(obj["lo"], [Cyc8.deserialize(c) for c in obj["coeffs"]],
                       obj["valid_to"])

    def __repr__(self):
        parts = [f"q^({e}/48)*({c!r})" for e, c in self.support()[:4]]
        tail = " + ..." if len(self.coeffs) > 4 else ""
        body = " + ".join(parts) if parts else "0"
        return f"QSeries({body}{tail}, valid_to={self.valid_to})"


# -- module-level operation names ---------------------------------------

def qs_add(a: QSeries, b: QSeries) -> QSeries:
    return a + b


def qs_mul(a: QSeries, b: QSeries) -> QSeries:
    return a * b


def qs_div(a: QSeries, b: QSeries) -> QSeries:
    return a / b


def coeff_at(a: QSeries, e48: int) -> Cyc8:
    return a.coeff_at(e48)


def qs_exp(a: QSeries) -> QSeries:
    """exp(a) = sum a^k/k! for a of strictly positive valuation."""
    if a.is_zero():
        return QSeries.constant(1, a.valid_to)
    if a.lo <= 0:
        raise NonPositiveValuation(
            f"series exponential needs positive valuation, got lo={a.lo}/48")
    result = QSeries.constant(1, a.valid_to) + a
    term = a
    k = 2
    fact = Rational(1)
    while k * a.lo <= a.valid_to:
        term = term * a
        fact = fact * k
        result = result + term.scale(Cyc8(1 / fact))
        k += 1
    return QSeries(result.lo, result.coeffs, a.valid_to)


def q_log_deriv(a: QSeries) -> QSeries:
    """q * (da/dq) / a, exact on the derived valid range."""
    if a.is_zero():
        raise ZeroLeading("logarithmic derivative of the zero series")
    return a.euler() / a


# -- weighted multivariate layer -----------------------------------------

class MultiSeries:
    """Polynomial in weighted formal variables with QSeries coefficients.

    ``vars`` and ``weights`` are parallel tuples; exponent tuples whose
    weighted total exceeds ``weight_cap`` (or whose components exceed
    ``var_caps``) are pruned from every operation.  ``q_valid`` is the
    conservative validity bound attached to absent (identically zero)
    coefficient tuples.
    """

    __slots__ = ("vars", "weights", "weight_cap", "var_caps", "terms", "q_valid")

    def __init__(self, vars, weights, terms, weight_cap=None, var_caps=None,
                 q_valid=None):
        self.vars = tuple(vars)
        self.weights = tuple(weights)
        self.weight_cap = weight_cap
        self.var_caps = tuple(var_caps) if var_caps is not None else None
        clean = {}
        vmin = None
        for t, s in terms.items():
            if not self.allows(t):
                continue
            vmin = s.valid_to if vmin is None else min(vmin, s.valid_to)
            if not s.is_zero():
                clean[tuple(t)] = s
        self.terms = clean
        if q_valid is None:
            if vmin is None:
                raise ValueError("q_valid required for a series with no terms")
            q_valid = vmin
        self.q_valid = q_valid

    def allows(self, t) -> bool:
        if self.weight_cap is not None:
            if sum(w * e for w, e in zip(self.weights, t)) > self.weight_cap:
                return False
        if self.var_caps is not None:
            if any(e > c for e, c in zip(t, self.var_caps)):
                return False
        return True

    def _like(self, terms, q_valid):
        return MultiSeries(self.vars, self.weights, terms, self.weight_cap,
                           self.var_caps, q_valid)

    @staticmethod
    def unit(vars, weights, valid_to, weight_cap=None, var_caps=None):
        zero_t = (0,) * len(tuple(vars))
        return MultiSeries(vars, weights, {zero_t: QSeries.constant(1, valid_to)},
                           weight_cap, var_caps, valid_to)

    # conservative bounds for validity of absent coefficients
    def _vmin(self):
        vals = [s.valid_to for s in self.terms.values()]
        return min([self.q_valid] + vals)

    def _lmin(self):
        los = [s.lo for s in self.terms.values()]
        return min(los) if los else 0

    def coeff(self, t) -> QSeries:
        """Stored coefficient series of an exponent tuple, or the zero series."""
        t = tuple(t)
        if not self.allows(t):
            raise ValueError(f"tuple {t} is outside the construction caps")
        got = self.terms.get(t)
        return got if got is not None else QSeries.zero(self.q_valid)

    def __add__(self, other):
        self._check_compatible(other)
        terms = dict(self.terms)
        for t, s in other.terms.items():
            terms[t] = terms[t] + s if t in terms else s
        return self._like(terms, min(self.q_valid, other.q_valid))

    def __neg__(self):
        return self._like({t: -s for t, s in self.terms.items()}, self.q_valid)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (Cyc8, int, type(Rational(0)))):
            c = Cyc8.of(other)
            return self._like({t: s.scale(c) for t, s in self.terms.items()},
                              self.q_valid)
        if isinstance(other, QSeries):
            q_valid = min(self._vmin() + other.lo,
                          other.valid_to + self._lmin())
            return self._like({t: s * other for t, s in self.terms.items()},
                              q_valid)
        self._check_compatible(other)
        out = {}
        for t1, s1 in self.terms.items():
            for t2, s2 in other.terms.items():
                t = tuple(x + y for x, y in zip(t1, t2))
                if not self.allows(t):
                    continue
                prod = s1 * s2
                out[t] = out[t] + prod if t in out else prod
        q_valid = min(self._vmin() + other._lmin(), other._vmin() + self._lmin())
        return self._like(out, q_valid)

    __rmul__ = __mul__

    def partial(self, var: str) -> "MultiSeries":
        """Formal partial derivative in one variable."""
        i = self.vars.index(var)
        out = {}
        for t, s in self.terms.items():
            if t[i] == 0:
                continue
            t2 = t[:i] + (t[i] - 1,) + t[i + 1:]
            out[t2] = s.scale(t[i])
        return self._like(out, self.q_valid)

    def _check_compatible(self, other):
        if (self.vars != other.vars or self.weights != other.weights
                or self.weight_cap != other.weight_cap
                or self.var_caps != other.var_caps):
            raise ValueError("incompatible variable layouts")

    def tuples(self):
        """All exponent tuples allowed by the caps, in lexicographic order."""
        def rec(prefix, remaining):
            if not remaining:
                t = tuple(prefix)
                if self.allows(t):
                    yield t
                return
            cap = remaining[0]
            for e in range(cap + 1):
                t = prefix + [e]
                if self.weight_cap is not None:
                    w = sum(wt * x for wt, x in zip(self.weights, t))
                    if w > self.weight_cap:
                        break
                yield from rec(t, remaining[1:])
        if self.var_caps is not None:
            caps = self.var_caps
        else:
            caps = tuple(self.weight_cap // w for w in self.weights)
        yield from rec([], list(caps))

    def __repr__(self):
        return (f"MultiSeries(vars={self.vars}, {len(self.terms)} terms, "
                f"q_valid={self.q_valid})")


def ms_exp(a: MultiSeries) -> MultiSeries:
    """exp(a) for a MultiSeries with no pure-q constant part.

    Factorizes over the monomials of the argument: the exponentials of
    commuting single-monomial terms are cheap truncated sums, and their
    product is taken with cap pruning.
    """
    zero_t = (0,) * len(a.vars)
    if zero_t in a.terms:
        raise ConstantPartPresent("exponential argument has a pure-q constant part")
    q_valid = a._vmin()
    result = MultiSeries.unit(a.vars, a.weights, q_valid, a.weight_cap, a.var_caps)
    for t, s in sorted(a.terms.items()):
        factor = {zero_t: QSeries.constant(1, s.valid_to)}
        power = s
        tk = t
        k = 1
        fact = Rational(1)
        while result.allows(tk):
            factor[tk] = power.scale(Cyc8(1 / fact))
            k += 1
            fact = fact * k
            tk = tuple(k * x for x in t)
            if not result.allows(tk):
                break
            power = power * s
        result = result * a._like(factor, s.valid_to)
    return result


def ms_coeff(a: MultiSeries, t) -> QSeries:
    return a.coeff(t)
