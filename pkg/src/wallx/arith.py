"""Exact rational arithmetic and the degree-4 cyclotomic ring containing
a square root of i.

``Rational`` is an exact arbitrary-precision fraction, always in lowest
terms with positive denominator.  gmpy2's mpq is used when available (it
is several times faster than fractions.Fraction); both are exact, so the
choice never affects any computed value.

``Cyc8`` represents c0 + c1*s + c2*s^2 + c3*s^3 where s is a fixed
primitive eighth root of unity with s^4 = -1.  Thus s^2 plays the role
of i and s the role of sqrt(i).  The generator is never evaluated
numerically; every accepted end result is extracted with
:func:`rational_part`, which raises if a root-of-unity component
survived.
"""

from __future__ import annotations

from .errors import NonIntegral, NotRational

try:  # pragma: no cover - exercised implicitly by whichever is installed
    from gmpy2 import mpq as Rational
except ImportError:  # pragma: no cover
    from fractions import Fraction as Rational

__all__ = [
    "Rational",
    "Cyc8",
    "CYC_ZERO",
    "CYC_ONE",
    "SQRT_I",
    "I",
    "cyc8_mul",
    "sqrt_i_pow",
    "rational_part",
    "rat_str",
    "rat_from_str",
    "exact_div4",
]

_R0 = Rational(0)
_R1 = Rational(1)


def _coerce(x):
    if isinstance(x, Cyc8):
        raise TypeError("expected a rational, got Cyc8")
    return x if type(x) is type(_R0) else Rational(x)


class Cyc8:
    """Element of Q(s) with s^4 = -1, stored as four rational components."""

    __slots__ = ("c0", "c1", "c2", "c3")

    def __init__(self, c0=0, c1=0, c2=0, c3=0):
        self.c0 = _coerce(c0)
        self.c1 = _coerce(c1)
        self.c2 = _coerce(c2)
        self.c3 = _coerce(c3)

    @staticmethod
    def of(x) -> "Cyc8":
        """Embed a rational (or int) into the ring."""
        return x if isinstance(x, Cyc8) else Cyc8(x)

    def __bool__(self):
        return bool(self.c0) or bool(self.c1) or bool(self.c2) or bool(self.c3)

    def is_rational(self) -> bool:
        return not (self.c1 or self.c2 or self.c3)

    def __eq__(self, other):
        if isinstance(other, Cyc8):
            return (self.c0 == other.c0 and self.c1 == other.c1
                    and self.c2 == other.c2 and self.c3 == other.c3)
        if isinstance(other, (int, type(_R0))):
            return self.is_rational() and self.c0 == other
        return NotImplemented

    def __hash__(self):
        return hash((self.c0, self.c1, self.c2, self.c3))

    def __add__(self, other):
        other = Cyc8.of(other)
        return Cyc8(self.c0 + other.c0, self.c1 + other.c1,
                    self.c2 + other.c2, self.c3 + other.c3)

    __radd__ = __add__

    def __neg__(self):
        return Cyc8(-self.c0, -self.c1, -self.c2, -self.c3)

    def __sub__(self, other):
        return self + (-Cyc8.of(other))

    def __rsub__(self, other):
        return Cyc8.of(other) + (-self)

    def __mul__(self, other):
        other = Cyc8.of(other)
        a0, a1, a2, a3 = self.c0, self.c1, self.c2, self.c3
        b0, b1, b2, b3 = other.c0, other.c1, other.c2, other.c3
        # fast paths: purely rational factors dominate in practice
        if not (a1 or a2 or a3):
            if not a0:
                return CYC_ZERO
            return Cyc8(a0 * b0, a0 * b1, a0 * b2, a0 * b3)
        if not (b1 or b2 or b3):
            if not b0:
                return CYC_ZERO
            return Cyc8(a0 * b0, a1 * b0, a2 * b0, a3 * b0)
        # general product, reduced by s^4 = -1
        return Cyc8(
            a0 * b0 - a1 * b3 - a2 * b2 - a3 * b1,
            a0 * b1 + a1 * b0 - a2 * b3 - a3 * b2,
            a0 * b2 + a1 * b1 + a2 * b0 - a3 * b3,
            a0 * b3 + a1 * b2 + a2 * b1 + a3 * b0,
        )

    __rmul__ = __mul__

    def _conj(self, k: int) -> "Cyc8":
        """Galois conjugate s -> s^k for odd k."""
        out = [_R0, _R0, _R0, _R0]
        comps = (self.c0, self.c1, self.c2, self.c3)
        for i in range(4):
            m = (i * k) % 8
            if m >= 4:
                out[m - 4] = out[m - 4] - comps[i]
            else:
                out[m] = out[m] + comps[i]
        return Cyc8(*out)

    def inverse(self) -> "Cyc8":
        if not self:
            raise ZeroDivisionError("Cyc8 inverse of zero")
        if not (self.c1 or self.c2 or self.c3):
            return Cyc8(_R1 / self.c0)
        conj = self._conj(3) * self._conj(5) * self._conj(7)
        norm = self * conj
        if not norm.is_rational():  # pragma: no cover - algebraic identity
            raise ArithmeticError("norm is not rational")
        return conj * Cyc8(_R1 / norm.c0)

    def __truediv__(self, other):
        return self * Cyc8.of(other).inverse()

    def __rtruediv__(self, other):
        return Cyc8.of(other) * self.inverse()

    def __pow__(self, n: int) -> "Cyc8":
        if n < 0:
            return self.inverse() ** (-n)
        acc, base = CYC_ONE, self
        while n:
            if n & 1:
                acc = acc * base
            base = base * base
            n >>= 1
        return acc

    def __repr__(self):
        parts = []
        for c, sym in ((self.c0, ""), (self.c1, "s"), (self.c2, "s^2"), (self.c3, "s^3")):
            if c:
                parts.append(f"{c}{'*' if sym else ''}{sym}")
        return " + ".join(parts) if parts else "0"

    def serialize(self) -> list[str]:
        """Four "num/den" strings, the wire format for cyclotomic values."""
        return [rat_str(self.c0), rat_str(self.c1),
                rat_str(self.c2), rat_str(self.c3)]

    @staticmethod
    def deserialize(arr) -> "Cyc8":
        return Cyc8(*(rat_from_str(x) for x in arr))


CYC_ZERO = Cyc8(0)
CYC_ONE = Cyc8(1)
SQRT_I = Cyc8(0, 1)      # the generator s
I = Cyc8(0, 0, 1)        # s^2


def cyc8_mul(a: Cyc8, b: Cyc8) -> Cyc8:
    """Ring product with reduction by s^4 = -1."""
    return Cyc8.of(a) * Cyc8.of(b)


def sqrt_i_pow(m: int) -> Cyc8:
    """s^m reduced modulo s^8 = 1; m may be negative."""
    m %= 8
    sign = 1 if m < 4 else -1
    comps = [0, 0, 0, 0]
    comps[m % 4] = sign
    return Cyc8(*comps)


def rational_part(a: Cyc8) -> Rational:
    """The c0 component, provided all root-of-unity components vanish."""
    a = Cyc8.of(a)
    if a.c1 or a.c2 or a.c3:
        raise NotRational(f"value has nonzero cyclotomic part: {a!r}")
    return a.c0


def rat_str(x) -> str:
    """Serialize a rational as "num/den" (denominator always written)."""
    return f"{x.numerator}/{x.denominator}"


def rat_from_str(text: str):
    """Parse "num/den" (or a bare integer) into a Rational."""
    text = text.strip()
    if "/" in text:
        num, den = text.split("/")
        return Rational(int(num), int(den))
    return Rational(int(text))


def exact_div4(n: int) -> int:
    """n/4 when 4 | n, else raise NonIntegral."""
    if n % 4:
        raise NonIntegral(f"{n} is not divisible by 4")
    return n // 4
