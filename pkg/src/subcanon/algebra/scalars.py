"""Exact scalars: rationals and Gaussian rationals.

Rationals are ``gmpy2.mpq`` when gmpy2 is importable and
``fractions.Fraction`` otherwise.  Both normalise to lowest terms with a
positive denominator, hash like each other and compare equal across types.
"""

from __future__ import annotations

from fractions import Fraction

try:  # pragma: no cover - exercised implicitly
    from gmpy2 import mpq as _mpq

    def QQ(value=0, den=None):
        if den is not None:
            return _mpq(value, den)
        if isinstance(value, str):
            return _mpq(Fraction(value))
        if isinstance(value, Fraction):
            return _mpq(value.numerator, value.denominator)
        return _mpq(value)

    RATIONAL_BACKEND = "gmpy2"
    _RATIONAL_TYPES = (int, Fraction, type(_mpq(0)))
except ImportError:  # pragma: no cover
    def QQ(value=0, den=None):
        if den is not None:
            return Fraction(value, den)
        return Fraction(value)

    RATIONAL_BACKEND = "fractions"
    _RATIONAL_TYPES = (int, Fraction)


ZERO = QQ(0)
ONE = QQ(1)


def is_rational(value) -> bool:
    return isinstance(value, _RATIONAL_TYPES)


def rational_str(value) -> str:
    """Serialize a rational as ``"a/b"`` (or ``"a"`` when integral)."""
    q = QQ(value)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


class GaussianRational:
    """An element ``re + im*i`` of Q(i) with exact rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = QQ(re)
        self.im = QQ(im)

    @staticmethod
    def coerce(value) -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, complex):
            raise TypeError("floating complex values are not exact")
        return GaussianRational(value, 0)

    def __add__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return GaussianRational.coerce(other) - self

    def __mul__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(
            self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re
        )

    __rmul__ = __mul__

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm(self):
        return self.re * self.re + self.im * self.im

    def __truediv__(self, other):
        o = GaussianRational.coerce(other)
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(i)")
        p = self * o.conjugate()
        return GaussianRational(p.re / n, p.im / n)

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) / self

    def __pow__(self, k: int):
        if k < 0:
            return GaussianRational(1) / (self ** (-k))
        result = GaussianRational(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if is_rational(other):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussianRational({rational_str(self.re)}, {rational_str(self.im)})"

    def __str__(self):
        if self.im == 0:
            return rational_str(self.re)
        imag = "i" if abs(self.im) == 1 else f"{rational_str(abs(self.im))}*i"
        if self.re == 0:
            return imag if self.im > 0 else f"-{imag}"
        sign = "+" if self.im > 0 else "-"
        return f"{rational_str(self.re)} {sign} {imag}"


I = GaussianRational(0, 1)


def simplify(value):
    """Demote a Gaussian rational with zero imaginary part to a rational."""
    if isinstance(value, GaussianRational) and value.im == 0:
        return value.re
    return value


def to_complex(value) -> complex:
    if isinstance(value, GaussianRational):
        return complex(value)
    return complex(float(value))
