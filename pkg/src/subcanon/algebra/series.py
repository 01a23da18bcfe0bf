"""Truncated power series in one variable with exact coefficients."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .scalars import QQ


@dataclass(frozen=True)
class AtLeast:
    """Sentinel for an order of vanishing that exceeds the known precision."""

    bound: int

    def __str__(self):
        return f">={self.bound}"


class TruncatedSeries:
    """``c_0 + c_1 s + ... + c_N s^N + O(s^{N+1})``.

    Coefficients beyond ``order`` are unknown, not zero.
    """

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs: Sequence, order: int | None = None):
        if order is None:
            order = len(coeffs) - 1
        if order < 0:
            raise ValueError("truncation order must be non-negative")
        cs = [QQ(c) if isinstance(c, int) else c for c in coeffs[: order + 1]]
        zero = QQ(0)
        if len(cs) < order + 1:
            cs.extend([zero] * (order + 1 - len(cs)))
        self.coeffs = cs
        self.order = order

    @classmethod
    def constant(cls, c, order: int) -> "TruncatedSeries":
        return cls([c], order)

    @classmethod
    def variable(cls, order: int) -> "TruncatedSeries":
        return cls([0, 1], order)

    @classmethod
    def monomial(cls, c, k: int, order: int) -> "TruncatedSeries":
        cs = [QQ(0)] * (order + 1)
        if k <= order:
            cs[k] = c
        return cls(cs, order)

    def valuation(self) -> int | AtLeast:
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return AtLeast(self.order + 1)

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise ValueError("cannot raise precision by truncation")
        return TruncatedSeries(self.coeffs[: order + 1], order)

    def __getitem__(self, k: int):
        if k > self.order:
            raise IndexError(f"coefficient {k} is beyond the truncation order {self.order}")
        return self.coeffs[k]

    def __add__(self, other):
        if not isinstance(other, TruncatedSeries):
            cs = list(self.coeffs)
            cs[0] = cs[0] + other
            return TruncatedSeries(cs, self.order)
        n = min(self.order, other.order)
        return TruncatedSeries([a + b for a, b in zip(self.coeffs[: n + 1], other.coeffs)], n)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries([-c for c in self.coeffs], self.order)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            return TruncatedSeries([c * other for c in self.coeffs], self.order)
        n = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        # skip leading zeros on both sides
        va = next((i for i in range(n + 1) if a[i]), n + 1)
        vb = next((i for i in range(n + 1) if b[i]), n + 1)
        out = [QQ(0)] * (n + 1)
        for i in range(va, n + 1 - vb):
            ai = a[i]
            if not ai:
                continue
            for j in range(vb, n + 1 - i):
                bj = b[j]
                if bj:
                    out[i + j] += ai * bj
        return TruncatedSeries(out, n)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = TruncatedSeries.constant(1, self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def inverse(self) -> "TruncatedSeries":
        """Multiplicative inverse of a unit series."""
        a = self.coeffs
        if not a[0]:
            raise ZeroDivisionError("series is not a unit")
        inv0 = 1 / a[0]
        out = [inv0]
        for k in range(1, self.order + 1):
            acc = QQ(0)
            for j in range(1, k + 1):
                if a[j]:
                    acc += a[j] * out[k - j]
            out.append(-acc * inv0)
        return TruncatedSeries(out, self.order)

    def __truediv__(self, other):
        if isinstance(other, TruncatedSeries):
            return self * other.inverse()
        return self * (1 / QQ(other))

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __repr__(self):
        terms = [f"{c}*s^{i}" for i, c in enumerate(self.coeffs) if c]
        body = " + ".join(terms) if terms else "0"
        return f"TruncatedSeries({body} + O(s^{self.order + 1}))"


def series_multiply(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    return a * b
