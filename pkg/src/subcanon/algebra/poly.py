"""Sparse multivariate polynomials with exact coefficients."""

from __future__ import annotations

from itertools import combinations_with_replacement
from typing import Iterable, Mapping, Sequence

from .scalars import QQ, GaussianRational, is_rational, rational_str, simplify

Monomial = tuple  # exponent vector


def _coerce(c):
    if isinstance(c, GaussianRational):
        return simplify(c)
    return QQ(c)


class MultiPoly:
    """A polynomial in ``nvars`` variables stored as ``{exponents: coeff}``.

    Zero coefficients are never stored.  Instances are treated as immutable.
    """

    __slots__ = ("nvars", "terms", "_degree")

    def __init__(self, nvars: int, terms: Mapping[Monomial, object] | None = None):
        self.nvars = nvars
        clean = {}
        if terms:
            for mono, c in terms.items():
                mono = tuple(mono)
                if len(mono) != nvars:
                    raise ValueError(f"exponent {mono} does not have {nvars} entries")
                if c:
                    clean[mono] = _coerce(c)
        self.terms = clean
        self._degree = max((sum(m) for m in clean), default=-1)

    # constructors -----------------------------------------------------
    @classmethod
    def zero(cls, nvars: int) -> "MultiPoly":
        return cls(nvars)

    @classmethod
    def constant(cls, nvars: int, c) -> "MultiPoly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, i: int, nvars: int) -> "MultiPoly":
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): 1})

    @classmethod
    def monomial(cls, exps: Sequence[int], c=1) -> "MultiPoly":
        return cls(len(exps), {tuple(exps): c})

    @classmethod
    def linear(cls, coeffs: Sequence) -> "MultiPoly":
        n = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            e = [0] * n
            e[i] = 1
            terms[tuple(e)] = c
        return cls(n, terms)

    # basic queries ----------------------------------------------------
    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return self._degree

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def coefficient(self, mono: Monomial):
        return self.terms.get(tuple(mono), QQ(0))

    def is_exact_rational(self) -> bool:
        return all(is_rational(c) for c in self.terms.values())

    # arithmetic -------------------------------------------------------
    def _check(self, other: "MultiPoly"):
        if other.nvars != self.nvars:
            raise ValueError("variable count mismatch")

    def _lift(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            self._check(other)
            return other
        return MultiPoly.constant(self.nvars, other)

    def __add__(self, other):
        other = self._lift(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, 0) + c
        return MultiPoly(self.nvars, terms)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.nvars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            if not other:
                return MultiPoly.zero(self.nvars)
            c = _coerce(other)
            return MultiPoly(self.nvars, {m: a * c for m, a in self.terms.items()})
        self._check(other)
        terms: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                terms[m] = terms.get(m, 0) + c1 * c2
        return MultiPoly(self.nvars, terms)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative exponent")
        result = MultiPoly.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.nvars == other.nvars and self.terms == other.terms
        if not other:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    # calculus / substitution -----------------------------------------
    def diff(self, i: int) -> "MultiPoly":
        terms = {}
        for m, c in self.terms.items():
            if m[i]:
                e = list(m)
                e[i] -= 1
                terms[tuple(e)] = c * m[i]
        return MultiPoly(self.nvars, terms)

    def gradient(self) -> list["MultiPoly"]:
        return [self.diff(i) for i in range(self.nvars)]

    def evaluate(self, point: Sequence):
        if len(point) != self.nvars:
            raise ValueError(
                f"point has {len(point)} coordinates, polynomial has {self.nvars} variables"
            )
        total = QQ(0)
        for m, c in self.terms.items():
            v = c
            for x, e in zip(point, m):
                if e:
                    v = v * x**e
            total = total + v
        return simplify(total) if isinstance(total, GaussianRational) else total

    __call__ = evaluate

    def evaluate_numeric(self, point: Sequence[complex]) -> complex:
        total = 0j
        for m, c in self.terms.items():
            v = complex(c) if isinstance(c, GaussianRational) else float(c)
            for x, e in zip(point, m):
                if e:
                    v *= x**e
            total += v
        return total

    def dehomogenize(self, i: int) -> "MultiPoly":
        """Set variable ``i`` to 1 and drop it."""
        terms: dict = {}
        for m, c in self.terms.items():
            e = m[:i] + m[i + 1:]
            terms[e] = terms.get(e, 0) + c
        return MultiPoly(self.nvars - 1, terms)

    def homogenize(self, i: int, degree: int | None = None) -> "MultiPoly":
        """Insert a new variable at position ``i`` making the result homogeneous."""
        d = self.degree if degree is None else degree
        terms = {}
        for m, c in self.terms.items():
            terms[m[:i] + (d - sum(m),) + m[i:]] = c
        return MultiPoly(self.nvars + 1, terms)

    def substitute(self, images: Sequence["MultiPoly"]) -> "MultiPoly":
        """Replace variable ``j`` by ``images[j]`` (all in a common ring)."""
        if len(images) != self.nvars:
            raise ValueError("need one image per variable")
        target = images[0].nvars if images else 0
        result = MultiPoly.zero(target)
        cache: dict = {}
        for m, c in self.terms.items():
            term = MultiPoly.constant(target, c)
            for j, e in enumerate(m):
                if e:
                    key = (j, e)
                    if key not in cache:
                        cache[key] = images[j] ** e
                    term = term * cache[key]
            result = result + term
        return result

    def univariate_coefficients(self) -> list:
        """Dense coefficient list (low to high) of a polynomial in one variable."""
        if self.nvars != 1:
            raise ValueError("not univariate")
        coeffs = [QQ(0)] * (max(self.degree, 0) + 1)
        for (e,), c in self.terms.items():
            coeffs[e] = c
        return coeffs

    # printing ---------------------------------------------------------
    def to_string(self, names: Sequence[str] | None = None) -> str:
        if names is None:
            names = [f"x{i}" for i in range(self.nvars)]
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=lambda m: (-sum(m), tuple(-e for e in m))):
            c = self.terms[m]
            mono = "*".join(
                n if e == 1 else f"{n}^{e}" for n, e in zip(names, m) if e
            )
            if isinstance(c, GaussianRational):
                coeff = f"({c})"
                neg = False
            else:
                neg = c < 0
                coeff = rational_str(abs(c))
            if mono:
                body = mono if coeff == "1" else f"{coeff}*{mono}"
            else:
                body = coeff
            parts.append(("- " if neg else "+ ") + body)
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    def __repr__(self):
        return f"MultiPoly({self.to_string()!r})"


def monomials_of_degree(nvars: int, degree: int) -> list[Monomial]:
    """All exponent vectors of the given total degree, in a fixed order."""
    out = []
    for combo in combinations_with_replacement(range(nvars), degree):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return out


def polys_from_monomials(monos: Iterable[Monomial]) -> list[MultiPoly]:
    return [MultiPoly.monomial(m) for m in monos]
