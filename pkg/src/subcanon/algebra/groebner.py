"""Buchberger's algorithm over Q, sized for smoothness certificates.

Only what the curve code needs: reduced bases in grevlex or lex order,
ideal membership of 1, and rational points of zero-dimensional ideals.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .poly import MultiPoly
from .scalars import QQ


class BudgetExceeded(RuntimeError):
    """Raised when a Groebner computation runs past its step budget."""


def grevlex_key(m):
    return (sum(m), tuple(-e for e in reversed(m)))


def lex_key(m):
    return m


ORDERS: dict[str, Callable] = {"grevlex": grevlex_key, "lex": lex_key}


class _Poly:
    """Working polynomial: terms dict plus cached leading monomial."""

    __slots__ = ("terms", "lm", "lc")

    def __init__(self, terms: dict, key):
        self.terms = terms
        if terms:
            self.lm = max(terms, key=key)
            self.lc = terms[self.lm]
        else:
            self.lm = None
            self.lc = None


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _sub_mono(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _monic(terms: dict, key) -> _Poly:
    p = _Poly(terms, key)
    if p.lc is not None and p.lc != 1:
        inv = 1 / p.lc
        p = _Poly({m: c * inv for m, c in terms.items()}, key)
    return p


def _reduce(terms: dict, basis: list[_Poly], key, full: bool = True) -> dict:
    """Normal form of ``terms`` modulo ``basis`` (monic leading coefficients)."""
    f = dict(terms)
    rem: dict = {}
    while f:
        lm = max(f, key=key)
        c = f[lm]
        for g in basis:
            if _divides(g.lm, lm):
                shift = _sub_mono(lm, g.lm)
                for m, gc in g.terms.items():
                    mm = tuple(a + b for a, b in zip(m, shift))
                    v = f.get(mm, 0) - c * gc
                    if v:
                        f[mm] = v
                    else:
                        f.pop(mm, None)
                break
        else:
            if not full:
                rem.update(f)
                return rem
            rem[lm] = c
            del f[lm]
    return rem


def _spoly(f: _Poly, g: _Poly) -> dict:
    l = _lcm(f.lm, g.lm)
    sf, sg = _sub_mono(l, f.lm), _sub_mono(l, g.lm)
    out: dict = {}
    for m, c in f.terms.items():
        mm = tuple(a + b for a, b in zip(m, sf))
        out[mm] = out.get(mm, 0) + c
    for m, c in g.terms.items():
        mm = tuple(a + b for a, b in zip(m, sg))
        v = out.get(mm, 0) - c
        if v:
            out[mm] = v
        else:
            out.pop(mm, None)
    return out


def groebner(polys: Sequence[MultiPoly], order: str = "grevlex", budget: int = 20000) -> list[MultiPoly]:
    """Reduced Groebner basis of the ideal generated by ``polys``.

    ``budget`` bounds the number of S-polynomial reductions; exceeding it
    raises :class:`BudgetExceeded`.
    """
    if not polys:
        return []
    nvars = polys[0].nvars
    key = ORDERS[order]
    basis: list[_Poly] = []
    for p in polys:
        if p.terms:
            basis.append(_monic(dict(p.terms), key))
    if not basis:
        return []
    one = (0,) * nvars
    if any(b.lm == one for b in basis):
        return [MultiPoly.constant(nvars, 1)]

    pairs = {(i, j) for i in range(len(basis)) for j in range(i)}
    steps = 0
    while pairs:
        i, j = min(pairs, key=lambda ij: (key(_lcm(basis[ij[0]].lm, basis[ij[1]].lm)), ij))
        pairs.discard((i, j))
        f, g = basis[i], basis[j]
        if f is None or g is None:
            continue
        l = _lcm(f.lm, g.lm)
        # product criterion
        if all(a == 0 or b == 0 for a, b in zip(f.lm, g.lm)):
            continue
        # chain criterion
        if any(
            k not in (i, j)
            and basis[k] is not None
            and _divides(basis[k].lm, l)
            and (max(i, k), min(i, k)) not in pairs
            and (max(j, k), min(j, k)) not in pairs
            for k in range(len(basis))
        ):
            continue
        steps += 1
        if steps > budget:
            raise BudgetExceeded(f"Groebner basis not finished after {budget} reductions")
        live = [b for b in basis if b is not None]
        h = _reduce(_spoly(f, g), live, key)
        if not h:
            continue
        hp = _monic(h, key)
        if hp.lm == one:
            return [MultiPoly.constant(nvars, 1)]
        idx = len(basis)
        basis.append(hp)
        for k in range(idx):
            if basis[k] is not None:
                pairs.add((idx, k))
    live = _interreduce([b for b in basis if b is not None], key)
    live.sort(key=lambda p: key(p.lm), reverse=True)
    return [MultiPoly(nvars, p.terms) for p in live]


def _interreduce(basis: list[_Poly], key) -> list[_Poly]:
    """Minimal, fully reduced form of a Groebner basis."""
    basis = sorted(basis, key=lambda p: key(p.lm))
    kept: list[_Poly] = []
    for p in basis:
        if not any(_divides(q.lm, p.lm) for q in kept):
            kept.append(p)
    out = []
    for idx, p in enumerate(kept):
        r = _reduce(p.terms, kept[:idx] + kept[idx + 1:], key)
        out.append(_monic(r, key))
    return out


def reduce_poly(f: MultiPoly, basis: Sequence[MultiPoly], order: str = "grevlex") -> MultiPoly:
    key = ORDERS[order]
    work = [_monic(dict(b.terms), key) for b in basis if b.terms]
    return MultiPoly(f.nvars, _reduce(dict(f.terms), work, key))


def contains_one(polys: Sequence[MultiPoly], budget: int = 20000) -> bool:
    gb = groebner(polys, "grevlex", budget)
    return len(gb) == 1 and gb[0].degree == 0


def _rational_roots(coeffs: list) -> list:
    """Rational roots of a univariate polynomial given low-to-high coefficients."""
    while coeffs and not coeffs[-1]:
        coeffs = coeffs[:-1]
    if len(coeffs) <= 1:
        return []
    roots = []
    if not coeffs[0]:
        roots.append(QQ(0))
        k = next(i for i, c in enumerate(coeffs) if c)
        coeffs = coeffs[k:]
        if len(coeffs) <= 1:
            return roots
    numeric = np.roots([float(c) for c in reversed(coeffs)])
    for z in numeric:
        if abs(z.imag) > 1e-6 * max(1.0, abs(z)):
            continue
        cand = Fraction(float(z.real)).limit_denominator(10**6)
        q = QQ(cand)
        val = sum(c * q**i for i, c in enumerate(coeffs))
        if val == 0 and q not in roots:
            roots.append(q)
    return roots


def rational_points(polys: Sequence[MultiPoly], budget: int = 20000) -> list[tuple]:
    """Rational common zeros of a zero-dimensional system (best effort).

    Uses a lex basis and back substitution; roots are found numerically and
    then verified exactly, so every returned point is a genuine solution.
    """
    if not polys:
        return []
    n = polys[0].nvars
    gb = groebner(polys, "lex", budget)
    if len(gb) == 1 and gb[0].degree == 0:
        return []
    if n == 0:
        return [()]

    def extend(partial: dict, var: int) -> list[dict]:
        if var < 0:
            return [partial]
        # polynomials involving only variables var..n-1, with var present
        cands = []
        for g in gb:
            used = {i for m in g.terms for i, e in enumerate(m) if e}
            if used and min(used) == var:
                cands.append(g)
        if not cands:
            return []  # positive-dimensional in this variable
        results = []
        g = cands[-1]
        # substitute known values to get a univariate polynomial in var
        coeffs: dict = {}
        for m, c in g.terms.items():
            v = c
            for i in range(var + 1, n):
                if m[i]:
                    v = v * partial[i] ** m[i]
            coeffs[m[var]] = coeffs.get(m[var], 0) + v
        dense = [coeffs.get(i, QQ(0)) for i in range(max(coeffs) + 1)]
        if not any(dense):
            return []
        for root in _rational_roots(dense):
            trial = dict(partial)
            trial[var] = root
            results.extend(extend(trial, var - 1))
        return results

    sols = []
    for s in extend({}, n - 1):
        pt = tuple(s[i] for i in range(n))
        if all(p.evaluate(pt) == 0 for p in polys):
            sols.append(pt)
    return sols
