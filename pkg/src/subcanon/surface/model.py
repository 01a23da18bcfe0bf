"""Hyperelliptic models w^2 = f(z) and spinor-derived differential triples."""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field

import numpy as np

from ..algebra.poly import MultiPoly
from ..algebra.scalars import GaussianRational
from ..parser import parse_polynomial


class BranchPointError(ValueError):
    """Branch points of the model are not numerically isolated."""


def _as_poly(p) -> MultiPoly:
    if isinstance(p, MultiPoly):
        if p.nvars != 1:
            raise ValueError("expected a polynomial in the single variable z")
        return p
    if isinstance(p, str):
        return parse_polynomial(p, ["z"], imaginary="i")
    return MultiPoly.constant(1, p)


def numeric_coeffs(p: MultiPoly) -> np.ndarray:
    """Low-to-high complex coefficients of a univariate polynomial."""
    return np.array([complex(c) for c in p.univariate_coefficients()], dtype=np.complex128)


def _roots(coeffs: np.ndarray) -> np.ndarray:
    c = np.trim_zeros(coeffs, "b")
    if len(c) <= 1:
        return np.zeros(0, dtype=np.complex128)
    return np.roots(c[::-1])


@dataclass
class HyperellipticModel:
    """The curve w^2 = f(z), with f squarefree of degree 2g+1 or 2g+2.

    Branch points are sorted by argument, then by modulus.
    """

    f: MultiPoly
    separation_tol: float = 1e-6
    coeffs: np.ndarray = field(init=False, repr=False)
    branch_points: np.ndarray = field(init=False, repr=False)
    genus: int = field(init=False)

    def __post_init__(self):
        self.f = _as_poly(self.f)
        self.coeffs = numeric_coeffs(self.f)
        deg = self.f.degree
        if deg < 3:
            raise ValueError("branch polynomial must have degree at least 3")
        self.genus = (deg - 1) // 2
        roots = _roots(self.coeffs)
        # round the argument so that roots on a common ray sort by modulus
        key = np.mod(np.round(np.angle(roots), 9), np.round(2 * np.pi, 9))
        order = np.lexsort((np.abs(roots), key))
        self.branch_points = roots[order]
        sep = self.min_separation()
        if sep < self.separation_tol:
            raise BranchPointError(f"branch points closer than {self.separation_tol:g} (min {sep:.3g})")

    @classmethod
    def from_string(cls, text: str, **kw) -> "HyperellipticModel":
        return cls(parse_polynomial(text, ["z"], imaginary="i"), **kw)

    @property
    def degree(self) -> int:
        return self.f.degree

    @property
    def branched_at_infinity(self) -> bool:
        return self.degree % 2 == 1

    def min_separation(self) -> float:
        e = self.branch_points
        d = np.abs(e[:, None] - e[None, :])
        d[np.diag_indices_from(d)] = np.inf
        return float(d.min())

    def f_numeric(self, z):
        acc = np.zeros_like(np.asarray(z, dtype=np.complex128))
        for c in self.coeffs[::-1]:
            acc = acc * z + c
        return acc

    def w_principal(self, z):
        return np.sqrt(self.f_numeric(z))


@dataclass(frozen=True)
class SpinorData:
    """Sections s_j = q_j(z) * sqrt(dz / w); only the polynomials are stored."""

    q0: MultiPoly
    q1: MultiPoly
    tol: float = 1e-9

    def __post_init__(self):
        object.__setattr__(self, "q0", _as_poly(self.q0))
        object.__setattr__(self, "q1", _as_poly(self.q1))
        if self.q0.is_zero() and self.q1.is_zero():
            raise ValueError("spinor sections are both zero")
        r0 = _roots(numeric_coeffs(self.q0))
        r1 = _roots(numeric_coeffs(self.q1))
        if self.q0.is_zero():
            common = r1
        elif self.q1.is_zero():
            common = r0
        else:
            common = [a for a in r0 if np.any(np.abs(r1 - a) < np.sqrt(self.tol))]
        if len(common):
            raise ValueError(f"spinor sections share a zero near {complex(common[0]):.6g}")

    def max_degree(self) -> int:
        return max(self.q0.degree, self.q1.degree)

    def holomorphic_on(self, model: HyperellipticModel) -> bool:
        """q_j^2 dz/w is holomorphic at infinity iff 2*deg q_j <= g - 1."""
        return 2 * self.max_degree() <= model.genus - 1

    def base_point_free_on(self, model: HyperellipticModel) -> bool:
        """No common zero, including the point(s) over z = infinity."""
        if not self.holomorphic_on(model):
            return False
        return 2 * self.max_degree() == model.genus - 1


@dataclass(frozen=True)
class DifferentialTriple:
    """omega_k = e^{i theta} * p_k(z) dz / w, with the p_k kept exact."""

    p: tuple[MultiPoly, MultiPoly, MultiPoly]
    theta: float = 0.0

    @property
    def phase(self) -> complex:
        return cmath.exp(1j * self.theta)

    def numerators(self) -> np.ndarray:
        """Phase-scaled numeric numerators, one row per differential."""
        deg = max(max(q.degree for q in self.p), 0)
        out = np.zeros((3, deg + 1), dtype=np.complex128)
        for k, q in enumerate(self.p):
            c = numeric_coeffs(q) if not q.is_zero() else np.zeros(1)
            out[k, : len(c)] = c
        return out * self.phase

    def with_phase(self, theta: float) -> "DifferentialTriple":
        return DifferentialTriple(self.p, theta)


def differentials_from_spinor(s: SpinorData, theta: float = 0.0) -> DifferentialTriple:
    a = s.q0 * s.q0
    b = s.q1 * s.q1
    i = GaussianRational(0, 1)
    return DifferentialTriple((a - b, (a + b) * i, s.q0 * s.q1 * 2), theta)


def conformality_residual(t) -> float:
    """Max coefficient modulus of p0^2 + p1^2 + p2^2 (0.0 when exactly zero)."""
    if isinstance(t, DifferentialTriple):
        p = t.p
    else:
        p = tuple(_as_poly(q) for q in t)
    total = p[0] * p[0] + p[1] * p[1] + p[2] * p[2]
    if total.is_zero():
        return 0.0
    return max(abs(complex(c)) for c in total.terms.values())


def conformality_check(t, tol: float = 0.0) -> bool:
    """True iff sum p_k^2 vanishes identically (exact input) or below ``tol``."""
    return conformality_residual(t) <= tol
