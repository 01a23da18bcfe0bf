"""Integer-relation search deciding whether period rows span a rank-3 lattice.

With ``n`` rows ``V`` in R^3, the rows generate a lattice exactly when the
integer relations ``c . V = 0`` form a rank ``n - 3`` sublattice.  Relations
are found by LLL on ``[I_n | round(K V)]``; given them, generators come from
the Hermite form of the projection of Z^n onto the relation-free quotient.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..algebra.linalg import inverse, nullspace
from ..algebra.scalars import QQ
from .periods import PeriodMatrix


def _dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def _gram_schmidt(b):
    n = len(b)
    mu = [[QQ(0)] * n for _ in range(n)]
    star, norms = [], []
    for i in range(n):
        v = [QQ(x) for x in b[i]]
        for j in range(i):
            mu[i][j] = _dot(b[i], star[j]) / norms[j] if norms[j] else QQ(0)
            v = [x - mu[i][j] * y for x, y in zip(v, star[j])]
        star.append(v)
        norms.append(_dot(v, v))
    return mu, norms


def lll(basis, delta=QQ(99, 100)) -> list[list[int]]:
    """LLL-reduce integer row vectors, exactly, with Lovasz constant ``delta``."""
    b = [[int(x) for x in row] for row in basis]
    n = len(b)
    mu, norms = _gram_schmidt(b)
    k = 1
    while k < n:
        for j in range(k - 1, -1, -1):
            q = int(math.floor(mu[k][j] + QQ(1, 2)))
            if q:
                b[k] = [x - q * y for x, y in zip(b[k], b[j])]
                for i in range(j):
                    mu[k][i] -= q * mu[j][i]
                mu[k][j] -= q
        if norms[k] >= (delta - mu[k][k - 1] ** 2) * norms[k - 1]:
            k += 1
        else:
            b[k], b[k - 1] = b[k - 1], b[k]
            mu, norms = _gram_schmidt(b)
            k = max(k - 1, 1)
    return b


def hermite_rows(a) -> tuple[list[list[int]], list[list[int]], int]:
    """Row-style Hermite reduction: unimodular ``U`` with ``U a = H`` echelon.

    Returns ``(H, U, rank)``.
    """
    h = [[int(x) for x in row] for row in a]
    m = len(h)
    ncols = len(h[0]) if h else 0
    u = [[int(i == j) for j in range(m)] for i in range(m)]
    r = 0
    for c in range(ncols):
        if r == m:
            break
        for i in range(r + 1, m):
            while h[i][c]:
                q = h[r][c] // h[i][c]
                h[r] = [x - q * y for x, y in zip(h[r], h[i])]
                u[r] = [x - q * y for x, y in zip(u[r], u[i])]
                h[r], h[i] = h[i], h[r]
                u[r], u[i] = u[i], u[r]
        if h[r][c] == 0:
            continue
        if h[r][c] < 0:
            h[r] = [-x for x in h[r]]
            u[r] = [-x for x in u[r]]
        r += 1
    return h, u, r


def _inverse_unimodular(u) -> list[list[int]]:
    inv = inverse([[QQ(x) for x in row] for row in u])
    if any(QQ(x).denominator != 1 for row in inv for x in row):
        raise ArithmeticError("transform is not unimodular")
    return [[int(x) for x in row] for row in inv]


@dataclass
class Lattice3:
    generators: np.ndarray
    coefficients: np.ndarray
    residual: float
    relations: list[list[int]]

    @property
    def rank(self) -> int:
        return int(np.linalg.matrix_rank(self.generators))

    def reduce(self, points: np.ndarray) -> np.ndarray:
        """Representatives in the fundamental parallelepiped ``[0,1)^3 G``."""
        c = np.asarray(points) @ np.linalg.inv(self.generators)
        return (c - np.floor(c)) @ self.generators

    def distance_to_lattice(self, vectors: np.ndarray) -> np.ndarray:
        c = np.asarray(vectors) @ np.linalg.inv(self.generators)
        return np.linalg.norm((c - np.rint(c)) @ self.generators, axis=-1)


@dataclass
class LatticeReport:
    success: bool
    residual: float
    tol: float
    lattice: Lattice3 | None = None
    relation_residuals: list[float] = field(default_factory=list)
    reason: str = ""

    @property
    def rank(self) -> int:
        return self.lattice.rank if self.lattice is not None else 0


def _generators_from_relations(v: np.ndarray, rel: list[list[int]]):
    n = v.shape[0]
    ker = nullspace([[QQ(x) for x in r] for r in rel], n)
    # scale rational kernel vectors to integers; columns of m are rows of M^T
    m = []
    for vec in ker:
        den = 1
        for x in vec:
            den = math.lcm(den, int(QQ(x).denominator))
        m.append([int(QQ(x) * den) for x in vec])
    mt = [list(col) for col in zip(*m)]
    h, u, rank = hermite_rows(mt)
    if rank != 3:
        return None
    uinv = _inverse_unimodular(u)
    gens = np.array([[float(x) for x in row] for row in u[:3]]) @ v
    coeffs = np.array([row[:3] for row in uinv], dtype=object)
    resid = float(np.abs(v - coeffs.astype(float) @ gens).max())
    return gens, coeffs, resid


def _bounded_relations(v: np.ndarray, size: float, scale: float, need: int, bound: int):
    """LLL at decreasing scales until ``need`` relations of height <= ``bound`` appear."""
    n = v.shape[0]
    k = scale
    while True:
        big = np.rint(v * (k / size))
        basis = [[int(i == j) for j in range(n)] + [int(x) for x in big[i]] for i in range(n)]
        cands = []
        for row in lll(basis):
            c = row[:n]
            if max(abs(x) for x in c) <= bound:
                cands.append((float(np.linalg.norm(np.array(c, dtype=float) @ v)), c))
        cands.sort(key=lambda t: t[0])
        if len(cands) >= need or k <= 1.0:
            return cands[:need], k
        k /= 10.0


def lattice_detect(pm: PeriodMatrix | np.ndarray, tol: float = 1e-6, coeff_bound: int = 64,
                   scale: float | None = None) -> LatticeReport:
    """Decide, to tolerance ``tol``, whether the period rows form a rank-3 lattice.

    Relations are only accepted with coefficients bounded by ``coeff_bound``;
    without a height bound every real configuration has arbitrarily good
    approximate relations, so the reported residual is relative to it.
    """
    v = np.asarray(pm.rows if isinstance(pm, PeriodMatrix) else pm, dtype=float)
    n = v.shape[0]
    size = float(np.abs(v).max())
    if n < 3 or size == 0.0:
        return LatticeReport(False, math.inf, tol, reason="fewer than three nonzero periods")
    need = n - 3
    if need == 0:
        if abs(np.linalg.det(v)) <= tol * size**3:
            return LatticeReport(False, math.inf, tol, reason="generators are degenerate")
        return LatticeReport(True, 0.0, tol, Lattice3(v.copy(), np.eye(3, dtype=np.int64), 0.0, []))
    chosen, _ = _bounded_relations(v, size, scale if scale is not None else 1.0 / tol, need, coeff_bound)
    rel_res = [r for r, _ in chosen]
    if len(chosen) < need:
        return LatticeReport(False, math.inf, tol, None, rel_res, "no relations within the coefficient bound")
    worst = max(rel_res)
    if worst >= tol:
        return LatticeReport(False, worst, tol, None, rel_res, "periods do not close to tolerance")
    rel = [c for _, c in chosen]
    built = _generators_from_relations(v, rel)
    if built is None:
        return LatticeReport(False, worst, tol, None, rel_res, "relations do not leave rank 3")
    gens, coeffs, resid = built
    residual = max(worst, resid)
    if residual >= tol:
        return LatticeReport(False, residual, tol, None, rel_res, "periods do not close to tolerance")
    if abs(np.linalg.det(gens)) <= tol * size**3:
        return LatticeReport(False, residual, tol, None, rel_res, "generators are degenerate")
    return LatticeReport(True, residual, tol, Lattice3(gens, coeffs, residual, rel), rel_res)
