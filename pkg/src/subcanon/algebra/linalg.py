"""Exact dense linear algebra over Q (or Q(i)) by fraction-based elimination."""

from __future__ import annotations

from typing import Sequence

from .scalars import QQ


class ExactMatrix:
    """Row-major matrix of exact scalars."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Sequence[Sequence], ncols: int | None = None):
        self.rows = [[QQ(x) if isinstance(x, int) else x for x in r] for r in rows]
        self.nrows = len(self.rows)
        if ncols is None:
            ncols = len(self.rows[0]) if self.rows else 0
        if any(len(r) != ncols for r in self.rows):
            raise ValueError("ragged matrix")
        self.ncols = ncols

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], n)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "ExactMatrix":
        return cls([[0] * ncols for _ in range(nrows)], ncols)

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix([list(c) for c in zip(*self.rows)], self.nrows) if self.rows else ExactMatrix([], 0)

    def rank(self) -> int:
        return len(rref(self.rows)[1])

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __repr__(self):
        return f"ExactMatrix({self.nrows}x{self.ncols})"


def rref(rows: Sequence[Sequence]) -> tuple[list[list], list[int]]:
    """Reduced row echelon form and pivot columns.

    Columns are scanned left to right; within a column the first row with a
    nonzero entry is the pivot.
    """
    m = [list(r) for r in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        p = next((i for i in range(r, len(m)) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        row = [x * inv if x else x for x in m[r]]
        m[r] = row
        for i in range(len(m)):
            if i != r:
                f = m[i][c]
                if f:
                    mi = m[i]
                    m[i] = [a - f * b if b else a for a, b in zip(mi, row)]
        pivots.append(c)
        r += 1
    return m, pivots


def matrix_rank(m) -> int:
    """Exact rank of an :class:`ExactMatrix` or nested sequence."""
    rows = m.rows if isinstance(m, ExactMatrix) else m
    if not rows or not len(rows[0]):
        return 0
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence], ncols: int | None = None) -> list[list]:
    """Basis of ``{v : A v = 0}``; one vector per free column, in column order."""
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    if not rows:
        return [[QQ(1) if i == j else QQ(0) for i in range(ncols)] for j in range(ncols)]
    red, pivots = rref(rows)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = [QQ(0)] * ncols
        v[free] = QQ(1)
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][free]
        basis.append(v)
    return basis


def solve(rows: Sequence[Sequence], rhs: Sequence) -> list:
    """Solve a square nonsingular system exactly."""
    n = len(rows)
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug)
    if pivots != list(range(n)):
        raise ZeroDivisionError("singular system")
    return [red[i][n] for i in range(n)]


def inverse(rows: Sequence[Sequence]) -> list[list]:
    n = len(rows)
    aug = [list(r) + [QQ(1) if i == j else QQ(0) for j in range(n)] for i, r in enumerate(rows)]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [r[n:] for r in red]


def determinant(rows: Sequence[Sequence]):
    m = [list(r) for r in rows]
    n = len(m)
    det = QQ(1)
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c]), None)
        if p is None:
            return QQ(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            det = -det
        det *= m[c][c]
        inv = 1 / m[c][c]
        for i in range(c + 1, n):
            f = m[i][c] * inv
            if f:
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return det
