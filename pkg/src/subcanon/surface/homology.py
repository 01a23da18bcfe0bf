"""Polygonal homology cycles on w^2 = f(z) and their intersection pairing.

The basis is a chain: loop k encircles the branch points e_k and e_{k+1}
(in argument-then-modulus order) for k = 0 .. 2g-1.  Consecutive loops
share one branch point and meet once on the surface, so the pairing matrix
is tridiagonal with off-diagonal entries +-1.  Radii alternate between
neighbouring loops so their boundaries cross transversally.

The pairing is not assumed: it is recomputed from the actual polygons by
locating every crossing, continuing w to it along both loops, and counting
only crossings where the two lifts lie on the same sheet.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .model import BranchPointError, HyperellipticModel


@dataclass
class Cycle:
    """A closed polyline in the z-plane plus the value of w at its start.

    Together these fix a closed lift to the surface.
    """

    vertices: np.ndarray
    w0: complex
    kind: str = "test"
    pair: tuple[int, int] | None = None
    max_step: float = 0.05

    def reversed(self) -> "Cycle":
        return Cycle(self.vertices[::-1].copy(), self.w0, self.kind, self.pair, self.max_step)

    def repeated(self, times: int = 2) -> "Cycle":
        v = self.vertices
        parts = [v] + [v[1:]] * (times - 1)
        return Cycle(np.concatenate(parts), self.w0, self.kind, self.pair, self.max_step)

    @property
    def edges(self) -> tuple[np.ndarray, np.ndarray]:
        return self.vertices[:-1], self.vertices[1:]


def _densify(points: list[complex], step: float) -> np.ndarray:
    out = [points[0]]
    for a, b in zip(points[:-1], points[1:]):
        k = max(1, int(np.ceil(abs(b - a) / step)))
        out.extend(a + (b - a) * np.arange(1, k + 1) / k)
    return np.asarray(out, dtype=np.complex128)


def stadium(a: complex, b: complex, radius: float, arc_points: int = 16, step: float | None = None) -> np.ndarray:
    """Counterclockwise closed polyline at distance ``radius`` from segment [a, b]."""
    u = (b - a) / abs(b - a)
    n = 1j * u
    ang_n = np.angle(n)
    pts: list[complex] = [a - radius * n, b - radius * n]
    for t in np.linspace(ang_n - np.pi, ang_n, arc_points + 1)[1:]:
        pts.append(b + radius * np.exp(1j * t))
    pts.append(a + radius * n)
    for t in np.linspace(ang_n, ang_n + np.pi, arc_points + 1)[1:]:
        pts.append(a + radius * np.exp(1j * t))
    pts[-1] = pts[0]
    return _densify(pts, step or radius / 2)


def circle(center: complex, radius: float, points: int = 64) -> np.ndarray:
    t = np.linspace(0.0, 2 * np.pi, points + 1)
    v = center + radius * np.exp(1j * t)
    v[-1] = v[0]
    return v


def track(model: HyperellipticModel, path: np.ndarray, w0: complex, substeps: int = 8) -> np.ndarray:
    """Continue w along ``path`` by nearest-value choice; returns w at each vertex."""
    out = np.empty(len(path), dtype=np.complex128)
    out[0] = w0
    w = w0
    frac = np.arange(1, substeps + 1) / substeps
    for k in range(len(path) - 1):
        zs = path[k] + (path[k + 1] - path[k]) * frac
        roots = model.w_principal(zs)
        for r in roots:
            w = r if abs(r - w) <= abs(r + w) else -r
        out[k + 1] = w
    return out


def _segment_distance(p: complex, a: complex, b: complex) -> float:
    d = b - a
    t = np.clip(((p - a) * np.conj(d)).real / abs(d) ** 2, 0.0, 1.0)
    return float(abs(p - (a + t * d)))


def _cross(a, b):
    return (np.conj(a) * b).imag


def intersection_number(model: HyperellipticModel, c1: Cycle, c2: Cycle) -> int:
    a0, a1 = c1.edges
    b0, b1 = c2.edges
    wa = track(model, c1.vertices, c1.w0)
    wb = track(model, c2.vertices, c2.w0)
    da = (a1 - a0)[:, None]
    db = (b1 - b0)[None, :]
    off = b0[None, :] - a0[:, None]
    denom = _cross(da, db)
    with np.errstate(divide="ignore", invalid="ignore"):
        t = _cross(off, db) / denom
        s = _cross(off, da) / denom
    hit = (denom != 0) & (t >= 0) & (t < 1) & (s >= 0) & (s < 1)
    total = 0
    for i, j in zip(*np.nonzero(hit)):
        z = a0[i] + t[i, j] * (a1[i] - a0[i])
        w1 = track(model, np.array([a0[i], z]), wa[i])[-1]
        w2 = track(model, np.array([b0[j], z]), wb[j])[-1]
        if abs(w1 - w2) < abs(w1 + w2):
            total += 1 if denom[i, j] > 0 else -1
    return total


def intersection_matrix(model: HyperellipticModel, cycles: list[Cycle]) -> np.ndarray:
    n = len(cycles)
    m = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        for j in range(i + 1, n):
            m[i, j] = intersection_number(model, cycles[i], cycles[j])
            m[j, i] = -m[i, j]
    return m


@dataclass
class HomologyBasis:
    cycles: list[Cycle]
    pairing: np.ndarray
    determinant: int
    clearance: float
    extra: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.cycles)

    def __iter__(self):
        return iter(self.cycles)

    def __getitem__(self, k):
        return self.cycles[k]


def homology_basis(model: HyperellipticModel, clearance: float | None = None, arc_points: int = 16) -> HomologyBasis:
    """Chain basis of 2g loops, certified by a unimodular pairing matrix."""
    e = model.branch_points
    sep = model.min_separation()
    if sep < model.separation_tol:
        raise BranchPointError("branch points are not isolated")
    rho = clearance if clearance is not None else sep / 4
    g = model.genus
    cycles = []
    for k in range(2 * g):
        a, b = e[k], e[k + 1]
        others = [p for idx, p in enumerate(e) if idx not in (k, k + 1)]
        room = min((_segment_distance(p, a, b) for p in others), default=np.inf)
        r = min(rho if k % 2 == 0 else 0.6 * rho, 0.5 * room)
        verts = stadium(a, b, r, arc_points)
        w0 = complex(model.w_principal(verts[0]))
        kind = "a" if k % 2 == 0 else "b"
        cycles.append(Cycle(verts, w0, kind, (k, k + 1), max_step=r / 2))
    pairing = intersection_matrix(model, cycles)
    det = int(round(np.linalg.det(pairing.astype(float))))
    if abs(det) != 1:
        raise BranchPointError(f"constructed cycles are not a basis (pairing determinant {det})")
    return HomologyBasis(cycles, pairing, det, rho)
