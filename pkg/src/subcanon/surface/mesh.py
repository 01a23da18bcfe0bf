"""Triangulated immersion of the double cover into R^3 / Lambda.

A square grid in the z-plane is lifted to both sheets.  Every grid edge is
integrated once, starting on the principal sheet at its tail; the value of w
reached at its head decides whether the edge joins equal or opposite sheets.
Positions are accumulated over a spanning tree of the lifted graph and then
reduced into the fundamental parallelepiped of the lattice.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import kernels
from .lattice import Lattice3
from .model import DifferentialTriple, HyperellipticModel
from .periods import gauss_legendre


class MeshError(RuntimeError):
    pass


@dataclass
class ImmersionMesh:
    vertices: np.ndarray
    faces: np.ndarray
    tags: list[tuple[complex, int]]
    tree_gap: float = 0.0
    closure: float = 0.0
    offset: complex = 0j
    info: dict = field(default_factory=dict)

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)


@dataclass(frozen=True)
class MeshConfig:
    resolution: int = 16
    half_width: float | None = None
    nodes: int = 16
    tol: float = 1e-9
    max_splits: int = 12
    retries: int = 8
    # grid edges and vertices must keep this fraction of a cell from branch points
    clearance: float = 0.01


def _grid(center: complex, half: float, r: int, offset: complex) -> np.ndarray:
    xs = np.linspace(-half, half, r + 1)
    zz = center + offset + xs[None, :] + 1j * xs[:, None]
    return zz.ravel()


def _grid_edges(r: int) -> tuple[np.ndarray, list[tuple[int, int, int]]]:
    idx = lambda i, j: i * (r + 1) + j  # noqa: E731
    edges = []
    for i in range(r + 1):
        for j in range(r + 1):
            if j < r:
                edges.append((idx(i, j), idx(i, j + 1)))
            if i < r:
                edges.append((idx(i, j), idx(i + 1, j)))
            if i < r and j < r:
                edges.append((idx(i, j), idx(i + 1, j + 1)))
    tris = []
    for i in range(r):
        for j in range(r):
            a, b, c, d = idx(i, j), idx(i, j + 1), idx(i + 1, j + 1), idx(i + 1, j)
            tris.append((a, b, c))
            tris.append((a, c, d))
    return np.array(edges, dtype=np.int64), tris


def _min_clearance(z: np.ndarray, edges: np.ndarray, e: np.ndarray) -> float:
    a, b = z[edges[:, 0]], z[edges[:, 1]]
    d = b - a
    best = np.inf
    for p in e:
        t = np.clip(((p - a) * np.conj(d)).real / np.abs(d) ** 2, 0.0, 1.0)
        best = min(best, float(np.abs(p - (a + t * d)).min()))
    return best


def _integrate_edges(model, num, za, zb, w0, cfg: MeshConfig, tol: float):
    """Adaptive edge integrals; unconverged edges are cut into 2^k pieces."""
    x1, v1 = gauss_legendre(cfg.nodes)
    x2, v2 = gauss_legendre(2 * cfg.nodes)
    r1, _, a1 = kernels.edge_integrals(za, zb, w0, model.coeffs, num, x1, v1)
    r2, wend, a2 = kernels.edge_integrals(za, zb, w0, model.coeffs, num, x2, v2)
    err = np.abs(r2 - r1).max(axis=1)
    bad = np.nonzero((err > tol) | (np.maximum(a1, a2) > 0.5))[0]
    for e in bad:
        for level in range(1, cfg.max_splits + 1):
            k = 2**level
            pts = za[e] + (zb[e] - za[e]) * np.arange(k + 1) / k
            s1, _, b1 = kernels.path_integrals(pts[:-1], pts[1:], w0[e], model.coeffs, num, x1, v1)
            s2, we, b2 = kernels.path_integrals(pts[:-1], pts[1:], w0[e], model.coeffs, num, x2, v2)
            e_err = np.abs(s2 - s1).sum(axis=0).max()
            if e_err <= tol and max(b1, b2) <= 0.5:
                r2[e], wend[e], err[e] = s2.sum(axis=0), we[-1], e_err
                break
        else:
            raise MeshError(f"edge {e} did not converge (error {e_err:.3g})")
    return r2, wend, err


def _spanning_positions(n_lift: int, adj: list[list[tuple[int, np.ndarray]]], root: int, depth_first: bool):
    pos = np.full((n_lift, 3), np.nan)
    pos[root] = 0.0
    seen = np.zeros(n_lift, dtype=bool)
    seen[root] = True
    frontier = deque([root])
    while frontier:
        u = frontier.pop() if depth_first else frontier.popleft()
        nbrs = adj[u][::-1] if depth_first else adj[u]
        for v, d in nbrs:
            if not seen[v]:
                seen[v] = True
                pos[v] = pos[u] + d
                frontier.append(v)
    if not seen.all():
        raise MeshError("lifted grid is not connected")
    return pos


def immersion_mesh(model: HyperellipticModel, triple: DifferentialTriple, lattice: Lattice3,
                   basepoint: complex = 0.0, resolution: int | None = None, seed: int = 0,
                   config: MeshConfig = MeshConfig()) -> ImmersionMesh:
    """Mesh of the immersion p -> Re int_q^p omega, reduced mod the lattice.

    ``basepoint`` picks the grid vertex nearest to it (principal sheet) as q.
    Grids that pass too close to a branch point are shifted by a seeded
    random offset and rebuilt, up to ``config.retries`` times.
    """
    r = resolution if resolution is not None else config.resolution
    e = model.branch_points
    half = config.half_width or 1.25 * float(np.abs(e).max())
    h = 2 * half / r
    edges, tris = _grid_edges(r)
    rng = np.random.default_rng(seed)
    offset = 0j
    for _ in range(config.retries + 1):
        z = _grid(0j, half, r, offset)
        vdist = np.abs(z[:, None] - e[None, :]).min()
        if min(vdist, _min_clearance(z, edges, e)) > config.clearance * h:
            break
        offset = complex(*(rng.uniform(-0.5, 0.5, 2) * h))
    else:
        raise MeshError("could not place the grid away from branch points")

    num = triple.numerators()
    nz = len(z)
    wplus = model.w_principal(z)
    za, zb = z[edges[:, 0]], z[edges[:, 1]]
    # tree paths have at most 2r edges per sheet, so budget each edge accordingly
    ints, wend, err = _integrate_edges(model, num, za, zb, wplus[edges[:, 0]], config, config.tol / (4 * r))
    # sigma = +1 when the tracked head value is the principal root there
    sigma = np.where(np.abs(wend - wplus[edges[:, 1]]) <= np.abs(wend + wplus[edges[:, 1]]), 1, -1)
    d = ints.real

    # lifted vertex (k, s): index k for sheet +1, k + nz for sheet -1
    def lift(k, s):
        return k if s > 0 else k + nz

    adj: list[list[tuple[int, np.ndarray]]] = [[] for _ in range(2 * nz)]
    for (a, b), s, dv in zip(edges, sigma, d):
        for sa in (1, -1):
            u, v = lift(a, sa), lift(b, sa * s)
            adj[u].append((v, sa * dv))
            adj[v].append((u, -sa * dv))

    root = int(np.argmin(np.abs(z - basepoint)))
    bfs = _spanning_positions(2 * nz, adj, root, depth_first=False)
    dfs = _spanning_positions(2 * nz, adj, root, depth_first=True)
    tree_gap = float(lattice.distance_to_lattice(bfs - dfs).max())
    tails, heads, steps = [], [], []
    for u in range(2 * nz):
        for v, dv in adj[u]:
            tails.append(u)
            heads.append(v)
            steps.append(dv)
    gaps = bfs[tails] + np.array(steps) - bfs[heads]
    closure = float(lattice.distance_to_lattice(gaps).max())

    sheet_of = {(a, b): s for (a, b), s in zip(edges, sigma)}

    def step(a, b, s):
        if (a, b) in sheet_of:
            return s * sheet_of[(a, b)]
        return s * sheet_of[(b, a)]

    faces = []
    for a, b, c in tris:
        sb = step(a, b, 1)
        sc = step(b, c, sb)
        back = step(c, a, sc)
        if back == 1:
            faces.append((lift(a, 1), lift(b, sb), lift(c, sc)))
            faces.append((lift(a, -1), lift(b, -sb), lift(c, -sc)))
        else:
            # a branch point inside: the lift is one hexagon a b c a' b' c'
            ring = [lift(a, 1), lift(b, sb), lift(c, sc), lift(a, -1), lift(b, -sb), lift(c, -sc)]
            for k in range(1, 5):
                faces.append((ring[0], ring[k], ring[k + 1]))

    tags = [(complex(z[k % nz]), 1 if k < nz else -1) for k in range(2 * nz)]
    verts = lattice.reduce(bfs)
    return ImmersionMesh(
        vertices=verts,
        faces=np.array(faces, dtype=np.int64).reshape(-1, 3),
        tags=tags,
        tree_gap=tree_gap,
        closure=closure,
        offset=offset,
        info={"resolution": r, "half_width": half, "max_edge_error": float(err.max()),
              "backend": kernels.BACKEND},
    )


def export_obj(mesh: ImmersionMesh, destination) -> None:
    """Write ``v x y z`` lines (9 significant digits) then 1-based ``f i j k`` lines."""
    lines = [f"v {x:.9g} {y:.9g} {z:.9g}" for x, y, z in np.asarray(mesh.vertices, dtype=float).reshape(-1, 3)]
    lines += [f"f {i + 1} {j + 1} {k + 1}" for i, j, k in np.asarray(mesh.faces, dtype=np.int64).reshape(-1, 3)]
    text = "\n".join(lines) + ("\n" if lines else "")
    if hasattr(destination, "write"):
        destination.write(text)
    else:
        Path(destination).write_text(text)
