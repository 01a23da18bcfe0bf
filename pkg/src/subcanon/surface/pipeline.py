"""End-to-end runs from a JSON-style description of spinor data."""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from . import kernels
from .homology import homology_basis
from .lattice import LatticeReport, lattice_detect
from .mesh import ImmersionMesh, MeshConfig, immersion_mesh
from .model import (
    DifferentialTriple,
    HyperellipticModel,
    SpinorData,
    conformality_residual,
    differentials_from_spinor,
)
from .periods import PeriodMatrix, QuadratureConfig, period_matrix

SCHWARZ = {"f": "z^8 - 14*z^4 + 1", "q0": "1", "q1": "z"}


def _theta(value) -> float:
    """Accept a float or a small expression such as ``"pi/4"``."""
    if isinstance(value, (int, float)):
        return float(value)
    text = str(value).replace(" ", "").lower()
    if "pi" not in text:
        return float(text)
    num, _, den = text.partition("/")
    coeff = num.replace("*", "").replace("pi", "")
    scale = float(coeff) if coeff not in ("", "+", "-") else (-1.0 if coeff == "-" else 1.0)
    return scale * math.pi / (float(den) if den else 1.0)


@dataclass
class SurfaceRun:
    model: HyperellipticModel
    spinor: SpinorData
    triple: DifferentialTriple
    periods: PeriodMatrix
    lattice: LatticeReport
    seconds: float

    def report(self) -> dict:
        lat = self.lattice
        out = {
            "genus": self.model.genus,
            "branch_points": [[float(z.real), float(z.imag)] for z in self.model.branch_points],
            "theta": self.triple.theta,
            "numerators": [p.to_string(["z"]) for p in self.triple.p],
            "conformality_residual": conformality_residual(self.triple),
            "base_point_free": self.spinor.base_point_free_on(self.model),
            "period_rows": self.periods.rows.tolist(),
            "period_errors_max": float(self.periods.errors.max()),
            "lattice": {
                "success": lat.success,
                "rank": lat.rank,
                "residual": lat.residual if math.isfinite(lat.residual) else None,
                "tol": lat.tol,
                "relation_residuals": lat.relation_residuals,
                "reason": lat.reason,
            },
            "backend": kernels.BACKEND,
            "seconds": round(self.seconds, 3),
            "verified": lat.success,
        }
        if lat.lattice is not None:
            out["lattice"]["generators"] = lat.lattice.generators.tolist()
            out["lattice"]["coefficients"] = [[int(x) for x in row] for row in lat.lattice.coefficients]
        return out


def run_surface(data: dict, quad_nodes: int | None = None, tol: float | None = None,
                lattice_tol: float | None = None) -> SurfaceRun:
    """Spinor data -> periods -> lattice decision.

    ``data`` holds ``f``, ``q0``, ``q1`` (polynomial strings in ``z`` with
    ``i`` allowed) and optionally ``theta``, ``tol``, ``quad_nodes``,
    ``lattice_tol``.  Flags given as arguments take precedence.
    """
    started = time.perf_counter()
    model = HyperellipticModel.from_string(data["f"])
    spinor = SpinorData(data["q0"], data["q1"])
    triple = differentials_from_spinor(spinor, _theta(data.get("theta", 0.0)))
    config = QuadratureConfig(
        nodes=int(quad_nodes or data.get("quad_nodes", 64)),
        tol=float(tol or data.get("tol", 1e-10)),
    )
    basis = homology_basis(model)
    pm = period_matrix(model, triple, basis, config)
    lat = lattice_detect(pm, tol=float(lattice_tol or data.get("lattice_tol", 1e-6)))
    return SurfaceRun(model, spinor, triple, pm, lat, time.perf_counter() - started)


def run_mesh(data: dict, resolution: int = 16, seed: int = 0, quad_nodes: int | None = None,
             tol: float | None = None) -> tuple[SurfaceRun, ImmersionMesh | None]:
    run = run_surface(data, quad_nodes=quad_nodes)
    if not run.lattice.success:
        return run, None
    cfg = MeshConfig(
        resolution=int(data.get("resolution", resolution)),
        nodes=int(data.get("mesh_nodes", 16)),
        tol=float(tol or data.get("mesh_tol", 1e-9)),
    )
    basepoint = complex(*data.get("basepoint", (0.1, 0.05)))
    mesh = immersion_mesh(run.model, run.triple, run.lattice.lattice, basepoint, cfg.resolution, seed, cfg)
    return run, mesh


def mesh_report(mesh: ImmersionMesh, tol: float) -> dict:
    finite = bool(np.isfinite(mesh.vertices).all())
    valid = bool(len(mesh.faces) == 0 or (mesh.faces.min() >= 0 and mesh.faces.max() < mesh.n_vertices))
    ok = finite and valid and mesh.tree_gap <= 10 * tol
    return {
        "vertices": mesh.n_vertices,
        "faces": int(len(mesh.faces)),
        "tree_gap": mesh.tree_gap,
        "closure": mesh.closure,
        "finite": finite,
        "indices_valid": valid,
        "grid_offset": [mesh.offset.real, mesh.offset.imag],
        **mesh.info,
        "verified": ok,
    }
