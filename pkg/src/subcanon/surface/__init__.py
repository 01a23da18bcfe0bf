"""Spinor data on hyperelliptic curves, their periods, and immersion meshes."""

from .homology import Cycle, HomologyBasis, circle, homology_basis, intersection_matrix
from .lattice import Lattice3, LatticeReport, hermite_rows, lattice_detect, lll
from .mesh import ImmersionMesh, MeshConfig, MeshError, export_obj, immersion_mesh
from .model import (
    BranchPointError,
    DifferentialTriple,
    HyperellipticModel,
    SpinorData,
    conformality_check,
    conformality_residual,
    differentials_from_spinor,
)
from .periods import PeriodMatrix, QuadratureConfig, QuadratureError, cycle_period, integrate_path, period_matrix
from .pipeline import SCHWARZ, run_mesh, run_surface

__all__ = [
    "BranchPointError", "Cycle", "DifferentialTriple", "HomologyBasis", "HyperellipticModel",
    "ImmersionMesh", "Lattice3", "LatticeReport", "MeshConfig", "MeshError", "PeriodMatrix",
    "QuadratureConfig", "QuadratureError", "SCHWARZ", "SpinorData", "circle", "conformality_check",
    "conformality_residual", "cycle_period", "differentials_from_spinor", "export_obj",
    "hermite_rows", "homology_basis", "immersion_mesh", "integrate_path", "intersection_matrix",
    "lattice_detect", "lll", "period_matrix", "run_mesh", "run_surface",
]
