"""Real periods of a differential triple over polygonal cycles."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import kernels
from .homology import Cycle, HomologyBasis
from .model import DifferentialTriple, HyperellipticModel, conformality_check


class QuadratureError(RuntimeError):
    """Quadrature did not reach the requested tolerance."""


@dataclass(frozen=True)
class QuadratureConfig:
    nodes: int = 64
    tol: float = 1e-10
    max_splits: int = 6
    # continuation is refused when |w - w_prev| / |w + w_prev| exceeds this
    ambiguity: float = 0.5
    backend: str | None = None


@lru_cache(maxsize=None)
def gauss_legendre(n: int) -> tuple[np.ndarray, np.ndarray]:
    return np.polynomial.legendre.leggauss(n)


def _split(za: np.ndarray, zb: np.ndarray, parts: int) -> tuple[np.ndarray, np.ndarray]:
    if parts == 1:
        return za, zb
    frac = np.arange(parts + 1) / parts
    pts = za[:, None] + (zb - za)[:, None] * frac[None, :]
    return pts[:, :-1].ravel(), pts[:, 1:].ravel()


@dataclass
class PathIntegral:
    values: np.ndarray
    errors: np.ndarray
    w_end: complex
    splits: int


def integrate_path(model: HyperellipticModel, numerators: np.ndarray, cycle: Cycle,
                   config: QuadratureConfig = QuadratureConfig()) -> PathIntegral:
    """Integrate p_k dz / w along the lift of ``cycle`` fixed by ``cycle.w0``.

    The polyline is first cut so no piece is longer than ``cycle.max_step``;
    pieces are then halved until ``n`` and ``2n`` nodes agree to ``tol`` and
    the square-root continuation is unambiguous.
    """
    za0, zb0 = cycle.edges
    lengths = np.abs(zb0 - za0)
    cuts = np.maximum(1, np.ceil(lengths / cycle.max_step).astype(int))
    za = np.concatenate([a + (b - a) * np.arange(k) / k for a, b, k in zip(za0, zb0, cuts)])
    zb = np.concatenate([a + (b - a) * np.arange(1, k + 1) / k for a, b, k in zip(za0, zb0, cuts)])
    fc = model.coeffs
    x1, w1 = gauss_legendre(config.nodes)
    x2, w2 = gauss_legendre(2 * config.nodes)
    for level in range(config.max_splits + 1):
        a, b = _split(za, zb, 2**level)
        r1, _, amb1 = kernels.path_integrals(a, b, cycle.w0, fc, numerators, x1, w1, config.backend)
        r2, wend, amb2 = kernels.path_integrals(a, b, cycle.w0, fc, numerators, x2, w2, config.backend)
        v1, v2 = r1.sum(axis=0), r2.sum(axis=0)
        err = np.abs(r2 - r1).sum(axis=0)
        if max(amb1, amb2) <= config.ambiguity and err.max() <= config.tol:
            return PathIntegral(v2, err, complex(wend[-1]), level)
    raise QuadratureError(
        f"quadrature error {err.max():.3g} above tolerance {config.tol:g} after {config.max_splits} splits"
    )


@dataclass
class PeriodMatrix:
    """Rows Re(int_gamma omega_k) for each basis cycle, with error bounds."""

    rows: np.ndarray
    complex_periods: np.ndarray
    errors: np.ndarray
    theta: float
    closure: float

    @property
    def shape(self):
        return self.rows.shape


def period_matrix(model: HyperellipticModel, triple: DifferentialTriple, basis: HomologyBasis | list[Cycle],
                  config: QuadratureConfig = QuadratureConfig()) -> PeriodMatrix:
    if not conformality_check(triple):
        raise ValueError("differential triple fails the conformality identity")
    num = triple.numerators()
    cycles = list(basis)
    vals = np.zeros((len(cycles), 3), dtype=np.complex128)
    errs = np.zeros((len(cycles), 3))
    closure = 0.0
    for i, c in enumerate(cycles):
        res = integrate_path(model, num, c, config)
        vals[i], errs[i] = res.values, res.errors
        closure = max(closure, abs(res.w_end - c.w0) / max(abs(c.w0), 1e-300))
    if closure > 1e-6:
        raise QuadratureError(f"a basis cycle does not close on the surface (relative gap {closure:.3g})")
    return PeriodMatrix(vals.real.copy(), vals, errs, triple.theta, closure)


def cycle_period(model: HyperellipticModel, triple: DifferentialTriple, cycle: Cycle,
                 config: QuadratureConfig = QuadratureConfig()) -> np.ndarray:
    """Real period row of a single cycle (need not belong to a basis)."""
    return integrate_path(model, triple.numerators(), cycle, config).values.real
