"""Quadrature kernels: compiled when available, NumPy otherwise.

Both back ends integrate ``p_j(z) dz / w`` over straight segments with
Gauss-Legendre nodes while continuing ``w = sqrt(f(z))`` by choosing, at each
node, the square root nearest to the previous value.  They also report the
worst ratio ``|w - w_prev| / |w + w_prev|`` seen; values near 1 mean the
continuation was ambiguous and the segment must be split.
"""

from __future__ import annotations

import os

import numpy as np

try:
    if os.environ.get("SUBCANON_PURE_PYTHON"):
        raise ImportError("compiled kernels disabled by SUBCANON_PURE_PYTHON")
    from . import _kernels as _compiled
except ImportError:
    _compiled = None

BACKEND = "cython" if _compiled is not None else "numpy"


def _follow(w_prev, fz):
    w = np.sqrt(fz)
    d_same = np.abs(w - w_prev)
    d_flip = np.abs(w + w_prev)
    flip = d_flip < d_same
    w = np.where(flip, -w, w)
    near = np.where(flip, d_flip, d_same)
    far = np.where(flip, d_same, d_flip)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(far > 0, near / far, 0.0)
    return w, ratio


def _horner(coeffs, z):
    acc = np.zeros_like(z)
    for c in coeffs[::-1]:
        acc = acc * z + c
    return acc


def edge_integrals_numpy(za, zb, w0, fc, num, nodes, weights):
    za = np.asarray(za, dtype=np.complex128)
    zb = np.asarray(zb, dtype=np.complex128)
    w = np.asarray(w0, dtype=np.complex128).copy()
    half = 0.5 * (zb - za)
    mid = 0.5 * (zb + za)
    out = np.zeros((za.shape[0], num.shape[0]), dtype=np.complex128)
    ratios = np.zeros(za.shape[0])
    for x, wt in zip(nodes, weights):
        z = mid + half * x
        w, r = _follow(w, _horner(fc, z))
        ratios = np.maximum(ratios, r)
        for j in range(num.shape[0]):
            out[:, j] += wt * _horner(num[j], z) / w
    out *= half[:, None]
    w, r = _follow(w, _horner(fc, zb))
    ratios = np.maximum(ratios, r)
    return out, w, ratios


def path_integrals_numpy(za, zb, w_start, fc, num, nodes, weights):
    n = len(za)
    res = np.zeros((n, num.shape[0]), dtype=np.complex128)
    wend = np.zeros(n, dtype=np.complex128)
    w = np.array([w_start], dtype=np.complex128)
    worst = 0.0
    for s in range(n):
        out, w, r = edge_integrals_numpy(za[s:s + 1], zb[s:s + 1], w, fc, num, nodes, weights)
        res[s] = out[0]
        wend[s] = w[0]
        worst = max(worst, float(r[0]))
    return res, wend, worst


def _prep(fc, num, nodes, weights):
    return (
        np.ascontiguousarray(fc, dtype=np.complex128),
        np.ascontiguousarray(num, dtype=np.complex128),
        np.ascontiguousarray(nodes, dtype=np.float64),
        np.ascontiguousarray(weights, dtype=np.float64),
    )


def edge_integrals(za, zb, w0, fc, num, nodes, weights, backend: str | None = None):
    fc, num, nodes, weights = _prep(fc, num, nodes, weights)
    za = np.ascontiguousarray(za, dtype=np.complex128)
    zb = np.ascontiguousarray(zb, dtype=np.complex128)
    w0 = np.ascontiguousarray(w0, dtype=np.complex128)
    if (backend or BACKEND) == "cython":
        if _compiled is None:
            raise RuntimeError("compiled kernels are not available")
        return _compiled.edge_integrals(za, zb, w0, fc, num, nodes, weights)
    return edge_integrals_numpy(za, zb, w0, fc, num, nodes, weights)


def path_integrals(za, zb, w_start, fc, num, nodes, weights, backend: str | None = None):
    fc, num, nodes, weights = _prep(fc, num, nodes, weights)
    za = np.ascontiguousarray(za, dtype=np.complex128)
    zb = np.ascontiguousarray(zb, dtype=np.complex128)
    if (backend or BACKEND) == "cython":
        if _compiled is None:
            raise RuntimeError("compiled kernels are not available")
        return _compiled.path_integrals(za, zb, complex(w_start), fc, num, nodes, weights)
    return path_integrals_numpy(za, zb, complex(w_start), fc, num, nodes, weights)
