# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled quadrature kernels for sheet-tracked integrals of p(z) dz / w."""

import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt

cnp.import_array()

ctypedef double complex cplx


cdef inline cplx _horner(const cplx[:] c, cplx z) noexcept nogil:
    cdef Py_ssize_t k = c.shape[0] - 1
    cdef cplx acc = 0
    while k >= 0:
        acc = acc * z + c[k]
        k -= 1
    return acc


cdef inline cplx _csqrt(cplx v) noexcept nogil:
    # principal root; the smaller component comes from im / (2 * larger)
    cdef double r = sqrt(v.real * v.real + v.imag * v.imag)
    cdef double a, b
    if r == 0:
        return 0
    if v.real >= 0:
        a = sqrt(0.5 * (r + v.real))
        b = v.imag / (2 * a)
    else:
        b = sqrt(0.5 * (r - v.real))
        if v.imag < 0:
            b = -b
        a = v.imag / (2 * b)
    return a + 1j * b


cdef inline double _cabs(cplx v) noexcept nogil:
    return sqrt(v.real * v.real + v.imag * v.imag)


cdef inline cplx _follow(cplx w_prev, cplx fz, double *ratio) noexcept nogil:
    cdef cplx w = _csqrt(fz)
    cdef double d_same = _cabs(w - w_prev)
    cdef double d_flip = _cabs(w + w_prev)
    cdef double r
    if d_flip < d_same:
        w = -w
        r = d_flip / d_same if d_same > 0 else 0.0
    else:
        r = d_same / d_flip if d_flip > 0 else 0.0
    if r > ratio[0]:
        ratio[0] = r
    return w


cdef void _segment(cplx za, cplx zb, cplx w0,
                   const cplx[:] fc, const cplx[:, :] num,
                   const double[:] nodes, const double[:] weights,
                   cplx[:] out, cplx *w_end, double *ratio) noexcept nogil:
    cdef Py_ssize_t k, j
    cdef Py_ssize_t m = num.shape[0]
    cdef Py_ssize_t n = nodes.shape[0]
    cdef cplx half = 0.5 * (zb - za)
    cdef cplx mid = 0.5 * (zb + za)
    cdef cplx z, w = w0, p
    cdef Py_ssize_t deg
    for j in range(m):
        out[j] = 0
    for k in range(n):
        z = mid + half * nodes[k]
        w = _follow(w, _horner(fc, z), ratio)
        for j in range(m):
            p = 0
            deg = num.shape[1] - 1
            while deg >= 0:
                p = p * z + num[j, deg]
                deg -= 1
            out[j] = out[j] + weights[k] * p / w
    for j in range(m):
        out[j] = out[j] * half
    w_end[0] = _follow(w, _horner(fc, zb), ratio)


def path_integrals(cplx[:] za, cplx[:] zb, cplx w_start,
                   cplx[:] fc, cplx[:, :] num,
                   double[:] nodes, double[:] weights):
    """Integrate along consecutive segments, carrying the sheet across them."""
    cdef Py_ssize_t s, nseg = za.shape[0]
    cdef Py_ssize_t m = num.shape[0]
    res = np.zeros((nseg, m), dtype=np.complex128)
    wend = np.zeros(nseg, dtype=np.complex128)
    cdef cplx[:, :] rv = res
    cdef cplx[:] wv = wend
    cdef cplx w = w_start
    cdef double ratio = 0.0
    with nogil:
        for s in range(nseg):
            _segment(za[s], zb[s], w, fc, num, nodes, weights, rv[s], &w, &ratio)
            wv[s] = w
    return res, wend, ratio


def edge_integrals(cplx[:] za, cplx[:] zb, cplx[:] w0,
                   cplx[:] fc, cplx[:, :] num,
                   double[:] nodes, double[:] weights):
    """Integrate independent segments, each starting on its own sheet."""
    cdef Py_ssize_t s, nseg = za.shape[0]
    cdef Py_ssize_t m = num.shape[0]
    res = np.zeros((nseg, m), dtype=np.complex128)
    wend = np.zeros(nseg, dtype=np.complex128)
    ratios = np.zeros(nseg, dtype=np.float64)
    cdef cplx[:, :] rv = res
    cdef cplx[:] wv = wend
    cdef double[:] rr = ratios
    cdef cplx w
    cdef double ratio
    with nogil:
        for s in range(nseg):
            ratio = 0.0
            _segment(za[s], zb[s], w0[s], fc, num, nodes, weights, rv[s], &w, &ratio)
            wv[s] = w
            rr[s] = ratio
    return res, wend, ratios
