"""Independent reference computations used by the tests.

Nothing here calls the routines it is used to check.
"""

from __future__ import annotations

from itertools import combinations

import numpy as np
from scipy.integrate import solve_ivp


def ode_cycle_integrals(f_coeffs, numerators, vertices, w0, rtol=1e-13, atol=1e-15):
    """Integrate p_k dz / w along a polyline by solving an ODE for w itself.

    Along z(t), w' = f'(z) z' / (2 w) continues the square root analytically,
    so no branch choice is ever made; the integrals ride along as extra
    components.  Returns (integrals, w at the end).
    """
    f = np.polynomial.Polynomial(np.asarray(f_coeffs, dtype=complex))
    df = f.deriv()
    ps = [np.polynomial.Polynomial(np.asarray(row, dtype=complex)) for row in numerators]
    w = complex(w0)
    acc = np.zeros(len(ps), dtype=complex)
    for a, b in zip(vertices[:-1], vertices[1:]):
        dz = b - a

        def rhs(t, y, a=a, dz=dz):
            z = a + t * dz
            wv = y[0] + 1j * y[1]
            dw = df(z) * dz / (2 * wv)
            out = [dw.real, dw.imag]
            for p in ps:
                v = p(z) * dz / wv
                out += [v.real, v.imag]
            return out

        y0 = [w.real, w.imag] + [0.0] * (2 * len(ps))
        sol = solve_ivp(rhs, (0.0, 1.0), y0, method="DOP853", rtol=rtol, atol=atol)
        y = sol.y[:, -1]
        w = y[0] + 1j * y[1]
        acc += np.array([y[2 + 2 * k] + 1j * y[3 + 2 * k] for k in range(len(ps))])
    return acc, w


def vanishing_sequences(d: int, r: int):
    return list(combinations(range(d + 1), r + 1))


def classify_by_definition(d: int, r: int, a1, a2) -> str:
    """Limit condition at a node: a1_i + a2_{r-i} >= d for all i; refined if all equal."""
    ok = True
    tight = True
    for i in range(r + 1):
        s = a1[i] + a2[r - i]
        ok = ok and s >= d
        tight = tight and s == d
    if not ok:
        return "not_limit"
    return "refined" if tight else "crude"


def torsion_order_bruteforce(u, v) -> int:
    """Smallest n >= 1 with n*u and n*v both integers."""
    n = 1
    while (n * u).denominator != 1 or (n * v).denominator != 1:
        n += 1
    return n


def monomial_pole_orders(g: int, n: int) -> int:
    """Count z^i w^e (e in {0, 1}) with pole order at infinity at most n.

    On y^2 = (degree 2g+1), z has a pole of order 2 and w of order 2g+1.
    """
    count = 0
    for e in (0, 1):
        i = 0
        while 2 * i + e * (2 * g + 1) <= n:
            count += 1
            i += 1
    return count
