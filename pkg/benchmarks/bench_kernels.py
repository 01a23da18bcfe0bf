"""Time the compiled quadrature kernel against the NumPy fallback.

    python benchmarks/bench_kernels.py [--edges 20000] [--nodes 16] [--repeat 5]
"""

import argparse
import time

import numpy as np

from subcanon.surface import kernels
from subcanon.surface.model import HyperellipticModel, SpinorData, differentials_from_spinor
from subcanon.surface.periods import gauss_legendre


def _best(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t)
    return min(times), out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--edges", type=int, default=20000)
    ap.add_argument("--path", type=int, default=2000, help="segments in the chained path")
    ap.add_argument("--nodes", type=int, default=16)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    model = HyperellipticModel.from_string("z^8 - 14*z^4 + 1")
    num = differentials_from_spinor(SpinorData("1", "z")).numerators()
    rng = np.random.default_rng(0)
    za = rng.uniform(-2, 2, args.edges) + 1j * rng.uniform(-2, 2, args.edges)
    zb = za + 0.05 * np.exp(2j * np.pi * rng.uniform(size=args.edges))
    w0 = model.w_principal(za)
    x, w = gauss_legendre(args.nodes)
    ring = 1.2 * np.exp(2j * np.pi * np.arange(args.path + 1) / args.path)

    print(f"compiled kernel available: {kernels.BACKEND == 'cython'}")
    rows = []
    for label, call in (
        ("edge_integrals", lambda b: kernels.edge_integrals(za, zb, w0, model.coeffs, num, x, w, b)),
        ("path_integrals", lambda b: kernels.path_integrals(ring[:-1], ring[1:], model.w_principal(ring[0]),
                                                            model.coeffs, num, x, w, b)),
    ):
        t_np, r_np = _best(lambda: call("numpy"), args.repeat)
        if kernels.BACKEND == "cython":
            t_cy, r_cy = _best(lambda: call("cython"), args.repeat)
            diff = float(np.abs(r_np[0] - r_cy[0]).max())
            rows.append((label, t_np, t_cy, t_np / t_cy, diff))
        else:
            rows.append((label, t_np, float("nan"), float("nan"), float("nan")))
    print(f"{'kernel':<16}{'numpy s':>12}{'cython s':>12}{'speedup':>10}{'max |diff|':>14}")
    for label, a, b, s, d in rows:
        print(f"{label:<16}{a:>12.4f}{b:>12.4f}{s:>10.1f}{d:>14.2e}")


if __name__ == "__main__":
    main()
