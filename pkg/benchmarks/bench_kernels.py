"""Compare the numba and numpy float kernels.

Usage: python3 benchmarks/bench_kernels.py [--repeat N] [--grid R STEP]
"""
from __future__ import annotations

import argparse
import timeit

import numpy as np

from krel import _kernels
from krel.green import scan_grid


def _cases(rng):
    for n in (2, 4, 6):
        f = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        fp = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        yield f"pencil square n={n}", lambda w, f=f, fp=fp: _kernels.pencil_abs_det(f, fp, ZS, w)
    f = rng.normal(size=(6, 3)) + 0j
    fp = rng.normal(size=(6, 3)) + 0j
    yield "pencil tall 6x3", lambda w: _kernels.pencil_abs_det(f, fp, ZS, w)
    for p, m in ((4, 2), (16, 3)):
        mats = rng.normal(size=(p, m, m)) + 1j * rng.normal(size=(p, m, m))
        zs = rng.normal(size=p) + 1j * (1 + rng.random(p))
        gram = np.eye(m, dtype=complex)
        yield f"kernel p={p} m={m}", lambda w, a=mats, z=zs, g=gram: _kernels.nevanlinna_kernel(a, z, g, w)


def main(argv=None) -> None:
    global ZS
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=200)
    ap.add_argument("--grid", type=float, nargs=2, default=(3.0, 0.25), metavar=("RADIUS", "STEP"))
    args = ap.parse_args(argv)
    ZS = scan_grid(*args.grid)
    have_numba = _kernels.numba_available()
    print(f"grid points: {ZS.size}; numba available: {have_numba}; default backend: {_kernels.backend()}")
    print(f"{'case':<22}{'numpy ms':>12}{'numba ms':>12}{'speedup':>10}")
    rng = np.random.default_rng(0)
    for name, fn in _cases(rng):
        t_np = min(timeit.repeat(lambda: fn("numpy"), number=1, repeat=args.repeat)) * 1e3
        if have_numba:
            fn("numba")  # compile outside the timing
            t_nb = min(timeit.repeat(lambda: fn("numba"), number=1, repeat=args.repeat)) * 1e3
            np.testing.assert_allclose(fn("numba"), fn("numpy"), rtol=1e-8, atol=1e-10)
            print(f"{name:<22}{t_np:>12.3f}{t_nb:>12.3f}{t_np / t_nb:>10.2f}")
        else:
            print(f"{name:<22}{t_np:>12.3f}{'n/a':>12}{'':>10}")


ZS = None

if __name__ == "__main__":
    main()
