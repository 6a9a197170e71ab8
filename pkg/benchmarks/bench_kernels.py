"""Time the compiled kernels against the numpy fallback.

Run with ``python3 benchmarks/bench_kernels.py``.
"""
from __future__ import annotations

import argparse
import timeit

import numpy as np

from hypgraft import _kernels_py

try:
    from hypgraft import _ckernels
except ImportError:
    _ckernels = None


def _inputs(rng, n_points: int, n_verts: int, n_group: int):
    t = np.linspace(0, 2 * np.pi, n_verts, endpoint=False)
    verts = np.c_[np.cos(t), np.sin(t)] * 0.9
    values = np.c_[np.cos(t + 0.3), np.sin(t + 0.3)] * 0.8
    r = 0.8 * np.sqrt(rng.uniform(size=n_points))
    a = rng.uniform(0, 2 * np.pi, n_points)
    points = np.c_[r * np.cos(a), r * np.sin(a)]
    ga = rng.normal(size=(n_group, 4))
    gb = ga[rng.permutation(n_group)] + 1e-3 * rng.normal(size=(n_group, 4))
    return (points, verts, values), (ga, gb)


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--points", type=int, default=4000)
    ap.add_argument("--verts", type=int, default=200)
    ap.add_argument("--group", type=int, default=5000)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    rng = np.random.default_rng(0)
    mvc_args, hd_args = _inputs(rng, args.points, args.verts, args.group)

    backends = {"python": _kernels_py}
    if _ckernels is not None:
        backends["cython"] = _ckernels
    else:
        print("compiled extension not built; timing the numpy fallback only")

    print(f"{'kernel':<20}{'backend':<10}{'best (s)':>10}")
    for name, call in (
        ("mvc_map", lambda m: m.mvc_map(*mvc_args)),
        ("directed_hausdorff", lambda m: m.directed_hausdorff(*hd_args)),
    ):
        ref = None
        for label, mod in backends.items():
            best = min(timeit.repeat(lambda: call(mod), number=1, repeat=args.repeat))
            out = np.asarray(call(mod))
            agree = "" if ref is None else f"  max diff {np.max(np.abs(out - ref)):.1e}"
            ref = out if ref is None else ref
            print(f"{name:<20}{label:<10}{best:>10.4f}{agree}")


if __name__ == "__main__":
    main()
