"""Compiled vs pure-Python kernels on the Horn13 and Series12 routes.

    python benchmarks/bench_kernels.py [--repeat N]

Prints the best-of-N wall time for each backend, the speedup, and checks
that both backends return the same value bit for bit.
"""

import argparse
import sys
import timeit

from zonalfn import _backend
from zonalfn.kernel import GroupSignature, principal_sigma
from zonalfn.zonal import zonal_horn, zonal_series12

CASES = [
    ("horn13", (6, 4), 0.8),
    ("horn13", (6, 4), 1.5),
    ("horn13", (6, 4), 2.5),
    ("horn13", (6, 4), 3.0),
    ("series12", (6, 4), 1.5),
    ("series12", (6, 4), 2.5),
    ("series12", (3, 2), 3.0),
]


def evaluate(route, pq, alpha):
    sig = GroupSignature(*pq)
    rep = principal_sigma(sig, 1.3)
    if route == "horn13":
        return zonal_horn("13", sig, rep, alpha, tol=1e-12)
    return zonal_series12(sig, rep, alpha, tol=1e-12)


def timed(backend, route, pq, alpha, repeat):
    with _backend.use_backend(backend):
        res = evaluate(route, pq, alpha)
        best = min(timeit.repeat(lambda: evaluate(route, pq, alpha), number=1, repeat=repeat))
    return res, best


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    if not _backend.HAVE_COMPILED:
        print("compiled kernels are not built; run `pip install -e . --no-build-isolation`")
        return 1
    print(f"{'route':<9} {'(p,q)':<7} {'alpha':>5} {'work':>6} {'compiled s':>11} {'python s':>10} {'speedup':>8}  same")
    mismatches = 0
    for route, pq, alpha in CASES:
        rc, tc = timed("compiled", route, pq, alpha, args.repeat)
        rp, tp = timed("python", route, pq, alpha, args.repeat)
        same = rc.value == rp.value and rc.work == rp.work
        mismatches += not same
        print(f"{route:<9} {str(pq):<7} {alpha:>5.2f} {rc.work:>6} {tc:>11.4f} {tp:>10.4f} {tp / tc:>7.1f}x  {'yes' if same else 'NO'}")
    return 1 if mismatches else 0


if __name__ == "__main__":
    sys.exit(main())
