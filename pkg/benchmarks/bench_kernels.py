"""Compare the compiled kernels with the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat 3] [--quick]

Each case runs on identical inputs for both backends and the results are
checked for equality before timings are reported.
"""

import argparse
import time

from qspace import _kernels_py
from qspace import subspace as sp
from qspace.family import build_F_X_k
from qspace.gfq import field_new

try:
    from qspace import _kernels as compiled
except ImportError:
    compiled = None


def fx_masks(n, k, m, q=2):
    x = sp.coordinate(field_new(q), n, range(m))
    return build_F_X_k(x, k).masks


def cases(quick):
    f2 = field_new(2)
    fam7 = fx_masks(7, 3, 3)
    fam8 = fx_masks(8, 3, 3)
    wide = fx_masks(7, 4, 4)[:100]  # 3-wise 1-intersecting
    lines = [s.mask for s in sp.enumerate_subspaces(f2, 6, 3)]
    hyper = [s.mask for s in sp.subspaces_of(sp.coordinate(f2, 7, range(4)), 3)]
    out = [
        (f"simplices r=2, |F|={len(fam7)}", "count_simplices", (fam7, 2, 2, 0, len(fam7), False)),
        (f"simplices r=3, |F|={len(wide)}", "count_simplices", (wide, 3, 2, 0, len(wide), False)),
        ("simplices r=3, first 90 members, all subsets", "count_simplices", (fam7[:90], 3, 2, 0, 90, True)),
        (f"adjacency, {len(lines)} vertices", "adjacency", (lines, 2)),
        (f"intersecting check r=3, |F|={len(wide)}", "all_intersecting", (wide, 3, 2)),
        (f"ordered sequences len 4 over {len(hyper)}", "count_sequences", (hyper, 4, 2)),
    ]
    if not quick:
        out.insert(1, (f"simplices r=2, |F|={len(fam8)}", "count_simplices", (fam8, 2, 2, 0, len(fam8), False)))
    return out


def best_time(fn, args, repeat):
    best, result = None, None
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn(*args)
        elapsed = time.perf_counter() - start
        best = elapsed if best is None else min(best, elapsed)
    return best, result


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--quick", action="store_true", help="skip the largest case")
    args = parser.parse_args()
    if compiled is None:
        raise SystemExit("compiled kernels not built; run `pip install -e . --no-build-isolation` first")

    print(f"{'case':48s} {'python s':>10s} {'cython s':>10s} {'speedup':>8s}")
    for label, name, fargs in cases(args.quick):
        py_t, py_r = best_time(getattr(_kernels_py, name), fargs, args.repeat)
        cy_t, cy_r = best_time(getattr(compiled, name), fargs, args.repeat)
        if py_r != cy_r:
            raise SystemExit(f"backends disagree on {label}: {py_r!r} vs {cy_r!r}")
        print(f"{label:48s} {py_t:10.4f} {cy_t:10.4f} {py_t / cy_t:7.1f}x")


if __name__ == "__main__":
    main()
