"""Compare the compiled and pure-Python kernels.

    python3 benchmarks/bench_kernels.py --r 2 --n 7 --repeat 3

Times ``u_sum`` and ``tree_sum`` over every configuration of class
``(r, n)``, checks that both backends return identical values, and prints
the speedup.
"""
import argparse
import sys
import timeit

from dtwall import _kernels_py
from dtwall.combinatorics import enumerate_configs

try:
    from dtwall import _kernels as _kernels_c
except ImportError:
    _kernels_c = None


def workload(r, n):
    configs = list(enumerate_configs(r, n))
    coeff_args = [(tuple(w if b else 0 for b, w in c.vertices),
                   tuple(0 if b else w for b, w in c.vertices)) for c in configs]
    tree_args = [(c.colors, c.weights) for c in configs]
    return coeff_args, tree_args


def run_u(k, coeff_args):
    return [k.u_sum(rs, ns, 0) for rs, ns in coeff_args]


def run_trees(k, tree_args):
    return [k.tree_sum(cs, ws) for cs, ws in tree_args]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__,
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--r", type=int, default=2)
    ap.add_argument("--n", type=int, default=7)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    if _kernels_c is None:
        print("compiled kernels not built; nothing to compare")
        return 1

    coeff_args, tree_args = workload(args.r, args.n)
    print(f"class ({args.r}, {args.n}): {len(coeff_args)} configurations")
    for name, fn, data in (("u_sum", run_u, coeff_args), ("tree_sum", run_trees, tree_args)):
        assert fn(_kernels_c, data) == fn(_kernels_py, data), name
        times = {}
        for label, k in (("python", _kernels_py), ("cython", _kernels_c)):
            times[label] = min(timeit.repeat(lambda: fn(k, data), number=1,
                                             repeat=args.repeat))
        print(f"{name:9s} python {times['python']:8.4f}s  cython {times['cython']:8.4f}s"
              f"  speedup {times['python'] / times['cython']:6.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
