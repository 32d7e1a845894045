"""Time the filling kernels against each other.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--python]

Compares the numba depth-first kernel, the numpy frontier kernel and
(with --python) the uncompiled depth-first loop on a few supertableau
workloads.  Every backend must return the same array.
"""

import argparse
import time

import numpy as np

from superschur import kernels
from superschur.alphabets import make_alphabet
from superschur.shapes import skew_shape
from superschur.tableaux import _steps, neighbour_arrays

WORKLOADS = [
    ("(3,2)/(1), 3 letters", skew_shape([3, 2], [1]), make_alphabet(3, {2})),
    ("(3,3,2), 4 letters", skew_shape([3, 3, 2]), make_alphabet(4, {2, 3})),
    ("(4,3,2,1), 5 letters", skew_shape([4, 3, 2, 1]), make_alphabet(5, {1, 4})),
    ("(5,4,3)/(2,1), 6 letters", skew_shape([5, 4, 3], [2, 1]), make_alphabet(6, {2, 3, 5})),
    ("(4,4,4,3), 6 letters", skew_shape([4, 4, 4, 3]), make_alphabet(6, {1, 2, 6})),
]


def kernel_args(shape, alphabet, limit):
    left, up, _ = neighbour_arrays(shape)
    row, col = _steps(alphabet)
    return (left, up, np.full(len(left), -1, dtype=np.int64)), row, col, 0, alphabet.size, limit


def python_backtrack(nbrs, row_step, col_step, diag_step, size, limit):
    """Same two-pass driver as the compiled kernel, on the interpreted loop."""
    loop = getattr(kernels._backtrack, "py_func", kernels._backtrack)
    left, up, diag = nbrs
    total = loop(left, up, diag, row_step, col_step, diag_step, size, limit,
                 np.zeros((0, len(left)), dtype=kernels.DTYPE))
    out = np.zeros((total, len(left)), dtype=kernels.DTYPE)
    loop(left, up, diag, row_step, col_step, diag_step, size, limit, out)
    return out


def best_of(fn, args, repeat):
    times, result = [], None
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn(*args)
        times.append(time.perf_counter() - start)
    return min(times), result


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--python", action="store_true", help="also time the interpreted depth-first loop")
    ap.add_argument("--limit", type=int, default=10**7)
    args = ap.parse_args(argv)

    backends = [("numba", kernels.fill_backtrack), ("numpy", kernels.fill_frontier)]
    if args.python:
        backends.append(("python", python_backtrack))
    if not kernels.JIT_ENABLED:
        print("numba disabled (SUPERSCHUR_JIT=0): the 'numba' column runs uncompiled")
    # compile once outside the timings
    kernels.fill_backtrack(*kernel_args(*WORKLOADS[0][1:], args.limit))

    header = f"{'workload':28s} {'tableaux':>10s}" + "".join(f" {name + ' ms':>12s}" for name, _ in backends)
    print(header)
    print("-" * len(header))
    for label, shape, alphabet in WORKLOADS:
        kargs = kernel_args(shape, alphabet, args.limit)
        row, reference = [], None
        for name, fn in backends:
            repeat = 1 if name == "python" else args.repeat
            seconds, out = best_of(fn, kargs, repeat)
            if reference is None:
                reference = out
            elif not np.array_equal(out, reference):
                raise SystemExit(f"{name} disagrees with numba on {label}")
            row.append(seconds * 1000)
        print(f"{label:28s} {len(reference):>10d}" + "".join(f" {ms:>12.2f}" for ms in row))


if __name__ == "__main__":
    main()
