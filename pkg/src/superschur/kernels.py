"""Hot loops for filling enumeration.

Both tableau families used by the engine (supertableaux and ordered Young
tableaux) are fillings of a skew diagram where the value at a box is bounded
below by its left, upper and upper-left neighbours.  The bound contributed by
a neighbour holding ``r`` is ``r + step[r]`` with a per-letter step table.

Two interchangeable implementations produce identical arrays in identical
(row-major lexicographic) order:

* ``fill_backtrack``: iterative depth-first search, compiled with numba.
* ``fill_frontier``: breadth-first expansion using numpy repeats only.

``fillings`` picks the first when numba is active and the second otherwise.
"""

from __future__ import annotations

import numpy as np

from ._jit import JIT_ENABLED, njit
from .errors import TooLarge

DTYPE = np.int8
MAX_LETTERS = 120


@njit
def _backtrack(left, up, diag, row_step, col_step, diag_step, size, limit, out):
    nb = left.shape[0]
    cap = out.shape[0]
    if nb == 0:
        return 1
    cur = np.zeros(nb, dtype=np.int64)
    count = 0
    k = 0
    cur[0] = 0
    while k >= 0:
        # advance box k to its next candidate
        if cur[k] == 0:
            lo = 1
            j = left[k]
            if j >= 0:
                v = cur[j] + row_step[cur[j]]
                if v > lo:
                    lo = v
            j = up[k]
            if j >= 0:
                v = cur[j] + col_step[cur[j]]
                if v > lo:
                    lo = v
            j = diag[k]
            if j >= 0:
                v = cur[j] + diag_step
                if v > lo:
                    lo = v
            cur[k] = lo
        else:
            cur[k] += 1
        if cur[k] > size:
            cur[k] = 0
            k -= 1
            continue
        if k == nb - 1:
            if count < cap:
                for i in range(nb):
                    out[count, i] = cur[i]
            count += 1
            if count > limit:
                return count
        else:
            k += 1
            cur[k] = 0
    return count


def fill_backtrack(nbrs, row_step, col_step, diag_step, size, limit):
    """Depth-first enumeration; returns an (count, boxes) int8 array."""
    left, up, diag = nbrs
    empty = np.zeros((0, len(left)), dtype=DTYPE)
    total = _backtrack(left, up, diag, row_step, col_step, diag_step, size, limit, empty)
    if total > limit:
        raise TooLarge(f"more than {limit} fillings")
    out = np.zeros((total, len(left)), dtype=DTYPE)
    if total:
        _backtrack(left, up, diag, row_step, col_step, diag_step, size, limit, out)
    return out


def fill_frontier(nbrs, row_step, col_step, diag_step, size, limit):
    """Level-by-level expansion of partial fillings with numpy only.

    Children of each partial filling are emitted contiguously in increasing
    order, so the final rows come out in the same order as the depth-first
    search.  The guard trips as soon as any level would exceed ``limit``.
    """
    left, up, diag = nbrs
    nb = len(left)
    front = np.zeros((1, nb), dtype=DTYPE)
    rs = np.asarray(row_step, dtype=np.int64)
    cs = np.asarray(col_step, dtype=np.int64)
    for k in range(nb):
        lo = np.ones(len(front), dtype=np.int64)
        for j, step in ((left[k], rs), (up[k], cs)):
            if j >= 0:
                v = front[:, j].astype(np.int64)
                np.maximum(lo, v + step[v], out=lo)
        if diag[k] >= 0:
            np.maximum(lo, front[:, diag[k]].astype(np.int64) + diag_step, out=lo)
        counts = np.clip(size - lo + 1, 0, None)
        total = int(counts.sum())
        if total > limit:
            raise TooLarge(f"more than {limit} partial fillings")
        front = np.repeat(front, counts, axis=0)
        starts = np.repeat(lo, counts)
        # position of each child within its parent's block
        offsets = np.arange(total) - np.repeat(np.cumsum(counts) - counts, counts)
        front[:, k] = (starts + offsets).astype(DTYPE)
    return front


def fillings(nbrs, row_step, col_step, diag_step, size, limit):
    if size > MAX_LETTERS:
        raise ValueError(f"alphabets larger than {MAX_LETTERS} letters are not supported")
    args = (nbrs, np.asarray(row_step, dtype=np.int64), np.asarray(col_step, dtype=np.int64),
            int(diag_step), int(size), int(limit))
    if JIT_ENABLED:
        return fill_backtrack(*args)
    return fill_frontier(*args)
