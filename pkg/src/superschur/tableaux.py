"""Skew supertableaux, their enumeration, weights and the cyclic strip map."""

from __future__ import annotations

import builtins
import os
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterator, Sequence

import numpy as np

from . import kernels
from .alphabets import MarkedAlphabet
from .errors import (ForeignFamily, InvalidTableau, OutOfRangeLetter, SamePrimedness, SuperSchurError,
                     TooLarge)
from .polyring import A, XS, YS, Family, Polynomial, Variable, X, Y, expand_binomial_products, substitute
from .shapes import Box, Partition, SkewShape

DEFAULT_MAX_TABLEAUX = 10**7
ORACLE_LIMIT = 10**7


def default_limit() -> int:
    raw = os.environ.get("SUPERSCHUR_MAX_TABLEAUX")
    return int(raw) if raw else DEFAULT_MAX_TABLEAUX


@dataclass(frozen=True)
class SuperTableau:
    """A filling of ``shape`` by letters of ``alphabet``; entries in row-major box order."""

    shape: SkewShape
    alphabet: MarkedAlphabet
    entries: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(int(e) for e in self.entries))
        if len(self.entries) != len(self.shape.boxes):
            raise InvalidTableau(f"{len(self.entries)} entries for {len(self.shape.boxes)} boxes")
        for e in self.entries:
            if not 1 <= e <= self.alphabet.size:
                raise OutOfRangeLetter(f"entry {e} outside 1..{self.alphabet.size}")

    def __getitem__(self, b: Box) -> int:
        return self.entries[self.shape.boxes.index(b)]

    def as_dict(self) -> dict[Box, int]:
        return dict(zip(self.shape.boxes, self.entries))

    def is_valid(self) -> bool:
        return is_supertableau(self.shape, self.alphabet, self.entries)

    def __str__(self) -> str:
        a, shape = self.alphabet, self.shape
        it = iter(self.entries)
        lines = []
        for i in range(1, len(shape.lam) + 1):
            cells = ["*"] * shape.mu[i] + [a.letter(next(it)) for _ in range(shape.lam[i] - shape.mu[i])]
            lines.append(" ".join(cells))
        return "\n".join(lines)


def parse_tableau(rows: Sequence[str], alphabet: MarkedAlphabet) -> SuperTableau:
    """Inverse of ``str(SuperTableau)``: whitespace separated cells, ``*`` for inner boxes."""
    lam, mu, entries = [], [], []
    for line in rows:
        cells = line.split()
        stars = 0
        while stars < len(cells) and cells[stars] == "*":
            stars += 1
        for cell in cells[stars:]:
            primed = cell.endswith("'")
            try:
                r = int(cell.rstrip("'"))
            except ValueError:
                raise InvalidTableau(f"cannot read cell {cell!r}") from None
            if not 1 <= r <= alphabet.size:
                raise OutOfRangeLetter(f"entry {r} outside 1..{alphabet.size}")
            if primed != (r in alphabet.primed):
                raise InvalidTableau(f"cell {cell!r} disagrees with alphabet {alphabet}")
            entries.append(r)
        lam.append(len(cells))
        mu.append(stars)
    try:
        shape = SkewShape(Partition(tuple(lam)), Partition(tuple(x for x in mu if x)))
    except SuperSchurError as exc:
        raise InvalidTableau(f"rows do not form a skew shape: {exc}") from None
    return SuperTableau(shape, alphabet, tuple(entries))


def is_supertableau(shape: SkewShape, alphabet: MarkedAlphabet, entries: Sequence[int]) -> bool:
    """Check every pair of boxes sharing a row or a column."""
    cell = dict(zip(shape.boxes, entries))
    primed = alphabet.primed
    for b1, b2 in combinations(shape.boxes, 2):
        e1, e2 = cell[b1], cell[b2]
        if b1.row == b2.row:
            if e1 > e2 or (e1 == e2 and e1 in primed):
                return False
        elif b1.col == b2.col:
            if e1 > e2 or (e1 == e2 and e1 not in primed):
                return False
    return True


def neighbour_arrays(shape: SkewShape) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Indices of the left, upper and upper-left neighbour of each box (or -1)."""
    idx = shape.index()
    left = np.array([idx.get(Box(b.row, b.col - 1), -1) for b in shape.boxes], dtype=np.int64)
    up = np.array([idx.get(Box(b.row - 1, b.col), -1) for b in shape.boxes], dtype=np.int64)
    diag = np.array([idx.get(Box(b.row - 1, b.col - 1), -1) for b in shape.boxes], dtype=np.int64)
    return left, up, diag


def _steps(alphabet: MarkedAlphabet) -> tuple[np.ndarray, np.ndarray]:
    row = np.zeros(alphabet.size + 1, dtype=np.int64)
    col = np.zeros(alphabet.size + 1, dtype=np.int64)
    for r in range(1, alphabet.size + 1):
        if r in alphabet.primed:
            row[r] = 1
        else:
            col[r] = 1
    return row, col


def tableau_array(shape: SkewShape, alphabet: MarkedAlphabet, limit: int | None = None) -> np.ndarray:
    """All supertableaux as an int8 array, one row per tableau."""
    limit = default_limit() if limit is None else limit
    left, up, _ = neighbour_arrays(shape)
    none = np.full(len(left), -1, dtype=np.int64)
    row, col = _steps(alphabet)
    return kernels.fillings((left, up, none), row, col, 0, alphabet.size, limit)


def count_tableaux(shape: SkewShape, alphabet: MarkedAlphabet, limit: int | None = None) -> int:
    return len(tableau_array(shape, alphabet, limit))


def enumerate(shape: SkewShape, alphabet: MarkedAlphabet, limit: int | None = None) -> Iterator[SuperTableau]:
    for row in tableau_array(shape, alphabet, limit).tolist():
        yield SuperTableau(shape, alphabet, tuple(row))


def oracle_array(shape: SkewShape, alphabet: MarkedAlphabet) -> np.ndarray:
    """Brute force: every raw filling, filtered by the pairwise rules."""
    nb, size = len(shape.boxes), alphabet.size
    if size ** nb > ORACLE_LIMIT:
        raise TooLarge(f"{size}^{nb} raw fillings exceed {ORACLE_LIMIT}")
    if nb == 0:
        return np.zeros((1, 0), dtype=kernels.DTYPE)
    if size == 0:
        return np.zeros((0, nb), dtype=kernels.DTYPE)
    raw = np.indices((size,) * nb, dtype=kernels.DTYPE).reshape(nb, -1).T + 1
    primed = np.zeros(size + 1, dtype=bool)
    primed[list(alphabet.primed)] = True
    ok = np.ones(len(raw), dtype=bool)
    for (k1, b1), (k2, b2) in combinations(list(builtins.enumerate(shape.boxes)), 2):
        e1, e2 = raw[:, k1], raw[:, k2]
        if b1.row == b2.row:
            ok &= (e1 < e2) | ((e1 == e2) & ~primed[e1])
        elif b1.col == b2.col:
            ok &= (e1 < e2) | ((e1 == e2) & primed[e1])
    return raw[ok]


def enumerate_oracle(shape: SkewShape, alphabet: MarkedAlphabet) -> Iterator[SuperTableau]:
    for row in oracle_array(shape, alphabet).tolist():
        yield SuperTableau(shape, alphabet, tuple(row))


def weight_variable(alphabet: MarkedAlphabet, r: int, c: int) -> Variable:
    k = alphabet.rank(r)
    return Y(k, c) if r in alphabet.primed else X(k, c)


def weight9(t: SuperTableau) -> Polynomial:
    return Polynomial.monomial(weight_variable(t.alphabet, e, b.content)
                               for b, e in zip(t.shape.boxes, t.entries))


def code_table(shape: SkewShape, alphabet: MarkedAlphabet) -> np.ndarray:
    """``table[box, r]`` is the variable code of letter ``r`` placed in ``box``."""
    table = np.zeros((len(shape.boxes), alphabet.size + 1), dtype=np.int64)
    for i, b in builtins.enumerate(shape.boxes):
        for r in range(1, alphabet.size + 1):
            table[i, r] = weight_variable(alphabet, r, b.content).code
    return table


def monomials_of(arr: np.ndarray, table: np.ndarray) -> Counter:
    """Multiset of weight monomials for an array of fillings."""
    if arr.shape[1] == 0:
        return Counter({(): len(arr)})
    codes = table[np.arange(arr.shape[1]), arr.astype(np.int64)]
    codes.sort(axis=1)
    return Counter(map(tuple, codes.tolist()))


@lru_cache(maxsize=8192)
def _schur9(shape: SkewShape, alphabet: MarkedAlphabet, limit: int) -> Polynomial:
    arr = tableau_array(shape, alphabet, limit)
    return Polynomial._raw(dict(monomials_of(arr, code_table(shape, alphabet))))


def schur9(shape: SkewShape, alphabet: MarkedAlphabet, limit: int | None = None) -> Polynomial:
    """Sum of ninth-variation weights over all supertableaux of ``shape``."""
    return _schur9(shape, alphabet, default_limit() if limit is None else limit)


def _require_xy(p: Polynomial) -> None:
    foreign = p.families() - {Family.X, Family.Y}
    if foreign:
        raise ForeignFamily(f"expected only X and Y variables, found {sorted(f.name for f in foreign)}")


def specialize_first(p: Polynomial) -> Polynomial:
    _require_xy(p)
    return substitute(p, lambda v: XS(v.idx1) if v.family == Family.X else YS(v.idx1))


def specialize_sixth(p: Polynomial, alphabet: MarkedAlphabet) -> Polynomial:
    _require_xy(p)
    unprimed = alphabet.unprimed
    primed = sorted(alphabet.primed)

    def image(v: Variable):
        k, c = v.idx1, v.idx2
        if v.family == Family.X:
            return XS(k) + A(alphabet.sigma(unprimed[k - 1]) + c)
        return YS(k) - A(alphabet.sigma(primed[k - 1]) + c)

    return substitute(p, image)


def sixth_tables(shape: SkewShape, alphabet: MarkedAlphabet) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Per (box, letter): the xs/ys code, the a code and the sign of the a term."""
    nb, size = len(shape.boxes), alphabet.size
    first = np.zeros((nb, size + 1), dtype=np.int64)
    second = np.zeros((nb, size + 1), dtype=np.int64)
    sign = np.ones((nb, size + 1), dtype=np.int64)
    for i, b in builtins.enumerate(shape.boxes):
        for r in range(1, size + 1):
            k = alphabet.rank(r)
            second[i, r] = A(alphabet.sigma(r) + b.content).code
            if r in alphabet.primed:
                first[i, r] = YS(k).code
                sign[i, r] = -1
            else:
                first[i, r] = XS(k).code
    return first, second, sign


def expand_over(arr: np.ndarray, tables: tuple[np.ndarray, np.ndarray, np.ndarray]) -> Polynomial:
    """Sum over fillings of products of per-(box, letter) binomials."""
    cols = np.arange(arr.shape[1])
    idx = arr.astype(np.int64)
    first, second, sign = (t[cols, idx] for t in tables)
    return expand_binomial_products(first, second, sign)


@lru_cache(maxsize=4096)
def _schur6(shape: SkewShape, alphabet: MarkedAlphabet, limit: int) -> Polynomial:
    return expand_over(tableau_array(shape, alphabet, limit), sixth_tables(shape, alphabet))


def schur6(shape: SkewShape, alphabet: MarkedAlphabet, limit: int | None = None) -> Polynomial:
    """Factorial variation; equal to ``specialize_sixth(schur9(...))`` but expanded in bulk."""
    return _schur6(shape, alphabet, default_limit() if limit is None else limit)


def schur1(shape: SkewShape, m: int, n: int, limit: int | None = None) -> Polynomial:
    alphabet = MarkedAlphabet(m + n, frozenset(range(m + 1, m + n + 1)))
    return specialize_first(schur9(shape, alphabet, limit))


def weight6_factors(t: SuperTableau) -> list[Polynomial]:
    """The binomial contributed by each box, in row-major order."""
    a = t.alphabet
    out = []
    for b, r in zip(t.shape.boxes, t.entries):
        shift = A(a.sigma(r) + b.content)
        out.append(YS(a.rank(r)) - shift if r in a.primed else XS(a.rank(r)) + shift)
    return out


def weight6(t: SuperTableau) -> Polynomial:
    """Factorial weight of a single tableau, straight from the box-by-box rule."""
    out = Polynomial.const(1)
    for f in weight6_factors(t):
        out = out * f
    return out


def cyclic_shift_map(t: SuperTableau, r: int) -> SuperTableau:
    """Rotate the entries r, r+1 along each strip they occupy.

    The result lives over the alphabet with the primedness of r and r+1
    exchanged.  The letter formerly written r becomes r+1 and vice versa, so
    each of the two symbols keeps its primedness.  Within every connected
    block of such boxes (always a strip, ordered by content) the entries
    rotate by one box: toward the end of the strip when r is unprimed, toward
    the start when r is primed.  The two directions undo each other, so the
    map is an involution.
    """
    a = t.alphabet
    if not (1 <= r and r + 1 <= a.size):
        raise OutOfRangeLetter(f"letters {r}, {r + 1} not both in 1..{a.size}")
    if (r in a.primed) == (r + 1 in a.primed):
        raise SamePrimedness(f"{a.letter(r)} and {a.letter(r + 1)} have the same primedness")
    forward = r not in a.primed
    cell = t.as_dict()
    pair = {b for b, e in cell.items() if e in (r, r + 1)}
    new = dict(cell)
    seen: set[Box] = set()
    for start in sorted(pair):
        if start in seen:
            continue
        block, stack = [], [start]
        seen.add(start)
        while stack:
            b = stack.pop()
            block.append(b)
            for nb in (Box(b.row - 1, b.col), Box(b.row + 1, b.col),
                       Box(b.row, b.col - 1), Box(b.row, b.col + 1)):
                if nb in pair and nb not in seen:
                    seen.add(nb)
                    stack.append(nb)
        block.sort(key=lambda b: b.content)
        vals = [2 * r + 1 - cell[b] for b in block]
        vals = vals[-1:] + vals[:-1] if forward else vals[1:] + vals[:1]
        for b, v in zip(block, vals):
            new[b] = v
    return SuperTableau(t.shape, a.swap_primes(r), tuple(new[b] for b in t.shape.boxes))
