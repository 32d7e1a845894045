"""Marked alphabets: the letters 1..size with a chosen subset carrying primes."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable

from .errors import OutOfRangeLetter


@dataclass(frozen=True)
class MarkedAlphabet:
    """Letters ``1..size``; those in ``primed`` form N, the rest form M.

    ``index[r]`` is the rank of ``r`` inside its own class (k for M, l for N)
    and ``sigma_table[r]`` caches the sigma statistic.  Both tables are
    1-based with a dummy slot at position 0.
    """

    size: int
    primed: frozenset[int] = frozenset()
    index: tuple[int, ...] = field(init=False, repr=False, compare=False)
    sigma_table: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        size = int(self.size)
        if size < 0:
            raise OutOfRangeLetter(f"alphabet size must be nonnegative, got {size}")
        primed = frozenset(int(r) for r in self.primed)
        bad = sorted(r for r in primed if not 1 <= r <= size)
        if bad:
            raise OutOfRangeLetter(f"primed letters {bad} outside 1..{size}")
        object.__setattr__(self, "size", size)
        object.__setattr__(self, "primed", primed)
        index, sigma = [0], [0]
        nm = nn = 0
        for r in range(1, size + 1):
            if r in primed:
                nn += 1
                index.append(nn)
                sigma.append(nm - nn + 1)
            else:
                nm += 1
                index.append(nm)
                sigma.append(nm - nn)
        object.__setattr__(self, "index", tuple(index))
        object.__setattr__(self, "sigma_table", tuple(sigma))

    @property
    def m(self) -> int:
        return self.size - len(self.primed)

    @property
    def n(self) -> int:
        return len(self.primed)

    @property
    def unprimed(self) -> tuple[int, ...]:
        return tuple(r for r in range(1, self.size + 1) if r not in self.primed)

    def is_primed(self, r: int) -> bool:
        return r in self.primed

    def _check(self, r: int) -> None:
        if not 1 <= r <= self.size:
            raise OutOfRangeLetter(f"letter {r} outside 1..{self.size}")

    def rank(self, r: int) -> int:
        """k(r) for unprimed letters, l(r) for primed ones."""
        self._check(r)
        return self.index[r]

    def sigma(self, r: int) -> int:
        self._check(r)
        return self.sigma_table[r]

    def letter(self, r: int) -> str:
        return f"{r}'" if r in self.primed else str(r)

    def swap_primes(self, r: int) -> "MarkedAlphabet":
        """The alphabet with the primedness of ``r`` and ``r+1`` exchanged."""
        self._check(r)
        self._check(r + 1)
        primed = set(self.primed)
        a, b = r in primed, r + 1 in primed
        primed.discard(r)
        primed.discard(r + 1)
        if a:
            primed.add(r + 1)
        if b:
            primed.add(r)
        return MarkedAlphabet(self.size, frozenset(primed))

    def to_json(self) -> dict:
        return {"size": self.size, "primed": sorted(self.primed)}

    @classmethod
    def from_json(cls, obj: dict) -> "MarkedAlphabet":
        return cls(int(obj["size"]), frozenset(obj.get("primed", ())))

    def __str__(self) -> str:
        return "{" + "<".join(self.letter(r) for r in range(1, self.size + 1)) + "}"


def make_alphabet(size: int, primed: Iterable[int] = ()) -> MarkedAlphabet:
    return MarkedAlphabet(size, frozenset(primed))


def sigma(a: MarkedAlphabet, r: int) -> int:
    return a.sigma(r)


def enumerate_splits(m: int, n: int) -> list[MarkedAlphabet]:
    """All alphabets with m unprimed and n primed letters, ordered by primed set."""
    size = m + n
    return [MarkedAlphabet(size, frozenset(c)) for c in combinations(range(1, size + 1), n)]


def all_alphabets(max_size: int, min_size: int = 1) -> list[MarkedAlphabet]:
    """Every marked alphabet with between ``min_size`` and ``max_size`` letters."""
    out = []
    for size in range(min_size, max_size + 1):
        for n in range(size + 1):
            out.extend(enumerate_splits(size - n, n))
    return out
