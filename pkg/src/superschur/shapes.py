"""Partitions, skew Young diagrams, boxes and contents."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .errors import ContainmentViolation, EmptyShape, InvalidPartition


@dataclass(frozen=True)
class Partition:
    parts: tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if any(p <= 0 for p in parts):
            raise InvalidPartition(f"parts must be positive: {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise InvalidPartition(f"parts must weakly decrease: {parts}")
        object.__setattr__(self, "parts", parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __getitem__(self, i: int) -> int:
        """1-based part lookup, zero past the end."""
        return self.parts[i - 1] if 1 <= i <= len(self.parts) else 0

    @property
    def size(self) -> int:
        return sum(self.parts)

    def contains(self, other: "Partition") -> bool:
        return len(other) <= len(self) and all(other[i] <= self[i] for i in range(1, len(other) + 1))

    def conjugate(self) -> "Partition":
        if not self.parts:
            return Partition()
        return Partition(tuple(sum(1 for p in self.parts if p >= j) for j in range(1, self.parts[0] + 1)))

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.parts)) + ")"


@dataclass(frozen=True, order=True)
class Box:
    row: int
    col: int

    @property
    def content(self) -> int:
        return self.col - self.row


def content(b: Box) -> int:
    return b.col - b.row


def _as_partition(p) -> Partition:
    return p if isinstance(p, Partition) else Partition(tuple(p))


@dataclass(frozen=True)
class SkewShape:
    """The diagram of ``lam`` with the boxes of ``mu`` removed.

    Boxes keep the row/column labels of the outer diagram and are stored in
    row-major order.
    """

    lam: Partition
    mu: Partition = Partition()
    boxes: tuple[Box, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        lam, mu = _as_partition(self.lam), _as_partition(self.mu)
        if not lam.contains(mu):
            raise ContainmentViolation(f"{mu} is not contained in {lam}")
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "mu", mu)
        boxes = tuple(
            Box(i, j)
            for i in range(1, len(lam) + 1)
            for j in range(mu[i] + 1, lam[i] + 1)
        )
        object.__setattr__(self, "boxes", boxes)

    def __len__(self) -> int:
        return len(self.boxes)

    @property
    def size(self) -> int:
        return len(self.boxes)

    @property
    def contents(self) -> tuple[int, ...]:
        return tuple(b.col - b.row for b in self.boxes)

    def content_range(self) -> tuple[int, int]:
        if not self.boxes:
            raise EmptyShape("the empty shape has no contents")
        cs = self.contents
        return min(cs), max(cs)

    def index(self) -> dict[Box, int]:
        return {b: k for k, b in enumerate(self.boxes)}

    def __contains__(self, b: Box) -> bool:
        return 1 <= b.row <= len(self.lam) and self.mu[b.row] < b.col <= self.lam[b.row]

    def components(self) -> list[list[Box]]:
        """Edgewise connected components, each in row-major order."""
        seen: set[Box] = set()
        comps = []
        for start in self.boxes:
            if start in seen:
                continue
            comp, stack = [], [start]
            seen.add(start)
            while stack:
                b = stack.pop()
                comp.append(b)
                for nb in (Box(b.row - 1, b.col), Box(b.row + 1, b.col),
                           Box(b.row, b.col - 1), Box(b.row, b.col + 1)):
                    if nb not in seen and nb in self:
                        seen.add(nb)
                        stack.append(nb)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return len(self.components()) == 1

    def to_json(self) -> dict:
        return {"lambda": list(self.lam.parts), "mu": list(self.mu.parts)}

    @classmethod
    def from_json(cls, obj: dict) -> "SkewShape":
        return cls(Partition(tuple(obj["lambda"])), Partition(tuple(obj.get("mu", ()))))

    def __str__(self) -> str:
        if not self.mu.parts:
            return str(self.lam)
        return f"{self.lam}/{self.mu}"


def skew_shape(lam: Iterable[int], mu: Iterable[int] = ()) -> SkewShape:
    return SkewShape(Partition(tuple(lam)), Partition(tuple(mu)))


def content_range(s: SkewShape) -> tuple[int, int]:
    return s.content_range()


def _partitions(total_max: int, max_part: int, max_len: int) -> Iterator[tuple[int, ...]]:
    def rec(prefix, cap, left):
        yield tuple(prefix)
        if len(prefix) == max_len:
            return
        for p in range(min(cap, left), 0, -1):
            prefix.append(p)
            yield from rec(prefix, p, left - p)
            prefix.pop()

    yield from rec([], max_part, total_max)


def _inner(lam: tuple[int, ...], budget: int) -> Iterator[tuple[int, ...]]:
    """Inner partitions leaving every row of ``lam`` nonempty, within a box budget."""

    def rec(i, prev, left, acc):
        if i == len(lam):
            yield tuple(acc)
            return
        for p in range(min(prev, lam[i] - 1), -1, -1):
            used = lam[i] - p
            if used > left:
                break
            acc.append(p)
            yield from rec(i + 1, p, left - used, acc)
            acc.pop()

    yield from rec(0, lam[0], budget, [])


def skew_shapes(max_boxes: int, min_boxes: int = 0, connected: bool | None = None) -> Iterator[SkewShape]:
    """Every skew shape with ``min_boxes..max_boxes`` boxes, up to translation.

    Shapes are normalised: no empty rows and no empty columns, so each shape
    is produced exactly once.  The empty shape is yielded first when
    ``min_boxes`` is 0.  ``connected=True`` keeps only edgewise connected
    shapes, ``False`` only disconnected ones.
    """
    if min_boxes <= 0 and connected is not True:
        yield SkewShape(Partition(), Partition())
    found = []
    # a normalised shape with N boxes has at most N rows and N columns
    for lam in _partitions(max_boxes * max_boxes, max_boxes, max_boxes):
        if not lam:
            continue
        for mu in _inner(lam, max_boxes):
            n = sum(lam) - sum(mu)
            if n < max(1, min_boxes):
                continue
            # column j is nonempty iff some row covers it
            if any(not any(mu[i] < j <= lam[i] for i in range(len(lam))) for j in range(1, lam[0] + 1)):
                continue
            s = SkewShape(Partition(lam), Partition(tuple(p for p in mu if p)))
            if connected is not None and s.is_connected() != connected:
                continue
            found.append(s)
    found.sort(key=lambda s: (s.size, s.lam.parts, s.mu.parts))
    yield from found
