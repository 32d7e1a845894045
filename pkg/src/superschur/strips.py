"""Cutting strips, outside decompositions, hash products and shift parameters."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .errors import ContentMismatch, DisconnectedShape, EmptyShape, NotProper
from .shapes import Box, Partition, SkewShape

LEFT, BELOW = "L", "B"


@dataclass(frozen=True)
class CuttingStrip:
    """A strip with one box per content ``lo..hi``.

    ``below`` holds the contents c in (lo, hi] whose box of content c-1 sits
    directly underneath; every other c in that range has c-1 to its left.
    """

    lo: int
    hi: int
    below: frozenset[int] = frozenset()

    def __post_init__(self):
        below = frozenset(int(c) for c in self.below)
        if self.hi < self.lo:
            raise ValueError(f"empty content range [{self.lo}, {self.hi}]")
        bad = sorted(c for c in below if not self.lo < c <= self.hi)
        if bad:
            raise ValueError(f"below contents {bad} outside ({self.lo}, {self.hi}]")
        object.__setattr__(self, "below", below)

    @property
    def left(self) -> frozenset[int]:
        return frozenset(range(self.lo + 1, self.hi + 1)) - self.below

    def label(self, c: int) -> str:
        if not self.lo < c <= self.hi:
            raise ValueError(f"content {c} carries no label in ({self.lo}, {self.hi}]")
        return BELOW if c in self.below else LEFT

    def profile(self, a: int | None = None, d: int | None = None) -> str:
        a = self.lo if a is None else a
        d = self.hi if d is None else d
        return "".join(self.label(c) for c in range(a + 1, d + 1))

    def to_json(self) -> dict:
        return {"range": [self.lo, self.hi], "below": sorted(self.below)}

    @classmethod
    def from_json(cls, obj: dict) -> "CuttingStrip":
        lo, hi = (int(x) for x in obj["range"])
        # the minimum content carries no label, so listing it is harmless
        below = {int(c) for c in obj.get("below", ())} - {lo}
        return cls(lo, hi, frozenset(below))

    def __str__(self) -> str:
        return f"[{self.lo},{self.hi}] {self.profile() or '-'}"


@dataclass(frozen=True)
class Strip:
    boxes: tuple[Box, ...]

    @property
    def a(self) -> int:
        return self.boxes[0].content

    @property
    def b(self) -> int:
        return self.boxes[-1].content

    def profile(self) -> str:
        out = []
        for prev, cur in zip(self.boxes, self.boxes[1:]):
            out.append(LEFT if prev.row == cur.row else BELOW)
        return "".join(out)

    def __len__(self) -> int:
        return len(self.boxes)


@dataclass(frozen=True)
class OutsideDecomposition:
    shape: SkewShape
    phi: CuttingStrip
    strips: tuple[Strip, ...]

    def __len__(self) -> int:
        return len(self.strips)

    def ranges(self) -> list[tuple[int, int]]:
        return [(s.a, s.b) for s in self.strips]


@dataclass(frozen=True)
class HashStrip:
    kind: str  # "proper", "null" or "empty"
    a: int
    d: int

    @property
    def proper(self) -> bool:
        return self.kind == "proper"


def _require_connected(shape: SkewShape) -> tuple[int, int]:
    if not shape.boxes:
        raise EmptyShape("the empty shape has no cutting strips")
    if not shape.is_connected():
        raise DisconnectedShape(f"{shape} is not edgewise connected")
    return shape.content_range()


def enumerate_cutting_strips(shape: SkewShape) -> list[CuttingStrip]:
    """All 2^(b-a) cutting strips for the content range of ``shape``.

    Ordered by the bitmask of ``below`` (bit i stands for content a+1+i), so
    the all-left strip comes first and the all-below strip last.
    """
    lo, hi = _require_connected(shape)
    out = []
    for mask in range(1 << (hi - lo)):
        below = frozenset(lo + 1 + i for i in range(hi - lo) if mask >> i & 1)
        out.append(CuttingStrip(lo, hi, below))
    return out


def rows_strip(shape: SkewShape) -> CuttingStrip:
    """The cutting strip whose decomposition is into maximal row segments."""
    lo, hi = _require_connected(shape)
    return CuttingStrip(lo, hi, frozenset())


def columns_strip(shape: SkewShape) -> CuttingStrip:
    """The cutting strip whose decomposition is into maximal column segments."""
    lo, hi = _require_connected(shape)
    return CuttingStrip(lo, hi, frozenset(range(lo + 1, hi + 1)))


def cut(shape: SkewShape, phi: CuttingStrip) -> OutsideDecomposition:
    """Split ``shape`` into strips by superimposing translates of ``phi``.

    Boxes of content c-1 and c share a strip exactly when they are
    horizontal neighbours and c is a left step of phi, or vertical
    neighbours and c is a below step.  Strips are ordered by starting
    content.
    """
    lo, hi = _require_connected(shape)
    if (phi.lo, phi.hi) != (lo, hi):
        raise ContentMismatch(f"cutting strip covers [{phi.lo},{phi.hi}], shape has [{lo},{hi}]")

    def successor(b: Box) -> Optional[Box]:
        c = b.content + 1
        if c > hi:
            return None
        nxt = Box(b.row - 1, b.col) if c in phi.below else Box(b.row, b.col + 1)
        return nxt if nxt in shape else None

    has_pred = set()
    for b in shape.boxes:
        s = successor(b)
        if s is not None:
            has_pred.add(s)
    strips = []
    for b in shape.boxes:
        if b in has_pred:
            continue
        chain = [b]
        while (s := successor(chain[-1])) is not None:
            chain.append(s)
        strips.append(Strip(tuple(chain)))
    strips.sort(key=lambda s: (s.a, s.b))
    return OutsideDecomposition(shape, phi, tuple(strips))


def is_outside(decomp: OutsideDecomposition) -> bool:
    """Boundary test: starts on the left/bottom edge, ends on the right/top edge."""
    shape = decomp.shape
    for s in decomp.strips:
        st, en = s.boxes[0], s.boxes[-1]
        if Box(st.row, st.col - 1) in shape and Box(st.row + 1, st.col) in shape:
            return False
        if Box(en.row, en.col + 1) in shape and Box(en.row - 1, en.col) in shape:
            return False
    return True


def hash_strip(p: int, q: int, decomp: OutsideDecomposition) -> HashStrip:
    """theta_p # theta_q for 1-based strip indices."""
    a = decomp.strips[p - 1].a
    d = decomp.strips[q - 1].b
    if a <= d:
        kind = "proper"
    elif a == d + 1:
        kind = "null"
    else:
        kind = "empty"
    return HashStrip(kind, a, d)


def shift_param(h: HashStrip, phi: CuttingStrip) -> int:
    """Content of the diagonal box when phi_{ad} is the rim of a straight diagram."""
    if not h.proper:
        raise NotProper(f"{h.kind} strip has no shift parameter")
    return h.a + sum(1 for c in range(h.a + 1, h.d + 1) if c in phi.below)


def shift_table(decomp: OutsideDecomposition) -> list[list[Optional[int]]]:
    """m(p,q) with 0 for null entries and None for empty ones."""
    s = len(decomp.strips)
    out = []
    for p in range(1, s + 1):
        row = []
        for q in range(1, s + 1):
            h = hash_strip(p, q, decomp)
            row.append(shift_param(h, decomp.phi) if h.proper else (0 if h.kind == "null" else None))
        out.append(row)
    return out


def strip_shape(phi: CuttingStrip, a: int, d: int, embedded: bool = False) -> SkewShape:
    """A skew shape consisting of the single strip phi_{ad}.

    By default the strip keeps its original contents a..d.  With
    ``embedded=True`` it is placed with its end box in row 1 and its start
    box in column 1, so contents become a-m..d-m where m is the shift
    parameter of phi_{ad}.
    """
    if not phi.lo <= a <= d <= phi.hi:
        raise ValueError(f"[{a},{d}] is not inside [{phi.lo},{phi.hi}]")
    # relative walk: start box at (0, 0), up one row per below step
    cells = [(0, 0)]
    for c in range(a + 1, d + 1):
        r, k = cells[-1]
        cells.append((r - 1, k) if c in phi.below else (r, k + 1))
    ups = -cells[-1][0]
    top = 1 if embedded else max(1, 1 - (a + ups))
    first_col = 1 if embedded else a + ups + top
    rows: dict[int, list[int]] = {}
    for r, k in cells:
        rows.setdefault(r + ups + top, []).append(k + first_col)
    n_rows = top + ups
    lam, mu = [], []
    end_col = max(rows[top])
    for i in range(1, n_rows + 1):
        if i < top:
            lam.append(end_col)
            mu.append(end_col)
        else:
            lam.append(max(rows[i]))
            mu.append(min(rows[i]) - 1)
    return SkewShape(Partition(tuple(lam)), Partition(tuple(x for x in mu if x)))


def strip_box_map(strip: Strip, shape: SkewShape) -> dict[Box, Box]:
    """Match the boxes of ``strip`` to those of a one-strip ``shape`` by content order."""
    target = sorted(shape.boxes, key=lambda b: b.content)
    return dict(zip(strip.boxes, target))


def decompose(shape: SkewShape, selector: str | CuttingStrip | Iterable[int]) -> list[OutsideDecomposition]:
    """Decompositions for a selector: "all", "rows", "columns", a CuttingStrip or a below-set."""
    if isinstance(selector, CuttingStrip):
        return [cut(shape, selector)]
    if selector == "all":
        return [cut(shape, phi) for phi in enumerate_cutting_strips(shape)]
    if selector == "rows":
        return [cut(shape, rows_strip(shape))]
    if selector == "columns":
        return [cut(shape, columns_strip(shape))]
    if isinstance(selector, str):
        raise ValueError(f"unknown cutting-strip selector {selector!r}")
    lo, hi = _require_connected(shape)
    return [cut(shape, CuttingStrip(lo, hi, frozenset(selector) - {lo}))]
