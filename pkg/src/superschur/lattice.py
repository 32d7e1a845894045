"""The directed lattice behind the determinantal identity and its path bijection.

Vertices are pairs (r, c) with 0 <= r <= size+1 and c in lo-1..hi, where
[lo, hi] is the content range of the cutting strip.  Two kinds of edges:

* step edges end at (r, c) with 1 <= r <= size and carry the weight of
  letter r at content c.  They start in column c-1 at the row given by
  ``LatticeModel.source``.
* vertical edges stay inside a column, have weight 1, and run toward larger
  r when content c+1 is a left step of the cutting strip and toward smaller r
  when it is a below step.  The minimum content counts as a below step and
  the content just past the maximum as a left step.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional

from .alphabets import MarkedAlphabet
from .errors import MalformedPath
from .polyring import Polynomial, Variable, X, Y
from .strips import BELOW, LEFT, CuttingStrip, OutsideDecomposition
from .tableaux import SuperTableau

Vertex = tuple[int, int]


@dataclass(frozen=True)
class LatticeModel:
    alphabet: MarkedAlphabet
    phi: CuttingStrip

    @property
    def top(self) -> int:
        return self.alphabet.size + 1

    @property
    def columns(self) -> range:
        return range(self.phi.lo - 1, self.phi.hi + 1)

    def label(self, c: int) -> str:
        if c == self.phi.lo:
            return BELOW
        if c == self.phi.hi + 1:
            return LEFT
        return self.phi.label(c)

    def direction(self, c: int) -> int:
        """+1 if vertical edges in column c point to larger r, else -1."""
        return 1 if self.label(c + 1) == LEFT else -1

    def source(self, r: int, c: int) -> int:
        """Row in column c-1 where the step edge into (r, c) begins."""
        primed = r in self.alphabet.primed
        if self.label(c) == LEFT:
            return r - 1 if primed else r
        return r if primed else r + 1

    def weight(self, r: int, c: int) -> Variable:
        k = self.alphabet.rank(r)
        return Y(k, c) if r in self.alphabet.primed else X(k, c)

    def in_range(self, v: Vertex) -> bool:
        return 0 <= v[0] <= self.top and self.phi.lo - 1 <= v[1] <= self.phi.hi

    def successors(self, v: Vertex) -> list[Vertex]:
        r, c = v
        out = []
        up = (r + self.direction(c), c)
        if self.in_range(up):
            out.append(up)
        if c < self.phi.hi:
            for r2 in (r - 1, r, r + 1):
                if 1 <= r2 <= self.alphabet.size and self.source(r2, c + 1) == r:
                    out.append((r2, c + 1))
        return out

    def is_edge(self, u: Vertex, v: Vertex) -> bool:
        if not (self.in_range(u) and self.in_range(v)):
            return False
        if u[1] == v[1]:
            return v[0] - u[0] == self.direction(u[1])
        return (v[1] == u[1] + 1 and 1 <= v[0] <= self.alphabet.size
                and self.source(v[0], v[1]) == u[0])

    def step_edges(self) -> list[tuple[Vertex, Vertex]]:
        return [((self.source(r, c), c - 1), (r, c))
                for c in range(self.phi.lo, self.phi.hi + 1)
                for r in range(1, self.alphabet.size + 1)]

    def vertical_edges(self) -> list[tuple[Vertex, Vertex]]:
        out = []
        for c in self.columns:
            d = self.direction(c)
            for r in range(self.top + 1):
                if 0 <= r + d <= self.top:
                    out.append(((r, c), (r + d, c)))
        return out


def build_lattice(alphabet: MarkedAlphabet, phi: CuttingStrip) -> LatticeModel:
    return LatticeModel(alphabet, phi)


@dataclass(frozen=True)
class PathTuple:
    paths: tuple[tuple[Vertex, ...], ...]
    endpoints: tuple[tuple[Vertex, Vertex], ...]

    def is_disjoint(self) -> bool:
        seen: set[Vertex] = set()
        for p in self.paths:
            for v in p:
                if v in seen:
                    return False
                seen.add(v)
        return True


def endpoints(decomp: OutsideDecomposition, alphabet: MarkedAlphabet) -> list[tuple[Vertex, Vertex]]:
    model = LatticeModel(alphabet, decomp.phi)
    out = []
    for s in decomp.strips:
        p = (0, s.a - 1) if model.label(s.a) == LEFT else (model.top, s.a - 1)
        q = (model.top, s.b) if model.label(s.b + 1) == LEFT else (0, s.b)
        out.append((p, q))
    return out


def _climb(model: LatticeModel, path: list[Vertex], target: int) -> None:
    r, c = path[-1]
    if r == target:
        return
    d = model.direction(c)
    if (target - r) * d < 0:
        raise MalformedPath(f"column {c} runs {'down' if d > 0 else 'up'}, cannot reach row {target} from {r}")
    while r != target:
        r += d
        path.append((r, c))


def tableau_to_paths(t: SuperTableau, decomp: OutsideDecomposition) -> PathTuple:
    model = LatticeModel(t.alphabet, decomp.phi)
    cell = t.as_dict()
    ends = endpoints(decomp, t.alphabet)
    paths = []
    for strip, (p, q) in zip(decomp.strips, ends):
        path = [p]
        for b in strip.boxes:
            r, c = cell[b], b.content
            _climb(model, path, model.source(r, c))
            path.append((r, c))
        _climb(model, path, q[0])
        paths.append(tuple(path))
    return PathTuple(tuple(paths), tuple(ends))


def paths_to_tableau(pt: PathTuple, decomp: OutsideDecomposition, alphabet: MarkedAlphabet) -> SuperTableau:
    model = LatticeModel(alphabet, decomp.phi)
    ends = endpoints(decomp, alphabet)
    if len(pt.paths) != len(decomp.strips):
        raise MalformedPath(f"{len(pt.paths)} paths for {len(decomp.strips)} strips")
    if not pt.is_disjoint():
        raise MalformedPath("paths intersect")
    values = {}
    for strip, path, (p, q) in zip(decomp.strips, pt.paths, ends):
        if not path or path[0] != p or path[-1] != q:
            raise MalformedPath(f"path must run from {p} to {q}")
        letters = {}
        for u, v in zip(path, path[1:]):
            if not model.is_edge(u, v):
                raise MalformedPath(f"{u} -> {v} is not a lattice edge")
            if v[1] != u[1]:
                letters[v[1]] = v[0]
        for b in strip.boxes:
            values[b] = letters[b.content]
    return SuperTableau(decomp.shape, alphabet, tuple(values[b] for b in decomp.shape.boxes))


def path_weight(model: LatticeModel, path: tuple[Vertex, ...]) -> Polynomial:
    return Polynomial.monomial(model.weight(*v) for u, v in zip(path, path[1:]) if u[1] != v[1])


def tuple_weight(model: LatticeModel, pt: PathTuple) -> Polynomial:
    return Polynomial.monomial(model.weight(*v) for path in pt.paths
                               for u, v in zip(path, path[1:]) if u[1] != v[1])


def enumerate_paths(model: LatticeModel, p: Vertex, q: Vertex) -> Iterator[tuple[Vertex, ...]]:
    """All directed paths from p to q, by depth-first search over the edge rules."""
    path = [p]

    def dfs(v):
        if v == q:
            yield tuple(path)
            return
        if v[1] > q[1]:
            return
        for w in model.successors(v):
            path.append(w)
            yield from dfs(w)
            path.pop()

    yield from dfs(p)


def enumerate_path_tuples(decomp: OutsideDecomposition, alphabet: MarkedAlphabet) -> list[PathTuple]:
    """Every vertex-disjoint tuple of paths between the strip endpoints."""
    model = LatticeModel(alphabet, decomp.phi)
    ends = endpoints(decomp, alphabet)
    options = [[(path, frozenset(path)) for path in enumerate_paths(model, p, q)] for p, q in ends]
    out: list[PathTuple] = []
    chosen: list[tuple[Vertex, ...]] = []

    def pick(i: int, used: frozenset):
        if i == len(options):
            out.append(PathTuple(tuple(chosen), tuple(ends)))
            return
        for path, verts in options[i]:
            if used.isdisjoint(verts):
                chosen.append(path)
                pick(i + 1, used | verts)
                chosen.pop()

    pick(0, frozenset())
    return out


_COLOURS = ("#1f77b4", "#2ca02c", "#d62728", "#17becf", "#e377c2", "#ff7f0e", "#9467bd", "#8c564b")


def lattice_svg(model: LatticeModel, pt: Optional[PathTuple] = None, unit: int = 36) -> str:
    """SVG drawing of the lattice with rows downward and contents rightward."""
    lo = model.phi.lo - 1

    def xy(v: Vertex) -> tuple[int, int]:
        return (v[1] - lo + 1) * unit, (v[0] + 1) * unit

    width = (model.phi.hi - lo + 2) * unit
    height = (model.top + 2) * unit
    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
             f'viewBox="0 0 {width} {height}">']
    for u, v in model.vertical_edges() + model.step_edges():
        (x1, y1), (x2, y2) = xy(u), xy(v)
        parts.append(f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="#bbb" stroke-width="1"/>')
    for c in model.columns:
        for r in range(model.top + 1):
            x, y = xy((r, c))
            parts.append(f'<circle cx="{x}" cy="{y}" r="2" fill="#555"/>')
    if pt is not None:
        for i, path in enumerate(pt.paths):
            pts = " ".join("%d,%d" % xy(v) for v in path)
            colour = _COLOURS[i % len(_COLOURS)]
            parts.append(f'<polyline points="{pts}" fill="none" stroke="{colour}" stroke-width="4"/>')
    parts.append("</svg>")
    return "\n".join(parts)
