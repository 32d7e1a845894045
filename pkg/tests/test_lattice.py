import json
import xml.etree.ElementTree as ET
from collections import Counter
from importlib import resources

import pytest

from superschur.alphabets import MarkedAlphabet, all_alphabets, make_alphabet
from superschur.errors import MalformedPath
from superschur.lattice import (LatticeModel, PathTuple, build_lattice, endpoints, enumerate_path_tuples,
                                lattice_svg, paths_to_tableau, tableau_to_paths, tuple_weight)
from superschur.shapes import skew_shape, skew_shapes
from superschur.strips import CuttingStrip, cut, enumerate_cutting_strips
from superschur.tableaux import enumerate, parse_tableau, weight9

GOLDEN = json.loads(resources.files("superschur").joinpath("data/running_example.json").read_text())
SHAPE = skew_shape([6, 5, 5, 4, 4, 3], [3, 2])
PHI = CuttingStrip(-5, 5, frozenset({-3, -2, 0, 4}))
ALPHABET = make_alphabet(9, {3, 5, 6, 7})
M, N = (1, 2, 4, 8, 9), (3, 5, 6, 7)
L_COLS, B_COLS = (-4, -1, 1, 2, 3, 5), (-5, -3, -2, 0, 4)

# polylines of the drawn five-path figure, as (r, c) corners
FIGURE_PATHS = [
    [(10, -6), (5, -6), (4, -5), (8, -5), (8, -4), (7, -4), (7, -3), (5, -3), (4, -2), (4, -1), (3, -1),
     (3, 0), (4, 0), (4, 1), (9, 1), (9, 2), (10, 2)],
    [(0, -5), (2, -5), (3, -4), (3, -3), (2, -3), (1, -2), (1, -1), (0, -1)],
    [(10, -4), (8, -2), (8, -1), (6, -1), (6, 0), (10, 0)],
    [(0, 0), (2, 0), (2, 1), (3, 2), (4, 2), (5, 3), (5, 4), (8, 4), (8, 5), (10, 5)],
    [(0, 2), (2, 2), (3, 3), (0, 3)],
]


def unit_steps(corners):
    """Expand drawn segments into unit lattice steps."""
    out = [corners[0]]
    for (r1, c1), (r2, c2) in zip(corners, corners[1:]):
        if c1 == c2:
            step = 1 if r2 > r1 else -1
            out.extend((r, c1) for r in range(r1 + step, r2 + step, step))
        else:
            # diagonal strokes may span several columns
            k = c2 - c1
            out.extend((r1 + (r2 - r1) * i // k, c1 + i) for i in range(1, k + 1))
    return tuple(out)


def figure_edges():
    """Undirected edge set drawn in the figure."""
    edges = set()
    for i in M:
        edges |= {frozenset({(i, j - 1), (i, j)}) for j in L_COLS}
        edges |= {frozenset({(i + 1, j - 1), (i, j)}) for j in B_COLS}
    for i in N:
        edges |= {frozenset({(i, j - 1), (i, j)}) for j in B_COLS}
        edges |= {frozenset({(i - 1, j - 1), (i, j)}) for j in L_COLS}
    for j in (-5, -2, 0, 1, 2, 4, 5, -6, -4, -3, -1, 3):
        edges |= {frozenset({(i - 1, j), (i, j)}) for i in range(1, 11)}
    return edges


def test_lattice_edges_match_figure():
    model = build_lattice(ALPHABET, PHI)
    ours = {frozenset(e) for e in model.step_edges() + model.vertical_edges()}
    assert ours == figure_edges()


def test_lattice_column_directions_match_figure():
    model = build_lattice(ALPHABET, PHI)
    assert [c for c in model.columns if model.direction(c) == 1] == [-5, -2, 0, 1, 2, 4, 5]
    assert [c for c in model.columns if model.direction(c) == -1] == [-6, -4, -3, -1, 3]


def test_horizontal_edges_by_row_class():
    model = build_lattice(ALPHABET, PHI)
    flat = {(r, c) for r in range(1, 10) for c in range(-5, 6) if model.source(r, c) == r}
    assert {(r, c) for r, c in flat if r in M} == {(r, c) for r in M for c in L_COLS}
    assert {(r, c) for r, c in flat if r in N} == {(r, c) for r in N for c in B_COLS}


def test_classical_pictures():
    # the lowest content counts as a below step, so only later columns are flat
    unprimed = build_lattice(make_alphabet(3), CuttingStrip(0, 3))
    assert all(u[0] == v[0] for u, v in unprimed.step_edges() if v[1] > 0)
    assert all(unprimed.direction(c) == 1 for c in unprimed.columns[1:])
    primed = build_lattice(make_alphabet(3, {1, 2, 3}), CuttingStrip(0, 3, frozenset({1, 2, 3})))
    assert all(u[0] == v[0] for u, v in primed.step_edges())
    assert all(primed.direction(c) == -1 for c in primed.columns[:-1])


def test_endpoints_match_figure():
    ends = endpoints(cut(SHAPE, PHI), ALPHABET)
    assert ends == [(p[0], p[-1]) for p in FIGURE_PATHS]
    assert ends[0] == ((10, -6), (10, 2)) and ends[4] == ((0, 2), (0, 3))


def test_single_box_endpoints():
    for a in all_alphabets(2):
        (p, q), = endpoints(cut(skew_shape([1]), CuttingStrip(0, 0)), a)
        assert p[1] == -1 and p[0] in (0, a.size + 1)


def test_running_tableau_maps_to_figure_paths():
    t = parse_tableau(GOLDEN["tableau"], ALPHABET)
    d = cut(SHAPE, PHI)
    pt = tableau_to_paths(t, d)
    assert list(pt.paths) == [unit_steps(p) for p in FIGURE_PATHS]
    assert pt.is_disjoint()
    assert paths_to_tableau(pt, d, ALPHABET) == t
    model = LatticeModel(ALPHABET, PHI)
    assert tuple_weight(model, pt) == weight9(t)


def test_malformed_paths_are_rejected():
    t = parse_tableau(GOLDEN["tableau"], ALPHABET)
    d = cut(SHAPE, PHI)
    pt = tableau_to_paths(t, d)
    with pytest.raises(MalformedPath):
        paths_to_tableau(PathTuple(pt.paths[:4], pt.endpoints[:4]), d, ALPHABET)
    broken = (pt.paths[0][:3] + pt.paths[0][4:],) + pt.paths[1:]
    with pytest.raises(MalformedPath):
        paths_to_tableau(PathTuple(broken, pt.endpoints), d, ALPHABET)
    crossing = (pt.paths[0], pt.paths[0]) + pt.paths[2:]
    with pytest.raises(MalformedPath):
        paths_to_tableau(PathTuple(crossing, pt.endpoints), d, ALPHABET)


def test_path_tuples_biject_with_tableaux_up_to_five_boxes():
    for shape in skew_shapes(5, 1, connected=True):
        for phi in enumerate_cutting_strips(shape):
            d = cut(shape, phi)
            for a in all_alphabets(2):
                model = LatticeModel(a, phi)
                tabs = list(enumerate(shape, a))
                tuples = enumerate_path_tuples(d, a)
                assert len(tabs) == len(tuples)
                assert Counter(weight9(t) for t in tabs) == Counter(tuple_weight(model, pt) for pt in tuples)
                for t in tabs:
                    pt = tableau_to_paths(t, d)
                    assert pt.is_disjoint()
                    assert paths_to_tableau(pt, d, a) == t


def test_svg_is_well_formed():
    t = parse_tableau(GOLDEN["tableau"], ALPHABET)
    svg = lattice_svg(LatticeModel(ALPHABET, PHI), tableau_to_paths(t, cut(SHAPE, PHI)))
    root = ET.fromstring(svg)
    assert root.tag.endswith("svg")
    assert sum(1 for el in root if el.tag.endswith("polyline")) == 5


def test_alphabet_json_for_lattice():
    assert MarkedAlphabet.from_json(GOLDEN["alphabet"]) == ALPHABET
