import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from strategies import alphabets, shapes
from superschur.alphabets import all_alphabets, enumerate_splits, make_alphabet
from superschur.errors import DisconnectedShape, TooLarge
from superschur.identities import (VerificationReport, _diff_witness, bachmann_alphabet, bachmann_schur, enumerate_oyt,
                                   hg_entry, hg_matrix, molev_alphabet, molev_schur, run_jobs, specialised_bachmann_side,
                                   verify_bachmann, verify_bijection, verify_hg, verify_molev,
                                   verify_supersymmetry)
from superschur.polyring import (ONE, ZERO, A, F, Family, Polynomial, T, Variable, XS, YS, determinant,
                                 eval_rational, substitute, tau_shift)
from superschur.shapes import skew_shape, skew_shapes
from superschur.strips import CuttingStrip, cut, enumerate_cutting_strips, hash_strip, rows_strip, strip_shape
from superschur.tableaux import schur6, schur9

SHAPE = skew_shape([6, 5, 5, 4, 4, 3], [3, 2])
PHI = CuttingStrip(-5, 5, frozenset({-3, -2, 0, 4}))
t = Polynomial.var(T())


# determinantal identity ----------------------------------------------------------------

def test_hg_shape_21_all_strips():
    s, a = skew_shape([2, 1]), make_alphabet(2, {2})
    reports = [verify_hg(s, phi, a) for phi in enumerate_cutting_strips(s)]
    assert len(reports) == 4 and all(r.passed for r in reports)


def test_hg_single_strip_is_one_by_one():
    s = skew_shape([3, 3], [2])
    phi = CuttingStrip(-1, 2, frozenset({2}))
    d = cut(s, phi)
    assert len(d) == 1
    a = make_alphabet(3, {2})
    assert hg_matrix(d, a) == [[schur9(s, a)]]
    assert verify_hg(s, phi, a).passed


def test_hg_32_1_every_split():
    s = skew_shape([3, 2], [1])
    for phi in enumerate_cutting_strips(s):
        for a in enumerate_splits(3, 0) + enumerate_splits(2, 1) + enumerate_splits(1, 2) + enumerate_splits(0, 3):
            assert verify_hg(s, phi, a).passed


def test_hg_running_example_null_and_empty_entries():
    d = cut(SHAPE, PHI)
    a = make_alphabet(2)
    assert hg_entry(d, 5, 2, a) == ZERO
    assert hg_entry(d, 4, 3, a) == ONE


def test_entry_routes_agree():
    d = cut(SHAPE, PHI)
    a = make_alphabet(2, {1})
    assert hg_matrix(d, a, "relabel") == hg_matrix(d, a, "tau")


def test_determinant_is_the_same_for_every_cutting_strip():
    for shape in (skew_shape([3, 2, 1]), skew_shape([3, 3, 2], [1, 1]), skew_shape([4, 2], [1])):
        for a in (make_alphabet(3, {2}), make_alphabet(2, {1})):
            target = schur9(shape, a)
            dets = {determinant(hg_matrix(cut(shape, phi), a)) for phi in enumerate_cutting_strips(shape)}
            assert dets == {target}


def test_hg_sweep_covers_null_and_empty():
    null = empty = 0
    for shape in skew_shapes(5, 1, connected=True):
        for phi in enumerate_cutting_strips(shape):
            r = verify_hg(shape, phi, make_alphabet(2, {1}))
            assert r.passed
            null += r.details["null"]
            empty += r.details["empty"]
    assert null > 0 and empty > 0


connected = shapes(max_boxes=8).filter(lambda s: s.boxes and s.is_connected())


@given(connected, alphabets(max_size=3), st.data())
@settings(max_examples=150)
def test_hg_property_up_to_eight_boxes(shape, a, data):
    lo, hi = shape.content_range()
    below = data.draw(st.sets(st.integers(lo + 1, hi))) if hi > lo else set()
    assert verify_hg(shape, CuttingStrip(lo, hi, frozenset(below)), a).passed


@pytest.mark.slow
@pytest.mark.parametrize("boxes", range(1, 9))
def test_hg_exhaustive_up_to_eight_boxes(boxes):
    for shape in skew_shapes(boxes, boxes, connected=True):
        for phi in enumerate_cutting_strips(shape):
            for a in all_alphabets(3):
                assert verify_hg(shape, phi, a, cross_check=False).passed, (shape, phi, a)


def _random_point(polys, seed):
    rng = random.Random(seed)
    codes = set()
    for p in polys:
        codes |= p.codes()
    return {Variable.from_code(c): rng.randint(-50, 50) for c in codes}


@pytest.mark.parametrize("alphabet", [make_alphabet(5), make_alphabet(5, {1})])
def test_running_example_identity_at_a_random_point(alphabet):
    """The full 22-box identity with five letters, checked at a random integer point.

    The stored shift entry m(1,5) = -2 makes the determinant agree; the
    misprinted value -1 does not.
    """
    d = cut(SHAPE, PHI)
    mat = hg_matrix(d, alphabet, route="tau")
    target = schur9(SHAPE, alphabet)
    h = hash_strip(1, 5, d)
    misprint = tau_shift(schur9(strip_shape(PHI, h.a, h.d, embedded=True), alphabet), -1)
    point = _random_point([target, misprint] + [e for row in mat for e in row], seed=1)
    num = [[int(eval_rational(e, point)) for e in row] for row in mat]
    assert determinant(num).constant_term() == eval_rational(target, point)
    num[0][4] = int(eval_rational(misprint, point))
    assert determinant(num).constant_term() != eval_rational(target, point)


def test_hg_rejects_disconnected_shape():
    with pytest.raises(DisconnectedShape):
        verify_hg(skew_shape([2, 1], [1]), CuttingStrip(-1, 1), make_alphabet(2))


def test_running_example_full_sum_hits_the_guard():
    with pytest.raises(TooLarge):
        schur9(SHAPE, make_alphabet(9, {3, 5, 6, 7}), limit=10**6)


# supersymmetry -------------------------------------------------------------------------

def test_susy_single_box():
    r = verify_supersymmetry(skew_shape([1]), 1, 1)
    assert r.passed
    for a in enumerate_splits(1, 1):
        assert schur6(skew_shape([1]), a) == XS(1) + YS(1)


def test_susy_examples():
    assert verify_supersymmetry(skew_shape([2, 1]), 2, 1).passed
    empty = verify_supersymmetry(skew_shape([]), 1, 1)
    assert empty.passed and empty.details["terms"] == 1


def test_susy_random_point_cross_check():
    shape = skew_shape([2, 1])
    polys = [schur6(shape, a) for a in enumerate_splits(2, 1)]
    for seed in range(20):
        point = _random_point(polys, seed)
        assert len({eval_rational(p, point) for p in polys}) == 1


# Molev ---------------------------------------------------------------------------------

def test_molev_single_box():
    s = skew_shape([1])
    assert molev_schur(s, 1, 1) == (XS(1) + A(1)) + (YS(1) - A(1))
    assert verify_molev(s, 1, 1).passed


def test_molev_examples():
    assert verify_molev(skew_shape([]), 1, 1).passed
    assert verify_molev(skew_shape([2, 1]), 1, 1).passed
    assert verify_molev(skew_shape([3, 1], [1]), 2, 2).passed


def test_molev_shift_matters():
    s = skew_shape([2, 1])
    assert schur6(s, molev_alphabet(1, 1)) != molev_schur(s, 1, 1)


# Bachmann ------------------------------------------------------------------------------

def f(k, c):
    return Polynomial.var(F(k, c))


def test_oyt_examples():
    assert bachmann_schur(skew_shape([1]), 2) == f(1, 0) + f(2, 0)
    assert bachmann_schur(skew_shape([2]), 1) == (1 - t) * f(1, 0) * f(1, 1)
    assert bachmann_schur(skew_shape([1, 1]), 1) == t * f(1, 0) * f(1, -1)
    (o,) = enumerate_oyt(skew_shape([2]), 1)
    assert (o.h, o.v) == (1, 0)


def test_oyt_diagonals_strict():
    for o in enumerate_oyt(skew_shape([3, 3, 2]), 3):
        cell = dict(zip(o.shape.boxes, o.entries))
        for b, e in cell.items():
            below_right = cell.get(type(b)(b.row + 1, b.col + 1))
            assert below_right is None or below_right > e


def test_bachmann_examples():
    s = skew_shape([1, 1])
    assert specialised_bachmann_side(s, 1) == t * f(1, 0) * f(1, -1)
    assert verify_bachmann(s, 1).passed
    assert verify_bachmann(skew_shape([2]), 1).passed
    assert verify_bachmann(skew_shape([]), 2).passed


def test_bachmann_side_matches_generic_substitution():
    for shape in skew_shapes(3):
        for n in (1, 2):
            a = bachmann_alphabet(n)
            ninth = schur9(shape, a)
            subst = {}
            for v in ninth.variables():
                is_x = v.family == Family.X
                r = a.unprimed[v.idx1 - 1] if is_x else sorted(a.primed)[v.idx1 - 1]
                k = (r + 1) // 2
                subst[v] = (1 - t) * f(k, v.idx2) if is_x else t * f(k, v.idx2)
            assert substitute(ninth, subst) == specialised_bachmann_side(shape, n)


# bijection -----------------------------------------------------------------------------

def test_bijection_examples():
    s = skew_shape([2, 1])
    assert verify_bijection(s, rows_strip(s), make_alphabet(2)).passed
    assert verify_bijection(skew_shape([]), None, make_alphabet(2)).passed
    s = skew_shape([3, 2], [1])
    for phi in enumerate_cutting_strips(s):
        r = verify_bijection(s, phi, make_alphabet(3, {2}))
        assert r.passed and r.details["tableaux"] == r.details["tuples"]


# reports and sweeps --------------------------------------------------------------------

def test_report_json_schema():
    s = skew_shape([2, 1])
    r = verify_hg(s, rows_strip(s), make_alphabet(2))
    obj = json.loads(json.dumps(r.to_json()))
    assert obj["claim"] == "hg" and obj["status"] == "pass"
    assert obj["shape"] == {"lambda": [2, 1], "mu": []}
    assert obj["phi"] == {"range": [-1, 1], "below": []}
    assert obj["alphabet"] == {"size": 2, "primed": []}
    assert isinstance(obj["elapsed_ms"], (int, float))
    assert "witness" not in obj


def test_witness_is_truncated():
    big = sum((Polynomial.var(A(i)) for i in range(25)), ZERO)
    w = _diff_witness(big, ZERO)
    assert w.startswith("difference: ") and "(15 more terms)" in w
    assert _diff_witness(big, big) is None
    r = VerificationReport("hg", {"n": 1}, "fail", w)
    assert not r.passed and "witness" in r.line()


def test_run_jobs_keeps_order_across_workers():
    shapes = [s for s in skew_shapes(3, 1)]
    args = [(s, 1, 1) for s in shapes]
    serial = run_jobs(verify_molev, args, jobs=1)
    parallel = run_jobs(verify_molev, args, jobs=2)
    assert [r.inputs for r in serial] == [r.inputs for r in parallel]
    assert all(r.passed for r in parallel)
