"""Acceptance criteria 1-7, each reported on one pass/fail line."""
import contextlib
import io
import itertools
import json
import random
import time

import pytest

from superschur.alphabets import all_alphabets
from superschur.cli import main
from superschur.identities import verify_bachmann, verify_bijection, verify_hg, verify_molev, verify_supersymmetry
from superschur.polyring import A, Polynomial, T, X, XS, Y, YS, determinant, substitute, tau_shift
from superschur.shapes import skew_shape, skew_shapes
from superschur.strips import enumerate_cutting_strips
from superschur.tableaux import enumerate as enumerate_tableaux
from superschur.tableaux import enumerate_oracle

pytestmark = pytest.mark.acceptance


def run_cli(*argv):
    out = io.StringIO()
    with contextlib.redirect_stdout(out):
        code = main(list(argv))
    return code, out.getvalue()


# 1 -------------------------------------------------------------------------------------

def test_criterion_1_running_example_tables(capsys):
    with Line(capsys, "criterion 1 running example tables") as line:
        main(["paper-tables", "--json"])  # warm imports and kernels
        capsys.readouterr()
        start = time.perf_counter()
        code, out = run_cli("paper-tables", "--json")
        elapsed = time.perf_counter() - start
        obj = json.loads(out)
        tables = obj["tables"]
        assert code == 0 and obj["status"] == "pass" and obj["diff"] == []
        assert tables["sigma"] == [1, 2, 2, 2, 2, 1, 0, 0, 1]
        assert tables["strips"] == [[-5, 2], [-4, -1], [-3, 0], [1, 5], [3, 3]]
        assert sum(len(row) for row in tables["hash"]) == 25
        assert tables["hash"][3][2] == "null[1,0]" and tables["entry"][3][2] == "1"
        assert tables["hash"][4][1] == "empty[3,-1]" and tables["entry"][4][1] == "0"
        assert len(tables["weight9"]) == 22 and len(tables["weight6"]) == 22
        assert elapsed < 1.0
        line.ok(f"25 hash/shift cells, 22 weights, {elapsed * 1000:.0f} ms")


# 2 -------------------------------------------------------------------------------------

HG_SHAPES = [skew_shape([3, 2, 1]), skew_shape([3, 3, 2], [1, 1]), skew_shape([2, 2, 2], [1]),
             skew_shape([4, 2], [1]), skew_shape([3, 2])]


def test_criterion_2_determinant_sweep(capsys):
    with Line(capsys, "criterion 2 determinant identity") as line:
        alphabets = list(all_alphabets(3))
        assert len(alphabets) == 14
        cases = failures = 0
        for shape in HG_SHAPES:
            assert shape.is_connected() and len(shape.boxes) <= 8
            for phi in enumerate_cutting_strips(shape):
                for a in alphabets:
                    cases += 1
                    failures += not verify_hg(shape, phi, a).passed
        assert failures == 0
        line.ok(f"{cases} cases")


# 3 -------------------------------------------------------------------------------------

def test_criterion_3_supersymmetry(capsys):
    with Line(capsys, "criterion 3 supersymmetry") as line:
        cases = failures = 0
        for shape in skew_shapes(6):
            for m, n in ((1, 1), (2, 1), (1, 2), (2, 2)):
                cases += 1
                failures += not verify_supersymmetry(shape, m, n).passed
        assert failures == 0
        line.ok(f"{cases} cases")


# 4 -------------------------------------------------------------------------------------

def test_criterion_4_specializations(capsys):
    with Line(capsys, "criterion 4 Molev and Bachmann") as line:
        cases = failures = 0
        for shape in skew_shapes(6):
            for m, n in itertools.product(range(3), range(3)):
                if m + n:
                    cases += 1
                    failures += not verify_molev(shape, m, n).passed
            for n in (1, 2):
                cases += 1
                failures += not verify_bachmann(shape, n).passed
        assert failures == 0
        line.ok(f"{cases} cases")


# 5 -------------------------------------------------------------------------------------

def test_criterion_5_path_bijection(capsys):
    with Line(capsys, "criterion 5 path bijection") as line:
        shape = skew_shape([3, 2], [1])
        strips = enumerate_cutting_strips(shape)
        assert len(strips) == 8
        cases = failures = 0
        for phi in strips:
            for a in all_alphabets(3):
                r = verify_bijection(shape, phi, a)
                cases += 1
                failures += not (r.passed and r.details["tableaux"] == r.details["tuples"])
        assert failures == 0
        line.ok(f"{cases} cases")


# 6 -------------------------------------------------------------------------------------

def test_criterion_6_oracle_equivalence(capsys):
    with Line(capsys, "criterion 6 oracle equivalence") as line:
        cases = 0
        for shape in skew_shapes(5):
            for a in all_alphabets(4):
                fast = sorted(t.entries for t in enumerate_tableaux(shape, a))
                slow = sorted(t.entries for t in enumerate_oracle(shape, a))
                assert fast == slow, (shape, a)
                cases += 1
        line.ok(f"{cases} shape/alphabet pairs")


# 7 -------------------------------------------------------------------------------------

CASES = 1000
POOL = [X(1, 0), X(2, -1), Y(1, 1), Y(2, 0), XS(1), YS(2), A(0), A(3), T()]


def random_poly(rng, max_terms=4, max_degree=3):
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        mono = tuple(sorted(rng.choice(POOL).code for _ in range(rng.randint(0, max_degree))))
        terms[mono] = terms.get(mono, 0) + rng.randint(-5, 5)
    return Polynomial(terms)


def leibniz(mat):
    n = len(mat)
    total = Polynomial.const(0)
    for perm in itertools.permutations(range(n)):
        inversions = sum(perm[i] > perm[j] for i in range(n) for j in range(i + 1, n))
        term = Polynomial.const(-1 if inversions % 2 else 1)
        for i, j in enumerate(perm):
            term = term * mat[i][j]
        total = total + term
    return total


def ring_axioms(rng):
    p, q, r = (random_poly(rng) for _ in range(3))
    one, zero = Polynomial.const(1), Polynomial.const(0)
    return (p + q == q + p and p * q == q * p and (p + q) + r == p + (q + r) and (p * q) * r == p * (q * r)
            and p * (q + r) == p * q + p * r and p + zero == p and p * one == p and p - p == zero)


def substitution_homomorphism(rng):
    p, q = random_poly(rng), random_poly(rng)
    image = {v: random_poly(rng, 3, 2) for v in rng.sample(POOL, 3)}
    return (substitute(p + q, image) == substitute(p, image) + substitute(q, image)
            and substitute(p * q, image) == substitute(p, image) * substitute(q, image))


def tau_composition(rng):
    p = random_poly(rng)
    s, u = rng.randint(-4, 4), rng.randint(-4, 4)
    return tau_shift(tau_shift(p, s), u) == tau_shift(p, s + u) and tau_shift(p, 0) == p


def determinant_order(rng):
    n = rng.randint(1, 4)
    mat = [[random_poly(rng, 2, 2) for _ in range(n)] for _ in range(n)]
    d = determinant(mat)
    transposed = [list(col) for col in zip(*mat)]
    perm = list(range(n))
    rng.shuffle(perm)
    # permuting rows and columns by the same permutation leaves the determinant unchanged
    conj = [[mat[perm[i]][perm[j]] for j in range(n)] for i in range(n)]
    return d == leibniz(mat) and d == determinant(transposed) and d == determinant(conj)


def test_criterion_7_polynomial_ring(capsys):
    with Line(capsys, "criterion 7 polynomial ring") as line:
        props = [ring_axioms, substitution_homomorphism, tau_composition, determinant_order]
        for prop in props:
            rng = random.Random(f"criterion-7-{prop.__name__}")
            bad = [i for i in range(CASES) if not prop(rng)]
            assert bad == [], (prop.__name__, bad[:5])
        line.ok(f"{CASES} cases for each of {len(props)} properties")


class Line:
    """Context manager printing ``label: PASS ...`` or ``label: FAIL ...`` past pytest's capture."""

    def __init__(self, capsys, label):
        self.capsys, self.label, self.detail = capsys, label, ""

    def ok(self, detail):
        self.detail = detail

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.start
        status = "PASS" if exc_type is None else "FAIL"
        detail = self.detail if exc_type is None else f"{exc_type.__name__}: {exc}"[:200]
        with self.capsys.disabled():
            print(f"\n{self.label}: {status}, {detail} [{elapsed:.1f}s]", flush=True)
        return False
