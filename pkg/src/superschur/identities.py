"""Verification of the determinantal, supersymmetry and specialization identities."""

from __future__ import annotations

import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Optional, Sequence

import numpy as np

from . import kernels
from .alphabets import MarkedAlphabet, enumerate_splits
from .lattice import (LatticeModel, enumerate_path_tuples, paths_to_tableau, tableau_to_paths,
                      tuple_weight)
from .polyring import (ONE, XS, YS, ZERO, A, F, Polynomial, T, determinant,
                       substitute, tau_shift)
from .shapes import SkewShape
from .strips import (CuttingStrip, OutsideDecomposition, cut, hash_strip, shift_param,
                     strip_shape)
from .tableaux import (default_limit, expand_over, neighbour_arrays, schur6, schur9, tableau_array,
                       weight9)
from .tableaux import enumerate as enumerate_tableaux

WITNESS_TERMS = 10


@dataclass
class VerificationReport:
    claim: str
    inputs: dict[str, Any]
    status: str
    witness: Optional[str] = None
    elapsed_ms: float = 0.0
    details: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_json(self) -> dict:
        out = {"claim": self.claim, **self.inputs, "status": self.status,
               "elapsed_ms": round(self.elapsed_ms, 3)}
        if self.details:
            out["details"] = self.details
        if self.witness is not None:
            out["witness"] = self.witness
        return out

    def line(self) -> str:
        parts = [f"{self.claim}", self.status.upper()]
        for k, v in self.inputs.items():
            parts.append(f"{k}={_short(v)}")
        text = " ".join(parts)
        if self.witness:
            text += f"\n  witness: {self.witness}"
        return text


def _short(v) -> str:
    if isinstance(v, dict) and "lambda" in v:
        lam = ",".join(map(str, v["lambda"]))
        mu = ",".join(map(str, v["mu"]))
        return f"({lam})/({mu})" if mu else f"({lam})"
    if isinstance(v, dict) and "primed" in v:
        return f"{v['size']}{v['primed']}".replace(" ", "")
    if isinstance(v, dict) and "below" in v:
        return f"{v['range']}B{v['below']}".replace(" ", "")
    return str(v).replace(" ", "")


class _Timer:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.ms = (time.perf_counter() - self.t0) * 1000.0


def _diff_witness(lhs: Polynomial, rhs: Polynomial, label: str = "difference") -> Optional[str]:
    diff = lhs - rhs
    if diff.is_zero():
        return None
    extra = len(diff) - WITNESS_TERMS
    tail = f" + ... ({extra} more terms)" if extra > 0 else ""
    return f"{label}: {diff.leading(WITNESS_TERMS)}{tail}"


# determinantal identity -------------------------------------------------------------

def hg_entry(decomp: OutsideDecomposition, p: int, q: int, alphabet: MarkedAlphabet,
             route: str = "relabel", limit: int | None = None) -> Polynomial:
    h = hash_strip(p, q, decomp)
    if h.kind == "null":
        return ONE
    if h.kind == "empty":
        return ZERO
    if route == "relabel":
        return schur9(strip_shape(decomp.phi, h.a, h.d), alphabet, limit)
    if route == "tau":
        base = schur9(strip_shape(decomp.phi, h.a, h.d, embedded=True), alphabet, limit)
        return tau_shift(base, shift_param(h, decomp.phi))
    raise ValueError(f"unknown route {route!r}")


def hg_matrix(decomp: OutsideDecomposition, alphabet: MarkedAlphabet, route: str = "relabel",
              limit: int | None = None) -> list[list[Polynomial]]:
    s = len(decomp.strips)
    return [[hg_entry(decomp, p, q, alphabet, route, limit) for q in range(1, s + 1)]
            for p in range(1, s + 1)]


def _hg_inputs(shape, phi, alphabet) -> dict:
    return {"shape": shape.to_json(), "phi": phi.to_json(), "alphabet": alphabet.to_json()}


def verify_hg(shape: SkewShape, phi: CuttingStrip, alphabet: MarkedAlphabet,
              cross_check: bool = True, limit: int | None = None) -> VerificationReport:
    """Determinant of the hash-strip matrix against the direct tableau sum."""
    with _Timer() as tm:
        decomp = cut(shape, phi)
        mat = hg_matrix(decomp, alphabet, "relabel", limit)
        witness = None
        if cross_check:
            alt = hg_matrix(decomp, alphabet, "tau", limit)
            for p, (row, alt_row) in enumerate(zip(mat, alt)):
                for q, (e1, e2) in enumerate(zip(row, alt_row)):
                    if witness is None and e1 != e2:
                        witness = _diff_witness(e1, e2, f"entry ({p + 1},{q + 1}) relabel minus tau route")
        if witness is None:
            witness = _diff_witness(determinant(mat), schur9(shape, alphabet, limit),
                                    "determinant minus tableau sum")
    kinds = Counter(hash_strip(p, q, decomp).kind
                    for p in range(1, len(decomp) + 1) for q in range(1, len(decomp) + 1))
    return VerificationReport("hg", _hg_inputs(shape, phi, alphabet),
                              "pass" if witness is None else "fail", witness, tm.ms,
                              {"strips": [list(r) for r in decomp.ranges()],
                               "null": kinds["null"], "empty": kinds["empty"]})


# supersymmetry -------------------------------------------------------------------------

def _swap(p: Polynomial, u, v) -> Polynomial:
    return substitute(p, {u: v, v: u})


def verify_supersymmetry(shape: SkewShape, m: int, n: int, limit: int | None = None) -> VerificationReport:
    """Split independence, separate symmetry in xs and ys, and cancellation of xs_k = -ys_l."""
    if m + n < 1:
        raise ValueError("need at least one letter")
    with _Timer() as tm:
        witness = None
        splits = enumerate_splits(m, n)
        base = schur6(shape, splits[0], limit)
        for a in splits[1:]:
            witness = _diff_witness(schur6(shape, a, limit), base, f"split {sorted(a.primed)} minus split {sorted(splits[0].primed)}")
            if witness:
                break
        for k in range(1, m):
            if witness:
                break
            witness = _diff_witness(_swap(base, XS(k), XS(k + 1)), base, f"swap xs[{k}],xs[{k + 1}] minus original")
        for l in range(1, n):
            if witness:
                break
            witness = _diff_witness(_swap(base, YS(l), YS(l + 1)), base, f"swap ys[{l}],ys[{l + 1}] minus original")
        t = T()
        for k in range(1, m + 1):
            for l in range(1, n + 1):
                if witness:
                    break
                q = substitute(base, {XS(k): Polynomial.var(t), YS(l): -Polynomial.var(t)})
                if q.degree_in(t) > 0:
                    witness = f"t survives after xs[{k}]=t, ys[{l}]=-t: {q.leading(WITNESS_TERMS)}"
    return VerificationReport("susy", {"shape": shape.to_json(), "m": m, "n": n},
                              "pass" if witness is None else "fail", witness, tm.ms,
                              {"splits": len(splits), "terms": len(base)})


# Molev ---------------------------------------------------------------------------------

def molev_alphabet(m: int, n: int) -> MarkedAlphabet:
    """Primed letters first: {1' < ... < n' < n+1 < ... < n+m}."""
    return MarkedAlphabet(m + n, frozenset(range(1, n + 1)))


def molev_schur(shape: SkewShape, m: int, n: int, limit: int | None = None) -> Polynomial:
    """Factorial weights in the convention with primed letters ordered n' < ... < 1'.

    Our letter j' (1 <= j <= n) plays the part of that convention's
    (n-j+1)', so it weighs ys[n-j+1] - a[n-j+1+c]; letter n+k weighs
    xs[k] + a[k+c].
    """
    alphabet = molev_alphabet(m, n)
    nb = len(shape.boxes)
    first = np.zeros((nb, m + n + 1), dtype=np.int64)
    second = np.zeros_like(first)
    sign = np.ones_like(first)
    for i, b in enumerate(shape.boxes):
        for r in range(1, m + n + 1):
            if r <= n:
                label = n - r + 1
                first[i, r], second[i, r], sign[i, r] = YS(label).code, A(label + b.content).code, -1
            else:
                k = r - n
                first[i, r], second[i, r] = XS(k).code, A(k + b.content).code
    return expand_over(tableau_array(shape, alphabet, limit), (first, second, sign))


def verify_molev(shape: SkewShape, m: int, n: int, limit: int | None = None) -> VerificationReport:
    with _Timer() as tm:
        ours = schur6(shape, molev_alphabet(m, n), limit)
        theirs = tau_shift(molev_schur(shape, m, n, limit), -n)
        witness = _diff_witness(ours, theirs, "factorial sum minus shifted Molev-convention sum")
    return VerificationReport("molev", {"shape": shape.to_json(), "m": m, "n": n},
                              "pass" if witness is None else "fail", witness, tm.ms)


# Bachmann ------------------------------------------------------------------------------

@dataclass(frozen=True)
class OYT:
    """Ordered Young tableau: weak along rows and columns, strict down diagonals."""

    shape: SkewShape
    entries: tuple[int, ...]

    def _pairs(self, dr: int, dc: int) -> int:
        cell = dict(zip(self.shape.boxes, self.entries))
        return sum(1 for b, e in cell.items()
                   if cell.get(type(b)(b.row + dr, b.col + dc)) == e)

    @property
    def h(self) -> int:
        return self._pairs(0, 1)

    @property
    def v(self) -> int:
        return self._pairs(1, 0)


def oyt_array(shape: SkewShape, n: int, limit: int | None = None) -> np.ndarray:
    nbrs = neighbour_arrays(shape)
    zero = np.zeros(n + 1, dtype=np.int64)
    return kernels.fillings(nbrs, zero, zero, 1, n, default_limit() if limit is None else limit)


def enumerate_oyt(shape: SkewShape, n: int, limit: int | None = None):
    for row in oyt_array(shape, n, limit).tolist():
        yield OYT(shape, tuple(row))


def _t_polynomial(groups: Counter) -> Polynomial:
    """Sum of count * t^v * (1-t)^h * monomial over (monomial, h, v) groups."""
    t = Polynomial.var(T())
    one_minus_t = 1 - t
    out: dict = {}
    for (mono, hh, vv), count in groups.items():
        factor = (t ** vv) * (one_minus_t ** hh) * count
        for m2, c2 in factor.terms.items():
            key = tuple(sorted(mono + m2))
            out[key] = out.get(key, 0) + c2
    return Polynomial(out)


def _f_codes(shape: SkewShape, arr: np.ndarray, index) -> list[tuple[int, ...]]:
    nb = len(shape.boxes)
    codes = np.array([[F(index(e), b.content).code for b, e in zip(shape.boxes, row)] for row in arr.tolist()],
                     dtype=np.int64).reshape(len(arr), nb)
    codes.sort(axis=1)
    return list(map(tuple, codes.tolist()))


def bachmann_schur(shape: SkewShape, n: int, limit: int | None = None) -> Polynomial:
    """Sum over OYTs of t^v (1-t)^h times the product of f[k,c]."""
    arr = oyt_array(shape, n, limit).astype(np.int64)
    nb = len(shape.boxes)
    if nb == 0:
        return Polynomial.const(len(arr))
    left, up, _ = neighbour_arrays(shape)
    h = np.zeros(len(arr), dtype=np.int64)
    v = np.zeros(len(arr), dtype=np.int64)
    for k in range(nb):
        if left[k] >= 0:
            h += arr[:, k] == arr[:, left[k]]
        if up[k] >= 0:
            v += arr[:, k] == arr[:, up[k]]
    monos = _f_codes(shape, arr, lambda e: e)
    return _t_polynomial(Counter(zip(monos, h.tolist(), v.tolist())))


def bachmann_alphabet(n: int) -> MarkedAlphabet:
    """{1' < 1 < 2' < 2 < ... < n' < n} written on letters 1..2n."""
    return MarkedAlphabet(2 * n, frozenset(range(1, 2 * n, 2)))


def specialised_bachmann_side(shape: SkewShape, n: int, limit: int | None = None) -> Polynomial:
    """Supertableau sum with x[k,c] -> (1-t) f[k,c] and y[k,c] -> t f[k,c].

    Each tableau contributes t^(#primed entries) (1-t)^(#unprimed entries)
    times the product of f[k,c], so tableaux are grouped by that data before
    expanding.
    """
    alphabet = bachmann_alphabet(n)
    arr = tableau_array(shape, alphabet, limit).astype(np.int64)
    if not shape.boxes:
        return Polynomial.const(len(arr))
    primed = arr % 2 == 1
    n_y = primed.sum(axis=1).tolist()
    n_x = (~primed).sum(axis=1).tolist()
    monos = _f_codes(shape, arr, lambda e: (e + 1) // 2)
    return _t_polynomial(Counter(zip(monos, n_x, n_y)))


def verify_bachmann(shape: SkewShape, n: int, limit: int | None = None) -> VerificationReport:
    with _Timer() as tm:
        lhs = specialised_bachmann_side(shape, n, limit)
        witness = _diff_witness(lhs, bachmann_schur(shape, n, limit), "specialised sum minus OYT sum")
    return VerificationReport("bachmann", {"shape": shape.to_json(), "n": n},
                              "pass" if witness is None else "fail", witness, tm.ms)


# path bijection ------------------------------------------------------------------------

def verify_bijection(shape: SkewShape, phi: CuttingStrip | None, alphabet: MarkedAlphabet,
                     limit: int | None = None) -> VerificationReport:
    """Tableaux against independently enumerated non-intersecting path tuples."""
    inputs = {"shape": shape.to_json(), "phi": phi.to_json() if phi else None,
              "alphabet": alphabet.to_json()}
    with _Timer() as tm:
        if not shape.boxes:
            return VerificationReport("bijection", inputs, "pass", None, 0.0, {"tableaux": 1, "tuples": 1})
        decomp = cut(shape, phi)
        model = LatticeModel(alphabet, decomp.phi)
        tabs = list(enumerate_tableaux(shape, alphabet, limit))
        tuples = enumerate_path_tuples(decomp, alphabet)
        witness = None
        if len(tabs) != len(tuples):
            witness = f"{len(tabs)} tableaux but {len(tuples)} non-intersecting path tuples"
        if witness is None:
            w_tab = Counter(next(iter(weight9(t).terms)) for t in tabs)
            w_path = Counter(next(iter(tuple_weight(model, pt).terms)) for pt in tuples)
            if w_tab != w_path:
                witness = f"weight multisets differ: {sorted((w_tab - w_path).items())[:3]} vs {sorted((w_path - w_tab).items())[:3]}"
        if witness is None:
            for pt in tuples:
                t = paths_to_tableau(pt, decomp, alphabet)
                if tableau_to_paths(t, decomp) != pt:
                    witness = f"round trip changes path tuple {pt.paths}"
                    break
        if witness is None:
            for t in tabs:
                pt = tableau_to_paths(t, decomp)
                if not pt.is_disjoint():
                    witness = f"image of tableau\n{t}\nintersects"
                    break
                if paths_to_tableau(pt, decomp, alphabet) != t:
                    witness = f"round trip changes tableau\n{t}"
                    break
    return VerificationReport("bijection", inputs, "pass" if witness is None else "fail", witness, tm.ms,
                              {"tableaux": len(tabs), "tuples": len(tuples)})


# sweeps --------------------------------------------------------------------------------

def _call(job):
    fn, args = job
    return fn(*args)


def run_jobs(fn: Callable[..., VerificationReport], arg_list: Sequence[tuple], jobs: int = 1) -> list[VerificationReport]:
    """Run ``fn`` over argument tuples, optionally in worker processes.

    Results come back in the order of ``arg_list`` whatever the worker count.
    """
    if jobs <= 1 or len(arg_list) <= 1:
        return [fn(*args) for args in arg_list]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_call, [(fn, args) for args in arg_list], chunksize=4))
