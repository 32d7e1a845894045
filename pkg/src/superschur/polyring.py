"""Sparse multivariate polynomials with integer coefficients.

Each variable is packed into a single int whose natural order is
(family, idx1, idx2); a monomial is the sorted tuple of its variable codes
with repetition for exponents.  This keeps products cheap (concatenate and
sort) and makes the canonical term order a plain tuple comparison.
"""

from __future__ import annotations

import re
from enum import IntEnum
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Mapping, NamedTuple, Sequence, Union

import numpy as np

from .errors import NonSquare, UnassignedVariable


class Family(IntEnum):
    X = 0
    Y = 1
    XS = 2
    YS = 3
    A = 4
    F = 5
    T = 6


_SHIFT = 21
_OFF = 1 << 20
_MASK = (1 << _SHIFT) - 1
_NAMES = {Family.X: "x", Family.Y: "y", Family.XS: "xs", Family.YS: "ys",
          Family.A: "a", Family.F: "f", Family.T: "t"}
_ARITY = {Family.X: 2, Family.Y: 2, Family.XS: 1, Family.YS: 1, Family.A: 1, Family.F: 2, Family.T: 0}
_BY_NAME = {v: k for k, v in _NAMES.items()}


def encode(family: int, idx1: int = 0, idx2: int = 0) -> int:
    if not (-_OFF <= idx1 < _OFF and -_OFF <= idx2 < _OFF):
        raise OverflowError(f"variable index out of range: {idx1}, {idx2}")
    return (int(family) << (2 * _SHIFT)) | ((idx1 + _OFF) << _SHIFT) | (idx2 + _OFF)


def family_of(code: int) -> Family:
    return Family(code >> (2 * _SHIFT))


class Variable(NamedTuple):
    family: Family
    idx1: int = 0
    idx2: int = 0

    @property
    def code(self) -> int:
        return encode(self.family, self.idx1, self.idx2)

    @classmethod
    def from_code(cls, code: int) -> "Variable":
        return cls(Family(code >> (2 * _SHIFT)), ((code >> _SHIFT) & _MASK) - _OFF, (code & _MASK) - _OFF)

    def __str__(self) -> str:
        name = _NAMES[self.family]
        arity = _ARITY[self.family]
        if arity == 2:
            return f"{name}[{self.idx1},{self.idx2}]"
        if arity == 1:
            return f"{name}[{self.idx1}]"
        return name

    # arithmetic promotes to Polynomial
    def _p(self) -> "Polynomial":
        return Polynomial.var(self)

    def __add__(self, o):
        return self._p() + o

    __radd__ = __add__

    def __sub__(self, o):
        return self._p() - o

    def __rsub__(self, o):
        return _coerce(o) - self._p()

    def __mul__(self, o):
        return self._p() * o

    __rmul__ = __mul__

    def __neg__(self):
        return -self._p()

    def __pow__(self, e: int):
        return self._p() ** e


def X(k: int, c: int) -> Variable:
    return Variable(Family.X, k, c)


def Y(l: int, c: int) -> Variable:
    return Variable(Family.Y, l, c)


def XS(k: int) -> Variable:
    return Variable(Family.XS, k, 0)


def YS(l: int) -> Variable:
    return Variable(Family.YS, l, 0)


def A(t: int) -> Variable:
    return Variable(Family.A, t, 0)


def F(k: int, c: int) -> Variable:
    return Variable(Family.F, k, c)


def T() -> Variable:
    return Variable(Family.T, 0, 0)


Monomial = tuple  # sorted tuple of variable codes
Terms = dict


def _mul_terms(a: Terms, b: Terms) -> Terms:
    if len(a) < len(b):
        a, b = b, a
    out: Terms = {}
    get = out.get
    for m2, c2 in b.items():
        if not m2:
            for m1, c1 in a.items():
                out[m1] = get(m1, 0) + c1 * c2
            continue
        for m1, c1 in a.items():
            m = tuple(sorted(m1 + m2)) if m1 else m2
            out[m] = get(m, 0) + c1 * c2
    return {m: c for m, c in out.items() if c}


def _add_into(acc: Terms, terms: Terms, scale: int = 1) -> None:
    get = acc.get
    for m, c in terms.items():
        v = get(m, 0) + scale * c
        if v:
            acc[m] = v
        else:
            acc.pop(m, None)


def monomial_key(m: Monomial):
    """Sort key putting monomials in descending graded-lex order."""
    return (-len(m), m)


class Polynomial:
    """Immutable polynomial: a mapping from monomials to nonzero ints."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, int] | None = None):
        t = {}
        if terms:
            for m, c in terms.items():
                if c:
                    key = tuple(sorted(m))
                    t[key] = t.get(key, 0) + int(c)
            t = {m: c for m, c in t.items() if c}
        self._terms = t
        self._hash = None

    @classmethod
    def _raw(cls, terms: Terms) -> "Polynomial":
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def const(cls, n: int) -> "Polynomial":
        return cls._raw({(): int(n)} if n else {})

    @classmethod
    def var(cls, v: Variable) -> "Polynomial":
        return cls._raw({(v.code,): 1})

    @classmethod
    def monomial(cls, variables: Iterable[Variable], coeff: int = 1) -> "Polynomial":
        if not coeff:
            return cls._raw({})
        return cls._raw({tuple(sorted(v.code for v in variables)): int(coeff)})

    @property
    def terms(self) -> Terms:
        return self._terms

    def items(self) -> Iterator[tuple[dict[Variable, int], int]]:
        """(exponent map, coefficient) pairs in canonical descending order."""
        for m in sorted(self._terms, key=monomial_key):
            exps: dict[Variable, int] = {}
            for code in m:
                v = Variable.from_code(code)
                exps[v] = exps.get(v, 0) + 1
            yield exps, self._terms[m]

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not m for m in self._terms)

    def constant_term(self) -> int:
        return self._terms.get((), 0)

    def degree(self) -> int:
        return max((len(m) for m in self._terms), default=-1)

    def codes(self) -> set[int]:
        return {c for m in self._terms for c in m}

    def variables(self) -> set[Variable]:
        return {Variable.from_code(c) for c in self.codes()}

    def families(self) -> set[Family]:
        return {family_of(c) for c in self.codes()}

    def degree_in(self, v: Variable) -> int:
        code = v.code
        return max((m.count(code) for m in self._terms), default=-1)

    def coefficient(self, variables: Iterable[Variable]) -> int:
        return self._terms.get(tuple(sorted(v.code for v in variables)), 0)

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self._terms == other._terms
        if isinstance(other, (int, Variable)):
            return self._terms == _coerce(other)._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __add__(self, other) -> "Polynomial":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        t = dict(self._terms)
        _add_into(t, other._terms)
        return Polynomial._raw(t)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> "Polynomial":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        t = dict(self._terms)
        _add_into(t, other._terms, -1)
        return Polynomial._raw(t)

    def __rsub__(self, other) -> "Polynomial":
        return _coerce(other) - self

    def __mul__(self, other) -> "Polynomial":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return Polynomial._raw(_mul_terms(self._terms, other._terms))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Polynomial":
        if e < 0:
            raise ValueError("negative exponent")
        out = Polynomial.const(1)
        base = self
        while e:
            if e & 1:
                out = out * base
            e >>= 1
            if e:
                base = base * base
        return out

    def leading(self, k: int = 10) -> "Polynomial":
        """The first ``k`` terms in canonical order."""
        keep = sorted(self._terms, key=monomial_key)[:k]
        return Polynomial._raw({m: self._terms[m] for m in keep})

    def __str__(self) -> str:
        return render(self)

    def __repr__(self) -> str:
        return f"Polynomial({render(self)!r})"


PolyLike = Union[Polynomial, Variable, int]


def _coerce(x) -> Polynomial:
    if isinstance(x, Polynomial):
        return x
    if isinstance(x, Variable):
        return Polynomial.var(x)
    if isinstance(x, int):
        return Polynomial.const(x)
    return NotImplemented


ZERO = Polynomial.const(0)
ONE = Polynomial.const(1)


def add(p: PolyLike, q: PolyLike) -> Polynomial:
    return _coerce(p) + _coerce(q)


def mul(p: PolyLike, q: PolyLike) -> Polynomial:
    return _coerce(p) * _coerce(q)


def neg(p: PolyLike) -> Polynomial:
    return -_coerce(p)


def _render_monomial(m: Monomial) -> str:
    parts = []
    i = 0
    while i < len(m):
        j = i
        while j < len(m) and m[j] == m[i]:
            j += 1
        name = str(Variable.from_code(m[i]))
        parts.append(name if j - i == 1 else f"{name}^{j - i}")
        i = j
    return "*".join(parts)


def render(p: Polynomial) -> str:
    """Canonical text form, terms in descending graded-lex order."""
    if not p._terms:
        return "0"
    out = []
    for m in sorted(p._terms, key=monomial_key):
        c = p._terms[m]
        mag = abs(c)
        body = _render_monomial(m)
        if not body:
            text = str(mag)
        elif mag == 1:
            text = body
        else:
            text = f"{mag}*{body}"
        if not out:
            out.append(("-" if c < 0 else "") + text)
        else:
            out.append((" - " if c < 0 else " + ") + text)
    return "".join(out)


_TOKEN = re.compile(r"\s*(?:(\d+)|([a-z]+)(?:\[(-?\d+)(?:,(-?\d+))?\])?|(\^)|([-+*()]))")


def parse(text: str) -> Polynomial:
    """Inverse of :func:`render`; also accepts parentheses."""
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        mt = _TOKEN.match(text, pos)
        if not mt or mt.end() == pos:
            raise ValueError(f"cannot parse polynomial at {text[pos:]!r}")
        pos = mt.end()
        num, name, i1, i2, caret, op = mt.groups()
        if num is not None:
            tokens.append(("num", int(num)))
        elif name is not None:
            if name not in _BY_NAME:
                raise ValueError(f"unknown variable family {name!r}")
            fam = _BY_NAME[name]
            idx = [int(i) for i in (i1, i2) if i is not None]
            if len(idx) != _ARITY[fam]:
                raise ValueError(f"{name} takes {_ARITY[fam]} indices")
            tokens.append(("var", Variable(fam, *idx)))
        elif caret:
            tokens.append(("^", None))
        else:
            tokens.append((op, None))
    tokens.append(("end", None))
    k = 0

    def peek():
        return tokens[k][0]

    def take():
        nonlocal k
        k += 1
        return tokens[k - 1]

    def expr():
        sign = 1
        if peek() in "+-":
            sign = -1 if take()[0] == "-" else 1
        acc = term() * sign
        while peek() in ("+", "-"):
            s = take()[0]
            acc = acc + term() if s == "+" else acc - term()
        return acc

    def term():
        acc = factor()
        while peek() == "*":
            take()
            acc = acc * factor()
        return acc

    def factor():
        kind, val = take()
        if kind == "num":
            base = Polynomial.const(val)
        elif kind == "var":
            base = Polynomial.var(val)
        elif kind == "(":
            base = expr()
            if take()[0] != ")":
                raise ValueError("unbalanced parentheses")
        elif kind == "-":
            return -factor()
        else:
            raise ValueError(f"unexpected token {kind!r}")
        if peek() == "^":
            take()
            kind, e = take()
            if kind != "num":
                raise ValueError("exponent must be an integer")
            base = base ** e
        return base

    out = expr()
    if peek() != "end":
        raise ValueError(f"trailing input in {text!r}")
    return out


ImageSpec = Union[Mapping[Variable, PolyLike], Callable[[Variable], "PolyLike | None"]]


def substitute(p: Polynomial, image: ImageSpec) -> Polynomial:
    """Apply the ring homomorphism sending each variable to its image.

    ``image`` is a mapping or a callable returning ``None`` for variables
    that should stay fixed.  Monomials are processed in sorted order so that
    products over shared prefixes are computed once.
    """
    if callable(image) and not isinstance(image, Mapping):
        imgs = {}
        for code in p.codes():
            r = image(Variable.from_code(code))
            if r is not None:
                imgs[code] = _coerce(r)._terms
    else:
        imgs = {v.code: _coerce(r)._terms for v, r in image.items()}
    if not imgs:
        return p
    if all(len(t) == 1 for t in imgs.values()):
        return _substitute_monomial(p, imgs)
    out: Terms = {}
    prev: Monomial = ()
    stack: list[Terms] = [{(): 1}]
    for mono in sorted(p._terms):
        common = 0
        lim = min(len(prev), len(mono))
        while common < lim and prev[common] == mono[common]:
            common += 1
        del stack[common + 1:]
        for code in mono[common:]:
            img = imgs.get(code)
            top = stack[-1]
            if img is None:
                stack.append({tuple(sorted(m + (code,))): c for m, c in top.items()})
            else:
                stack.append(_mul_terms(top, img))
        prev = mono
        _add_into(out, stack[-1], p._terms[mono])
    return Polynomial._raw(out)


def _substitute_monomial(p: Polynomial, imgs: dict[int, Terms]) -> Polynomial:
    """Fast path when every image is a single term (renamings, sign flips)."""
    single = {code: next(iter(t.items())) for code, t in imgs.items()}
    out: Terms = {}
    get = out.get
    for mono, c in p._terms.items():
        codes: list[int] = []
        for code in mono:
            hit = single.get(code)
            if hit is None:
                codes.append(code)
            else:
                codes.extend(hit[0])
                c *= hit[1]
        key = tuple(sorted(codes))
        out[key] = get(key, 0) + c
    return Polynomial._raw({m: c for m, c in out.items() if c})


_CHUNK_ROWS = 1 << 21


def _unique_rows(rows: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Index of one representative per distinct row, and each row's group id."""
    vals, dense = np.unique(rows, return_inverse=True)
    dense = dense.reshape(rows.shape).astype(np.int64)
    base, width = len(vals), rows.shape[1]
    if base ** width < (1 << 62):
        key = dense @ (base ** np.arange(width, dtype=np.int64))
        _, first, inv = np.unique(key, return_index=True, return_inverse=True)
        return first, inv.reshape(-1)
    order = np.lexsort(dense.T[::-1])
    srt = dense[order]
    new_group = np.ones(len(srt), dtype=bool)
    new_group[1:] = (srt[1:] != srt[:-1]).any(axis=1)
    gid = np.cumsum(new_group) - 1
    inv = np.empty(len(srt), dtype=np.int64)
    inv[order] = gid
    return order[new_group], inv


def expand_binomial_products(first: np.ndarray, second: np.ndarray, sign: np.ndarray) -> Polynomial:
    """Sum over rows i of the product over j of (first[i,j] + sign[i,j] * second[i,j]).

    Entries of ``first`` and ``second`` are variable codes and ``sign`` is
    +1 or -1.  Every one of the 2^columns choices is expanded with numpy and
    like terms are merged with ``np.unique``.
    """
    rows, nb = first.shape
    if nb == 0:
        return Polynomial.const(rows)
    if rows == 0:
        return Polynomial._raw({})
    bits = ((np.arange(1 << nb)[:, None] >> np.arange(nb)) & 1).astype(bool)
    step = max(1, _CHUNK_ROWS // rows)
    out: Terms = {}
    get = out.get
    for m0 in range(0, len(bits), step):
        b = bits[m0:m0 + step][:, None, :]
        codes = np.where(b, second[None], first[None]).reshape(-1, nb)
        coef = np.where(b, sign[None], 1).prod(axis=2).reshape(-1)
        codes.sort(axis=1)
        first_row, inv = _unique_rows(codes)
        sums = np.bincount(inv, weights=coef, minlength=len(first_row)).astype(np.int64)
        for mono, c in zip(map(tuple, codes[first_row].tolist()), sums.tolist()):
            out[mono] = get(mono, 0) + c
    return Polynomial._raw({m: c for m, c in out.items() if c})


def tau_shift(p: Polynomial, t: int) -> Polynomial:
    """Translate the content index of X and Y, and the index of A, by ``t``."""
    if t == 0 or not p._terms:
        return p
    delta = {Family.X: t, Family.Y: t, Family.A: t << _SHIFT}
    shifts = [delta.get(f, 0) for f in Family]
    top = 2 * _SHIFT
    return Polynomial._raw({tuple(c + shifts[c >> top] for c in m): v for m, v in p._terms.items()})


def determinant(mat: Sequence[Sequence[PolyLike]]) -> Polynomial:
    """Exact determinant by cofactor expansion along rows, memoised on column sets."""
    s = len(mat)
    if s == 0:
        return ONE
    if any(len(row) != s for row in mat):
        raise NonSquare(f"matrix rows have lengths {[len(r) for r in mat]}, expected {s}")
    m = [[_coerce(e) for e in row] for row in mat]
    memo: dict[int, Polynomial] = {}

    def minor(mask: int) -> Polynomial:
        # rows still to expand are the last popcount(mask) rows
        if mask == 0:
            return ONE
        hit = memo.get(mask)
        if hit is not None:
            return hit
        row = s - bin(mask).count("1")
        acc: Terms = {}
        sign = 1
        for j in range(s):
            if not mask >> j & 1:
                continue
            e = m[row][j]
            if e._terms:
                sub = minor(mask & ~(1 << j))
                if sub._terms:
                    _add_into(acc, _mul_terms(e._terms, sub._terms), sign)
            sign = -sign
        res = Polynomial._raw(acc)
        memo[mask] = res
        return res

    return minor((1 << s) - 1)


def eval_rational(p: Polynomial, assign: Mapping[Variable, Union[int, Fraction]]) -> Fraction:
    values = {v.code: Fraction(x) for v, x in assign.items()}
    total = Fraction(0)
    for mono, c in p._terms.items():
        term = Fraction(c)
        for code in mono:
            try:
                term *= values[code]
            except KeyError:
                raise UnassignedVariable(str(Variable.from_code(code))) from None
        total += term
    return total
