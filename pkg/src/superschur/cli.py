"""Command-line front end: ``superschur {schur,decompose,verify,paper-tables}``.

Exit codes: 0 all checks pass, 1 some check fails, 2 invalid job spec
(nothing is written to stdout), 3 the tableau guard tripped.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any, Optional, Sequence

from . import __version__
from .alphabets import MarkedAlphabet, all_alphabets, enumerate_splits, make_alphabet
from .errors import SuperSchurError, TooLarge
from .identities import (VerificationReport, bachmann_schur, run_jobs, verify_bachmann,
                         verify_bijection, verify_hg, verify_molev, verify_supersymmetry)
from .lattice import LatticeModel, lattice_svg
from .polyring import render
from .shapes import SkewShape, skew_shape, skew_shapes
from .strips import (CuttingStrip, OutsideDecomposition, cut, decompose, hash_strip, is_outside,
                     shift_table)
from .tableaux import (default_limit, parse_tableau, schur6, schur9, specialize_first,
                       weight6_factors, weight_variable)

EXIT_PASS, EXIT_FAIL, EXIT_INVALID, EXIT_GUARD = 0, 1, 2, 3
VARIATIONS = ("first", "sixth", "ninth", "bachmann")
CLAIMS = ("hg", "susy", "molev", "bachmann", "bijection")


class SpecError(ValueError):
    """The job spec is malformed; reported with exit code 2."""


@dataclass
class JobSpec:
    command: str
    shapes: list[SkewShape] = field(default_factory=list)
    alphabets: list[MarkedAlphabet] = field(default_factory=list)
    phi: Any = None
    variation: str = "ninth"
    m: Optional[int] = None
    n: Optional[int] = None
    as_json: bool = False
    limit: int = 0
    jobs: int = 1


# argument parsing ----------------------------------------------------------------------

def _int_list(text: str, what: str) -> list[int]:
    text = text.strip().strip("[]()")
    if not text:
        return []
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise SpecError(f"{what}: expected comma-separated integers, got {text!r}") from None


def _load_spec_file(path: Optional[str]) -> dict:
    if not path:
        return {}
    try:
        obj = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise SpecError(f"cannot read spec file {path}: {exc}") from None
    if not isinstance(obj, dict):
        raise SpecError("spec file must hold a JSON object")
    return obj


def _phi_selector(raw: Any) -> Any:
    """"all", "rows", "columns", a CuttingStrip, or a below-set given as "below=..."."""
    if raw is None:
        return "rows"
    if isinstance(raw, dict):
        return CuttingStrip.from_json(raw)
    raw = str(raw).strip()
    if raw in ("all", "rows", "columns"):
        return raw
    if raw.startswith("{"):
        try:
            return CuttingStrip.from_json(json.loads(raw))
        except (json.JSONDecodeError, KeyError, TypeError) as exc:
            raise SpecError(f"--phi: bad cutting strip JSON: {exc}") from None
    if raw.startswith("below="):
        return frozenset(_int_list(raw[len("below="):], "--phi below"))
    raise SpecError(f"--phi: expected all, rows, columns, JSON or below=..., got {raw!r}")


def _shapes(args, file: dict) -> list[SkewShape]:
    if getattr(args, "max_boxes", None) is not None:
        connected = True if args.command == "verify" and args.claim in ("hg", "bijection") else None
        return list(skew_shapes(args.max_boxes, 1 if connected else 0, connected))
    shape = file.get("shape", {})
    lam = _int_list(args.lam, "--lambda") if args.lam is not None else shape.get("lambda", file.get("lambda"))
    mu = _int_list(args.mu, "--mu") if args.mu is not None else shape.get("mu", file.get("mu", []))
    if lam is None:
        return []
    return [skew_shape(lam, mu)]


def _alphabets(args, file: dict) -> list[MarkedAlphabet]:
    if getattr(args, "max_letters", None) is not None:
        return all_alphabets(args.max_letters)
    alpha = file.get("alphabet", {})
    size = args.alphabet if args.alphabet is not None else alpha.get("size")
    if size is None:
        return []
    primed_raw = args.primed if args.primed is not None else alpha.get("primed", [])
    if primed_raw == "all":
        return [a for n in range(size + 1) for a in enumerate_splits(size - n, n)]
    primed = _int_list(primed_raw, "--primed") if isinstance(primed_raw, str) else list(primed_raw)
    return [make_alphabet(size, primed)]


def build_spec(args) -> JobSpec:
    """Turn parsed arguments plus an optional spec file into a validated JobSpec."""
    file = _load_spec_file(getattr(args, "spec", None))
    spec = JobSpec(args.command, as_json=args.json, jobs=max(1, getattr(args, "jobs", 1) or 1))
    spec.limit = args.max_tableaux if args.max_tableaux is not None else default_limit()
    if spec.limit < 0:
        raise SpecError("--max-tableaux must be non-negative")
    if args.command == "paper-tables":
        return spec
    spec.shapes = _shapes(args, file)
    if not spec.shapes:
        raise SpecError("a shape is required (--lambda, --spec or --max-boxes)")
    spec.alphabets = _alphabets(args, file)
    spec.phi = _phi_selector(args.phi if getattr(args, "phi", None) is not None else file.get("phi"))
    spec.variation = getattr(args, "variation", None) or file.get("variation", "ninth")
    if spec.variation not in VARIATIONS:
        raise SpecError(f"--variation must be one of {', '.join(VARIATIONS)}")
    for key in ("m", "n"):
        value = getattr(args, key, None)
        value = file.get(key) if value is None else value
        if value is not None and int(value) < 0:
            raise SpecError(f"--{key} must be non-negative")
        setattr(spec, key, None if value is None else int(value))
    return spec


# commands ------------------------------------------------------------------------------

def _emit(lines: Sequence[str]) -> None:
    sys.stdout.write("".join(line + "\n" for line in lines))


def cmd_schur(spec: JobSpec) -> int:
    shape = spec.shapes[0]
    if spec.variation == "bachmann":
        n = spec.n if spec.n is not None else (spec.alphabets[0].size if spec.alphabets else None)
        if n is None:
            raise SpecError("bachmann variation needs --n or --alphabet")
        poly, inputs = bachmann_schur(shape, n, spec.limit), {"n": n}
    else:
        if not spec.alphabets:
            raise SpecError("an alphabet is required (--alphabet)")
        if len(spec.alphabets) > 1:
            raise SpecError("schur takes a single alphabet; give --primed explicitly")
        alphabet = spec.alphabets[0]
        inputs = {"alphabet": alphabet.to_json()}
        if spec.variation == "ninth":
            poly = schur9(shape, alphabet, spec.limit)
        elif spec.variation == "sixth":
            poly = schur6(shape, alphabet, spec.limit)
        else:
            poly = specialize_first(schur9(shape, alphabet, spec.limit))
    text = render(poly)
    if spec.as_json:
        _emit([json.dumps({"variation": spec.variation, "shape": shape.to_json(), **inputs,
                           "terms": len(poly), "polynomial": text})])
    else:
        _emit([text])
    return EXIT_PASS


def _hash_label(decomp: OutsideDecomposition, p: int, q: int) -> str:
    h = hash_strip(p, q, decomp)
    return f"{'phi' if h.proper else h.kind}[{h.a},{h.d}]"


def _hash_table(decomp: OutsideDecomposition) -> list[list[str]]:
    s = len(decomp)
    return [[_hash_label(decomp, p, q) for q in range(1, s + 1)] for p in range(1, s + 1)]


def _shift_cells(decomp: OutsideDecomposition) -> list[list[Any]]:
    return [["-" if v is None else v for v in row] for row in shift_table(decomp)]


def _decomposition_json(decomp: OutsideDecomposition) -> dict:
    return {"shape": decomp.shape.to_json(), "phi": decomp.phi.to_json(),
            "strips": [{"range": [s.a, s.b], "profile": s.profile()} for s in decomp.strips],
            "outside": is_outside(decomp), "hash": _hash_table(decomp), "shift": _shift_cells(decomp)}


def _grid(rows: Sequence[Sequence[Any]]) -> list[str]:
    width = max((len(str(c)) for row in rows for c in row), default=1)
    return ["  " + " ".join(str(c).rjust(width) for c in row) for row in rows]


def cmd_decompose(spec: JobSpec, svg: Optional[str]) -> int:
    shape = spec.shapes[0]
    decomps = decompose(shape, spec.phi)
    if svg is not None:
        if len(decomps) != 1:
            raise SpecError("--svg needs a single cutting strip")
        if len(spec.alphabets) != 1:
            raise SpecError("--svg needs a single alphabet")
    if spec.as_json:
        lines = [json.dumps(_decomposition_json(d)) for d in decomps]
    else:
        lines = []
        for d in decomps:
            lines.append(f"phi {d.phi}")
            lines.append("strips " + " ".join(f"[{a},{b}]" for a, b in d.ranges()))
            lines.append(f"outside {'yes' if is_outside(d) else 'no'}")
            lines.append("hash")
            lines.extend(_grid(_hash_table(d)))
            lines.append("shift")
            lines.extend(_grid(_shift_cells(d)))
    if svg is not None:
        Path(svg).write_text(lattice_svg(LatticeModel(spec.alphabets[0], decomps[0].phi)))
    _emit(lines)
    return EXIT_PASS


def _verify_jobs(claim: str, spec: JobSpec) -> list[tuple]:
    """Argument tuples for one claim, validated before anything is enumerated."""
    if claim in ("hg", "bijection"):
        if not spec.alphabets:
            raise SpecError(f"verify {claim} needs an alphabet (--alphabet or --max-letters)")
        fn_args = []
        for shape in spec.shapes:
            if claim == "bijection" and not shape.boxes:
                fn_args.extend((shape, None, a) for a in spec.alphabets)
                continue
            for d in decompose(shape, spec.phi):
                fn_args.extend((shape, d.phi, a) for a in spec.alphabets)
        if claim == "hg":
            return [args + (True, spec.limit) for args in fn_args]
        return [args + (spec.limit,) for args in fn_args]
    if claim in ("susy", "molev"):
        if spec.m is None or spec.n is None:
            raise SpecError(f"verify {claim} needs --m and --n")
        if claim == "susy" and spec.m + spec.n < 1:
            raise SpecError("verify susy needs m + n >= 1")
        return [(shape, spec.m, spec.n, spec.limit) for shape in spec.shapes]
    if spec.n is None:
        raise SpecError("verify bachmann needs --n")
    return [(shape, spec.n, spec.limit) for shape in spec.shapes]


VERIFIERS = {"hg": verify_hg, "susy": verify_supersymmetry, "molev": verify_molev,
             "bachmann": verify_bachmann, "bijection": verify_bijection}


def cmd_verify(spec: JobSpec, claim: str) -> int:
    arg_list = _verify_jobs(claim, spec)
    reports: list[VerificationReport] = run_jobs(VERIFIERS[claim], arg_list, spec.jobs)
    failed = sum(not r.passed for r in reports)
    if spec.as_json:
        lines = [json.dumps(r.to_json()) for r in reports]
    else:
        lines = [r.line() for r in reports]
        lines.append(f"{len(reports) - failed} pass, {failed} fail")
    _emit(lines)
    return EXIT_FAIL if failed else EXIT_PASS


# running example tables ----------------------------------------------------------------

def load_golden(path: Optional[str] = None) -> dict:
    if path is None:
        text = resources.files("superschur").joinpath("data/running_example.json").read_text()
    else:
        try:
            text = Path(path).read_text()
        except OSError as exc:
            raise SpecError(f"cannot read golden file: {exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"golden file is not JSON: {exc}") from None


def compute_tables() -> dict:
    """Recompute every table of the running example from its shape, alphabet, cutting strip and tableau."""
    ref = load_golden()
    shape = SkewShape.from_json(ref["shape"])
    alphabet = MarkedAlphabet.from_json(ref["alphabet"])
    phi = CuttingStrip.from_json(ref["phi"])
    decomp = cut(shape, phi)
    t = parse_tableau(ref["tableau"], alphabet)
    if t.shape != shape or not t.is_valid():
        raise SuperSchurError("the stored tableau is not a supertableau of the stored shape")
    entry = [["s" if h.startswith("phi") else ("1" if h.startswith("null") else "0") for h in row]
             for row in _hash_table(decomp)]
    return {
        "shape": shape.to_json(),
        "alphabet": alphabet.to_json(),
        "phi": phi.to_json(),
        "sigma": [alphabet.sigma(r) for r in range(1, alphabet.size + 1)],
        "strips": [list(r) for r in decomp.ranges()],
        "hash": _hash_table(decomp),
        "entry": entry,
        "shift": _shift_cells(decomp),
        "tableau": str(t).splitlines(),
        "weight9": [str(weight_variable(alphabet, e, b.content)) for b, e in zip(t.shape.boxes, t.entries)],
        "weight6": [render(f) for f in weight6_factors(t)],
    }


def diff_tables(golden: Any, computed: Any, path: str = "") -> list[str]:
    """Cell-level differences, one line per mismatching leaf, named by its index path."""
    if isinstance(golden, dict) and isinstance(computed, dict):
        out = []
        for key in golden:
            if key == "corrections":
                continue
            if key not in computed:
                out.append(f"{path}{key}: not a computed table")
            else:
                out.extend(diff_tables(golden[key], computed[key], f"{path}{key}"))
        for key in computed:
            if key not in golden:
                out.append(f"{path}{key}: missing from golden data")
        return out
    if isinstance(golden, list) and isinstance(computed, list):
        out = []
        if len(golden) != len(computed):
            out.append(f"{path}: golden has {len(golden)} entries, computed {len(computed)}")
        for i, (g, c) in enumerate(zip(golden, computed), start=1):
            out.extend(diff_tables(g, c, f"{path}[{i}]"))
        return out
    if golden != computed or type(golden) is not type(computed):
        return [f"{path}: golden {json.dumps(golden)}, computed {json.dumps(computed)}"]
    return []


def cmd_paper_tables(spec: JobSpec, golden_path: Optional[str]) -> int:
    golden = load_golden(golden_path)
    computed = compute_tables()
    diffs = diff_tables(golden, computed)
    if spec.as_json:
        _emit([json.dumps({"status": "fail" if diffs else "pass", "tables": computed, "diff": diffs})])
    else:
        lines = []
        for key in computed:
            bad = [d for d in diffs if d.startswith(key + ":") or d.startswith(key + "[")]
            lines.append(f"{key:<9} {'ok' if not bad else 'MISMATCH'}")
            lines.extend("  " + d for d in bad)
        lines.extend("  " + d for d in diffs if not any(d.startswith(k) for k in computed))
        for c in golden.get("corrections", ()):
            lines.append(f"note: {c['table']}{c['cell']} misprint {c['misprint']} corrected to {c['value']}")
        lines.append("pass" if not diffs else f"fail ({len(diffs)} cells differ)")
        _emit(lines)
    return EXIT_FAIL if diffs else EXIT_PASS


# entry point ---------------------------------------------------------------------------

def _add_common(p: argparse.ArgumentParser, shape: bool = True) -> None:
    if shape:
        p.add_argument("--lambda", dest="lam", metavar="PARTS", help="outer partition, e.g. 3,2")
        p.add_argument("--mu", metavar="PARTS", help="inner partition, e.g. 1")
        p.add_argument("--alphabet", type=int, metavar="SIZE", help="number of letters")
        p.add_argument("--primed", metavar="LETTERS", help="primed letters, e.g. 2,3, or 'all' for every split")
        p.add_argument("--spec", metavar="FILE", help="JSON job file; explicit flags take precedence")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--max-tableaux", type=int, metavar="N",
                   help="abort enumerations beyond N fillings (default $SUPERSCHUR_MAX_TABLEAUX or 10^7)")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="superschur", description="Supersymmetric skew Schur functions.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("schur", help="print a Schur function")
    _add_common(p)
    p.add_argument("--variation", choices=VARIATIONS, default=None)
    p.add_argument("--n", type=int, help="number of letters for the bachmann variation")

    p = sub.add_parser("decompose", help="outside decomposition, hash and shift tables")
    _add_common(p)
    p.add_argument("--phi", help="all | rows | columns | JSON cutting strip | below=c1,c2,...")
    p.add_argument("--svg", metavar="FILE", help="write the lattice as SVG (needs one strip and one alphabet)")

    p = sub.add_parser("verify", help="check an identity on one or many instances")
    p.add_argument("claim", choices=CLAIMS)
    _add_common(p)
    p.add_argument("--phi", help="all | rows | columns | JSON cutting strip | below=c1,c2,...")
    p.add_argument("--m", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--max-boxes", type=int, metavar="N", help="sweep every shape with at most N boxes")
    p.add_argument("--max-letters", type=int, metavar="K", help="sweep every alphabet with at most K letters")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")

    p = sub.add_parser("paper-tables", help="recompute the running example tables and diff them")
    _add_common(p, shape=False)
    p.add_argument("--golden", metavar="FILE", help="golden JSON to compare against")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = make_parser().parse_args(argv)
    try:
        spec = build_spec(args)
        if args.command == "schur":
            return cmd_schur(spec)
        if args.command == "decompose":
            return cmd_decompose(spec, args.svg)
        if args.command == "verify":
            return cmd_verify(spec, args.claim)
        return cmd_paper_tables(spec, args.golden)
    except TooLarge as exc:
        print(f"superschur: too large: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (SuperSchurError, ValueError, KeyError, TypeError) as exc:
        print(f"superschur: invalid job: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
