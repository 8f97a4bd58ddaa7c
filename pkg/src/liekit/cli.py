"""Command-line surface: run any analysis on a catalog name or a file.

Every command is a thin wrapper over the library: it resolves its input and
runs one library operation; the resulting report renders as text or JSON.
The JSON rendering is schema-stable and, for a fixed seed and input, byte
identical across runs; timing goes to stderr so it never perturbs output.

Exit codes:
    0   every certificate in the report is true
    1   a mathematical certificate failed (values are still reported)
    2   input or usage error
"""

from __future__ import annotations

import argparse
import hashlib
import json
import random
import sys
import time
from fractions import Fraction

from . import catalog
from .exactlin import Mat
from .liecore import LieAlgebra, LieError, center, series
from .extensions import (
    NilradicalMismatch,
    extend_by_derivations,
    malcev_split_solvable,
    rank_bound_of,
    standard_solvable_extension,
    togo_dim_check,
    verify_rank_bound,
)
from .structure import (
    DEFAULT_SEED,
    cartan_subalgebra,
    derivations,
    fingerprint,
    inner_derivations,
    maximal_torus,
    nilradical,
)

__all__ = ["main", "dispatch"]


class InputError(Exception):
    """Bad source, file, or parameter; maps to exit code 2."""


# ---------------------------------------------------------------------------
# source resolution and small renderers

def _resolve(src: str, rng: random.Random) -> tuple[LieAlgebra, dict]:
    """Catalog name (with optional ``name:param``) first, then file path."""
    name, _, param_text = src.partition(":")
    if name in catalog.names():
        param = None
        if param_text:
            try:
                param = int(param_text)
            except ValueError:
                raise InputError(f"{src}: parameter must be an integer") from None
        try:
            entry = catalog.get(name, param, rng=rng)
        except catalog.CatalogError as exc:
            raise InputError(str(exc)) from None
        return entry.algebra, {"name": entry.key}
    try:
        entry = catalog.load(src)
    except catalog.CatalogError as exc:
        raise InputError(str(exc)) from None
    with open(src, "rb") as fh:
        digest = hashlib.sha256(fh.read()).hexdigest()
    return entry.algebra, {"file": src, "sha256": digest}


def _rows(mat: Mat) -> list[list[str]]:
    return [[str(x) for x in row] for row in mat.data]


def _read_derivation_file(path: str, dim: int) -> tuple[list[Mat], list[str] | None]:
    try:
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror or exc}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno}: {exc.msg}") from None
    if not isinstance(raw, dict) or not isinstance(raw.get("matrices"), list):
        raise InputError(f"{path}: expected {{\"matrices\": [...]}}")
    mats = []
    for pos, rows in enumerate(raw["matrices"]):
        where = f"{path}: matrices[{pos}]"
        if not isinstance(rows, list) or len(rows) != dim \
                or any(not isinstance(r, list) or len(r) != dim for r in rows):
            raise InputError(f"{where}: expected a {dim}x{dim} matrix")
        try:
            mats.append(Mat([[Fraction(str(x)) for x in r] for r in rows]))
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"{where}: {exc}") from None
    labels = raw.get("labels")
    if labels is not None:
        if not isinstance(labels, list) or len(labels) != len(mats) \
                or any(not isinstance(s, str) for s in labels):
            raise InputError(f"{path}: labels must name each matrix")
        labels = list(labels)
    return mats, labels


# ---------------------------------------------------------------------------
# command implementations: each returns (values, certificates)

def _cmd_info(L, rng):
    return {
        "dim": L.dim,
        "basis": list(L.labels),
        "abelian": L.is_abelian(),
        "nilpotent": L.is_nilpotent(),
        "solvable": L.is_solvable(),
        "lower_central": [s.dim for s in series(L, "lower_central")],
        "derived": [s.dim for s in series(L, "derived")],
        "dim_center": center(L).dim,
        "dim_commutator": series(L, "lower_central")[1].dim,
    }, {}


def _cmd_der(L, rng):
    der = derivations(L)
    inner = inner_derivations(L)
    return {
        "dim": der.dim,
        "dim_inner": inner.dim,
        "dim_outer": der.dim - inner.dim,
    }, {}


def _cmd_nilradical(L, rng):
    nil = nilradical(L, rng)
    return {"dim": nil.dim, "basis": _rows(nil.basis)}, {}


def _cmd_cartan(L, rng):
    h = cartan_subalgebra(L, rng)
    return {"dim": h.dim, "basis": _rows(h.basis)}, {}


def _cmd_torus(L, rng):
    torus = maximal_torus(derivations(L), rng)
    return {
        "dim": torus.dim,
        "matrices": [_rows(m) for m in torus.basis],
    }, {}


def _cmd_fingerprint(L, rng):
    return dict(fingerprint(L, rng).to_dict()), {}


def _cmd_split(L, rng):
    res = malcev_split_solvable(L, rng)
    return {
        "dim": L.dim,
        "dim_M": res.M.dim,
        "added_dim": res.added_dim,
        "torus_dim": res.torus_part.dim,
        "already_split": res.added_dim == 0,
    }, {}


def _cmd_extend_standard(L, rng):
    ext = standard_solvable_extension(L, rng=rng)
    report = verify_rank_bound(ext, rng)
    values = {
        "dim": L.dim,
        "dim_total": ext.total.dim,
        "added_dim": ext.total.dim - L.dim,
        "torus_dim": ext.provenance.get("torus_dim"),
        "basis": list(ext.total.labels),
    }
    values.update(rank_bound=report.to_dict())
    return values, {"validated": ext.validated, "rank_bound_ok": report.ok}


def _cmd_extend_by(L, rng, mats, labels):
    try:
        ext = extend_by_derivations(L, mats, act_labels=labels, rng=rng)
    except NilradicalMismatch as exc:
        values = {
            "dim": L.dim,
            "generators": len(mats),
            "expected_nilradical_dim": exc.expected.dim,
            "computed_nilradical_dim": exc.computed.dim,
        }
        return values, {"nilradical_preserved": False}
    report = verify_rank_bound(ext, rng)
    values = {
        "dim": L.dim,
        "dim_total": ext.total.dim,
        "added_dim": ext.total.dim - L.dim,
        "basis": list(ext.total.labels),
        "rank_bound": report.to_dict(),
    }
    return values, {"nilradical_preserved": True, "validated": ext.validated,
                    "rank_bound_ok": report.ok}


def _cmd_rank_bound(L, rng):
    # on a bare nilpotent algebra the quotient by the nilradical is zero and
    # the bound holds vacuously, so check its standard extension instead
    if L.is_nilpotent():
        ext = standard_solvable_extension(L, rng=rng)
        report = verify_rank_bound(ext, rng)
        values = dict(report.to_dict(), checked_on="standard_extension",
                      dim_total=ext.total.dim)
    else:
        report = rank_bound_of(L, rng)
        values = dict(report.to_dict(), checked_on="input")
    certs = {"rank_ok": report.rank_ok}
    if report.codim_ok is not None:
        certs["codim_ok"] = report.codim_ok
    return values, certs


def _cmd_togo(A, B, rng):
    report = togo_dim_check(A, B)
    return report.to_dict(), {"equal": report.equal}


def _cmd_demo_snobl(rng):
    res = catalog.build_snobl_counterexample(rng)
    certs = res["certificates"]
    values = {
        "dim": certs["dim"],
        "dim_M": certs["dim_M"],
        "dim_Der": certs["dim_Der"],
        "non_isomorphic": certs["non_isomorphic"],
        "fingerprints": certs["fingerprints"],
    }
    return values, {
        "dims_are_9_9": certs["dim"] == [9, 9],
        "splitting_dims_are_9_10": certs["dim_M"] == [9, 10],
        "derivation_dims_differ": certs["dim_Der"][0] != certs["dim_Der"][1],
        "non_isomorphic": certs["non_isomorphic"],
    }


# ---------------------------------------------------------------------------
# rendering

def _scalar(value) -> str:
    if value is True or value is False or value is None:
        return json.dumps(value)
    return str(value)


def _text_lines(value, key, out):
    if isinstance(value, dict):
        for sub, item in value.items():
            _text_lines(item, f"{key}.{sub}" if key else str(sub), out)
    elif isinstance(value, list) and value \
            and all(isinstance(v, (list, dict)) for v in value):
        for pos, row in enumerate(value):
            _text_lines(row, f"{key}[{pos}]", out)
    else:
        if isinstance(value, list):
            text = "[" + ", ".join(_scalar(v) for v in value) + "]"
        else:
            text = _scalar(value)
        out.append(f"{key}: {text}")


def _render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2, sort_keys=True) + "\n"
    lines: list[str] = []
    _text_lines(report, "", lines)
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# argument grammar and dispatch

def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED,
                        help="seed for the randomized algorithms")
    common.add_argument("--output", metavar="PATH",
                        help="write the report to PATH instead of stdout")

    parser = argparse.ArgumentParser(
        prog="liekit",
        description="Exact computations with finite-dimensional Lie algebras.")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, helptext in [
        ("info", "basic invariants of an algebra"),
        ("der", "derivation algebra dimensions"),
        ("nilradical", "largest nilpotent ideal"),
        ("cartan", "a Cartan subalgebra"),
        ("torus", "maximal torus of the derivation algebra"),
        ("split", "Malcev-type splitting"),
        ("fingerprint", "isomorphism-invariant summary"),
    ]:
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("src", help="catalog name (name:param) or file path")

    p = sub.add_parser("extend", parents=[common],
                       help="build a solvable extension")
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--standard", action="store_true",
                      help="maximal torus of Der(N) acting on N")
    mode.add_argument("--by", metavar="FILE",
                      help="JSON file with derivation matrices")
    p.add_argument("src", help="catalog name (name:param) or file path")

    p = sub.add_parser("verify", parents=[common],
                       help="run a certificate check")
    vsub = p.add_subparsers(dest="check", required=True)
    v1 = vsub.add_parser("rank-bound", parents=[common])
    v1.add_argument("src")
    v2 = vsub.add_parser("togo", parents=[common])
    v2.add_argument("srcA")
    v2.add_argument("srcB")

    p = sub.add_parser("demo", parents=[common],
                       help="reproduce a known computation")
    dsub = p.add_subparsers(dest="example", required=True)
    dsub.add_parser("snobl", parents=[common])
    return parser


def dispatch(argv: list[str]) -> tuple[int, dict]:
    """Parse argv, run one command, and return (exit code, report)."""
    parser = _build_parser()
    args = parser.parse_args(argv)
    rng = random.Random(args.seed)

    started = time.monotonic()
    command = args.command
    if command == "verify":
        command = f"verify {args.check}"
    if command == "demo":
        command = f"demo {args.example}"
    report: dict = {"command": command, "seed": args.seed}

    try:
        if command == "demo snobl":
            values, certs = _cmd_demo_snobl(rng)
        elif command == "verify togo":
            a, ida = _resolve(args.srcA, rng)
            b, idb = _resolve(args.srcB, rng)
            report["input"] = {"a": ida, "b": idb}
            values, certs = _cmd_togo(a, b, rng)
        elif command == "extend":
            L, identity = _resolve(args.src, rng)
            report["input"] = identity
            if args.standard:
                values, certs = _cmd_extend_standard(L, rng)
            else:
                mats, labels = _read_derivation_file(args.by, L.dim)
                values, certs = _cmd_extend_by(L, rng, mats, labels)
        else:
            handler = {
                "info": _cmd_info,
                "der": _cmd_der,
                "nilradical": _cmd_nilradical,
                "cartan": _cmd_cartan,
                "torus": _cmd_torus,
                "split": _cmd_split,
                "fingerprint": _cmd_fingerprint,
                "verify rank-bound": _cmd_rank_bound,
            }[command]
            L, identity = _resolve(args.src, rng)
            report["input"] = identity
            values, certs = handler(L, rng)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2, report
    except LieError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2, report

    report["values"] = values
    report["certificates"] = certs
    elapsed = time.monotonic() - started
    print(f"elapsed: {elapsed:.2f}s", file=sys.stderr)

    rendered = _render(report, args.format)
    if args.output:
        try:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(rendered)
        except OSError as exc:
            print(f"error: {args.output}: {exc.strerror or exc}",
                  file=sys.stderr)
            return 2, report
    else:
        sys.stdout.write(rendered)
    return (0 if all(certs.values()) else 1), report


def main(argv: list[str] | None = None) -> int:
    try:
        code, _ = dispatch(sys.argv[1:] if argv is None else argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
