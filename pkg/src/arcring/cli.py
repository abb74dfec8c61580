"""Command-line front end: ``arcring <command> [options]``.

Exit status is 0 when every check in the report passes, 1 when some check
fails, and 2 for invalid arguments.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Any

from . import __version__
from .laurent import LaurentPoly

SWEEP_MAX_N = 6
SWEEP_MAX_M = 4


class UsageError(ValueError):
    pass


def _weight(text: str, n: int, k: int):
    from .slnaction import Weight

    lam = Weight.parse(text)
    if lam.n != n or lam.k != k:
        raise UsageError(f"weight {lam} does not belong to n={n}, k={k}")
    return lam


def _matching(text: str, points):
    from .planar import Matching

    text = text.strip()
    if text.startswith("["):
        pairs = json.loads(text)
    else:
        pairs = [tuple(int(x) for x in p.split("-")) for p in text.replace(" ", "").split(",") if p]
    return Matching.from_arcs(points, pairs)


def _check_nk(args) -> None:
    from .slnaction import check_nk

    check_nk(args.n, args.k)
    if args.n > SWEEP_MAX_N and not args.allow_large:
        raise UsageError(f"n={args.n} exceeds the default bound {SWEEP_MAX_N}; pass --allow-large to run anyway")


def _poly_matrix(rows) -> list[list[str]]:
    return [[str(p) for p in r] for r in rows]


# -- commands ---------------------------------------------------------------


def cmd_catalan(args) -> tuple[bool, dict]:
    from .planar import catalan, enumerate_matchings

    ms = enumerate_matchings(args.m, max_m=max(args.m, 10) if args.allow_large else 10)
    ok = len(ms) == catalan(args.m)
    return ok, {"m": args.m, "count": len(ms), "catalan": catalan(args.m)}


def cmd_ring(args) -> tuple[bool, dict]:
    from .arc_ring import arc_ring
    from . import laurent

    if args.m > SWEEP_MAX_M and not args.allow_large:
        raise UsageError(f"m={args.m} exceeds the default bound {SWEEP_MAX_M}; pass --allow-large")
    ring = arc_ring(args.m)
    total = ring.graded_dim()
    expected = laurent.ZERO
    for b, a in ring.blocks():
        expected = expected + ring.graded_dim_block(b, a)
    counted = LaurentPoly.const(0)
    for key in ring.basis():
        counted = counted + LaurentPoly.monomial(ring.degree(key))
    out: dict[str, Any] = {
        "m": args.m,
        "matchings": len(ring.matchings),
        "basis_size": len(ring.basis()),
        "graded_dim": str(total),
    }
    if args.table:
        out["table"] = json.loads(ring.table_json())
    return counted == expected == total, out


def _relation_job(job):
    from .slnaction import verify_relation

    rel, n, k = job
    return verify_relation(rel, n, k).to_dict()


def cmd_verify_relations(args) -> tuple[bool, dict]:
    from .slnaction import RELATIONS

    _check_nk(args)
    rels = [args.relation] if args.relation else list(RELATIONS)
    for r in rels:
        if r not in RELATIONS:
            raise UsageError(f"unknown relation {r!r}; choose from {', '.join(RELATIONS)}")
    jobs = [(r, args.n, args.k) for r in rels]
    if args.threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.threads) as pool:
            reports = list(pool.map(_relation_job, jobs))
    else:
        reports = [_relation_job(j) for j in jobs]
    ok = all(not r["mismatches"] for r in reports)
    return ok, {"reports": reports}


def cmd_gram(args) -> tuple[bool, dict]:
    from .k0 import gram_matrix, gram_triangularity

    _check_nk(args)
    lam = _weight(args.lam, args.n, args.k)
    g = gram_matrix(lam)
    sym = all(g[i][j] == g[j][i] for i in range(len(g)) for j in range(len(g)))
    tri = gram_triangularity(lam)
    return sym and tri, {
        "weight": list(lam.entries),
        "basis": [a.to_json() for a in lam.matchings()],
        "matrix": _poly_matrix(g),
        "symmetric": sym,
        "triangular": tri,
    }


def cmd_canonical(args) -> tuple[bool, dict]:
    from .k0 import canonical_basis_check, k0_space, transition_Q_to_Z

    _check_nk(args)
    space = k0_space(args.n, args.k)
    report = canonical_basis_check(args.n, args.k)
    transitions = [
        {"weight": list(lam.entries), "basis": [a.to_json() for a in lam.matchings()],
         "matrix": _poly_matrix(transition_Q_to_Z(lam))}
        for lam in space.weights
    ]
    return report.ok, {"dimension": len(space), "transition": transitions, "check": report.to_dict()}


def cmd_present(args) -> tuple[bool, dict]:
    from .slnaction import PresentationError, check_presentation, monomial_presentation

    _check_nk(args)
    lam = _weight(args.lam, args.n, args.k)
    a = _matching(args.matching, lam.s)
    try:
        word = monomial_presentation(lam, a)
    except PresentationError as err:
        return False, {"weight": list(lam.entries), "matching": a.to_json(), "error": str(err)}
    ok = check_presentation(lam, a, word)
    return ok, {"weight": list(lam.entries), "matching": a.to_json(), "word": [str(t) for t in word], "verified": ok}


def cmd_braid_k0(args) -> tuple[bool, dict]:
    from .braid import euler_agrees
    from .k0 import braid_check, sigma_k0

    _check_nk(args)
    report = braid_check(args.n, args.k)
    euler = {}
    for i in range(1, args.n):
        euler[str(i)] = {str(lam): ok for lam, ok in euler_agrees(i, args.n, args.k).items()}
    euler_ok = all(all(v.values()) for v in euler.values())
    sig = {str(i): sigma_k0(i, args.n, args.k).to_json() for i in range(1, args.n)}
    return report.ok and euler_ok, {"sigma": sig, "check": report.to_dict(), "euler_characteristic": euler}


def cmd_tensor_check(args) -> tuple[bool, dict]:
    from .bimodule import composition_check, elementary_pairs

    if args.m > 3 and not args.allow_large:
        raise UsageError("tensor-check above m=3 is slow; pass --allow-large")
    pairs = elementary_pairs(args.m)
    if args.sample and args.sample < len(pairs):
        pairs = random.Random(args.seed).sample(pairs, args.sample)
    reports = [composition_check(t1, t2) for t1, t2 in pairs]
    failures = [r.to_dict() for r in reports if not r.ok]
    return not failures, {"pairs_checked": len(reports), "failures": failures}


COMMANDS = {
    "catalan": cmd_catalan,
    "ring": cmd_ring,
    "verify-relations": cmd_verify_relations,
    "gram": cmd_gram,
    "canonical": cmd_canonical,
    "present": cmd_present,
    "braid-k0": cmd_braid_k0,
    "tensor-check": cmd_tensor_check,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "text"), default="json")
    common.add_argument("--seed", type=int, default=0, help="seed for sampled sweeps")
    common.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    common.add_argument("--allow-large", action="store_true", help="lift the default size bounds")

    p = argparse.ArgumentParser(prog="arcring", description="Arc rings and the categorified sl_n action.")
    p.add_argument("--version", action="version", version=f"arcring {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("catalan", parents=[common], help="count crossingless matchings")
    s.add_argument("--m", type=int, required=True)

    s = sub.add_parser("ring", parents=[common], help="basis and graded dimension of H^m")
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--table", action="store_true", help="include the full multiplication table")

    s = sub.add_parser("verify-relations", parents=[common], help="check functor isomorphisms")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--relation", help="relation id (default: all)")

    for name, helptext in (("gram", "bilinear-form Gram matrix on one weight space"),):
        s = sub.add_parser(name, parents=[common], help=helptext)
        s.add_argument("--n", type=int, required=True)
        s.add_argument("--k", type=int, required=True)
        s.add_argument("--lambda", dest="lam", required=True, help="weight, e.g. 1,1")

    s = sub.add_parser("canonical", parents=[common], help="transition matrices and canonical-basis checks")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k", type=int, required=True)

    s = sub.add_parser("present", parents=[common], help="F-monomial word for a balanced projective")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--lambda", dest="lam", required=True)
    s.add_argument("--matching", required=True, help="arcs as 1-6,2-3 or [[1,6],[2,3]]")

    s = sub.add_parser("braid-k0", parents=[common], help="braid operators and relation checks")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k", type=int, required=True)

    s = sub.add_parser("tensor-check", parents=[common], help="composition theorem on elementary tangle pairs")
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--sample", type=int, default=0, help="check a seeded random subset of pairs")
    return p


def _render(fmt: str, command: str, ok: bool, config: dict, result: dict) -> str:
    report = {"tool": "arcring", "version": __version__, "command": command, "config": config, "ok": ok, "result": result}
    if fmt == "json":
        return json.dumps(report, indent=2, sort_keys=True)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        matrix = result.get("matrix")
        if matrix is not None:
            w.writerow(["row"] + [str(j) for j in range(len(matrix[0]) if matrix else 0)])
            for i, row in enumerate(matrix):
                w.writerow([str(i)] + row)
        else:
            w.writerow(["key", "value"])
            for key, val in result.items():
                w.writerow([key, val if isinstance(val, (int, str, bool)) else json.dumps(val, sort_keys=True)])
        return buf.getvalue().rstrip("\n")
    lines = [f"arcring {__version__} {command}: {'PASS' if ok else 'FAIL'}"]
    for key, val in result.items():
        if isinstance(val, (int, str, bool)):
            lines.append(f"  {key}: {val}")
        elif key in ("matrix", "word"):
            lines.append(f"  {key}: {json.dumps(val)}")
    return "\n".join(lines)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    config = {k: v for k, v in vars(args).items()}
    if args.threads < 1:
        parser.error("--threads must be positive")
    random.seed(args.seed)
    from .arc_ring import WeightError
    from .planar import SizeError, TangleError

    try:
        ok, result = COMMANDS[args.command](args)
    except (UsageError, WeightError, TangleError, SizeError, KeyError) as err:
        print(f"arcring: error: {err}", file=sys.stderr)
        return 2
    print(_render(args.format, args.command, ok, config, result))
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
