"""Command-line interface: deterministic tables for each engine capability.

    currentrep roots A2
    currentrep parabolics B2 --format csv
    currentrep induce --type A1 --S points:0,1 --P borel --W hw:1,1 --depth 3
    currentrep evalmod --factors "hw:1@0,hw:1@1"
    currentrep classify --factors "dense:0,1@0"
    currentrep verify

Exit codes: 0 success, 1 failed check in ``verify``, 2 malformed input,
3 well-formed but unsupported configuration.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction
from typing import Dict, List, Optional

from . import __version__
from .coeff import CoeffAlgebra, character_at, characters, parse_algebra
from .errors import CurrentRepError
from .parabolic import ParabolicSet, enumerate_parabolics, levi_split, members, parse_parabolic
from .roots import RootSystem, parse_type


def rat(x) -> str:
    return str(Fraction(x))


def vec(v) -> str:
    return "(" + ",".join(rat(x) for x in v) + ")"


def root_set(rs: RootSystem, mask: int) -> str:
    return " ".join(vec(rs.roots[r]) for r in members(mask))


# -- module descriptors ----------------------------------------------------------

def parse_levi_descriptor(text: str, rs: RootSystem, S: CoeffAlgebra, P: ParabolicSet):
    """``hw:<labels>`` (rank labels per character of S, in character order) or
    ``chi:<values>`` (rank x dim S table, row-major) -> a Levi module."""
    from .evalmod import tensor_eval
    from .induction import torus_module
    from .reps import LeviModuleSpec, levi_module

    kind, _, body = text.strip().partition(":")
    vals = [Fraction(x) for x in body.split(",") if x.strip()]
    levi, _, _ = levi_split(P)
    if kind == "hw":
        chars = characters(S)
        n = rs.rank
        if len(vals) != n * len(chars):
            raise ValueError(f"hw: needs {n} labels for each of the {len(chars)} characters of S")
        chunks = [(tuple(vals[k * n:(k + 1) * n]), M) for k, M in enumerate(chars)]
        if not levi:
            return torus_module(rs, S, [(lab, M.value) for lab, M in chunks])
        return levi_module(LeviModuleSpec(P, S, tuple(chunks)))
    if kind == "chi":
        if len(vals) != rs.rank * S.dim:
            raise ValueError(f"chi: needs {rs.rank} x {S.dim} values")
        chi = [vals[i * S.dim:(i + 1) * S.dim] for i in range(rs.rank)]
        return tensor_eval([], rs=rs, S=S, chi=chi, levi=levi)
    raise ValueError(f"bad Levi module descriptor {text!r}")


# -- commands ------------------------------------------------------------------

def cmd_roots(args):
    rs = parse_type(args.type)
    pos = set(rs.positive)
    rows = [{"index": r, "root": vec(v), "height": sum(v),
             "sign": "+" if r in pos else "-", "labels": vec(rs.labels(v))}
            for r, v in enumerate(rs.roots)]
    extra = {"cartan": [[rat(x) for x in row] for row in rs.cartan],
             "gram": [[rat(x) for x in row] for row in rs.gram]}
    return {"type": rs.name}, rows, extra


def cmd_parabolics(args):
    rs = parse_type(args.type)
    rows = []
    for k, P in enumerate(enumerate_parabolics(rs)):
        levi, raise_, _ = levi_split(P)
        rows.append({"index": k, "size": len(P.roots), "roots": root_set(rs, P.mask),
                     "base": " ".join(vec(rs.roots[b]) for b in P.base),
                     "T": " ".join(vec(rs.roots[b]) for b in P.base if b in P.T),
                     "levi": root_set(rs, levi), "nilradical": root_set(rs, raise_)})
    return {"type": rs.name}, rows, {"count": len(rows)}


def _induce_weights(IM, depth: int):
    seen = set(IM.w_offsets)
    frontier = sorted(seen)
    steps = [IM.rs.roots[r] for r in IM.lowering]
    while frontier:
        nxt = []
        for o in frontier:
            for root in steps:
                g = tuple(a + b for a, b in zip(o, root))
                if g not in seen and IM.ht(g) >= -depth:
                    seen.add(g)
                    nxt.append(g)
        frontier = nxt
    return sorted(seen, key=lambda g: (-IM.ht(g), tuple(-x for x in g)))


def cmd_induce(args):
    from .induction import induced_module

    rs = parse_type(args.type)
    S = parse_algebra(args.S)
    P = parse_parabolic(rs, args.P)
    if args.depth < 0:
        raise ValueError("--depth must be non-negative")
    W = parse_levi_descriptor(args.W, rs, S, P)
    IM = induced_module(P, S, W)
    rows = []
    for g in _induce_weights(IM, args.depth):
        weight = tuple(a + b for a, b in zip(IM.anchor, rs.labels(g)))
        rows.append({"height": IM.ht(g), "offset": vec(g), "weight": vec(weight),
                     "dim_M": IM.dim_verma(g), "dim_L": IM.simple_quotient_mult(g)})
    config = {"type": rs.name, "S": S.describe(), "P": args.P, "W": args.W, "depth": args.depth}
    return config, rows, {"anchor": vec(IM.anchor)}


def _tensor(args):
    from .evalmod import build_factors, parse_factors, tensor_eval

    rs = parse_type(args.type)
    parsed = parse_factors(args.factors)
    if args.window < 1:
        raise ValueError("--window must be positive")
    factors, _ = build_factors(rs, parsed, window=args.window)
    return rs, tensor_eval(factors)


def cmd_evalmod(args):
    from .evalmod import iso_canonical_form, render_canonical

    rs, T = _tensor(args)
    d = T.diagram
    offsets = sorted(d.window) if d.window is not None else d.support()
    offsets.sort(key=lambda g: (-sum(g), tuple(-x for x in g)))
    rows = [{"offset": vec(g), "weight": vec(a + b for a, b in zip(T.anchor, rs.labels(g))),
             "mult": d.mult(g)} for g in offsets]
    config = {"type": rs.name, "factors": args.factors, "window": args.window}
    return config, rows, {"canonical_form": render_canonical(iso_canonical_form(T)),
                          "finite": d.finite}


def cmd_classify(args):
    from .classifier import classify_exact, describe, trichotomy

    rs, T = _tensor(args)
    c = classify_exact(T)
    t = trichotomy(c)
    rows = [{"root": vec(v), "class": k} for v, k in describe(c)]
    extra = {"case": t.case, "provenance": "exact"}
    if t.P is not None:
        extra["parabolic"] = root_set(rs, t.P.mask)
    config = {"type": rs.name, "factors": args.factors, "window": args.window}
    return config, rows, extra


def cmd_verify(args):
    from .verify import CHECKS

    rows = []
    for k, fn in CHECKS:
        r = fn()
        rows.append({"criterion": k, "name": r.name, "passed": r.passed, "detail": r.detail})
    return {}, rows, {"passed": all(r["passed"] for r in rows)}


COMMANDS = {"roots": cmd_roots, "parabolics": cmd_parabolics, "induce": cmd_induce,
            "evalmod": cmd_evalmod, "classify": cmd_classify, "verify": cmd_verify}


# -- rendering -------------------------------------------------------------------

def _cell(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    return str(x)


def render(fmt: str, command: str, config, rows: List[Dict], extra, color: bool = False) -> str:
    meta = {"command": command, "versions": {"currentrep": __version__}, "config": config}
    meta.update(extra)
    if fmt == "json":
        return json.dumps({"meta": meta, "rows": rows}, indent=2) + "\n"
    cols = list(rows[0]) if rows else []
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        if cols:
            w.writerow(cols)
        for row in rows:
            w.writerow([_cell(row[c]) for c in cols])
        return buf.getvalue()
    lines = [f"# {k}: {json.dumps(v)}" for k, v in meta.items()]
    table = [[_cell(row[c]) for c in cols] for row in rows]
    widths = [max([len(c)] + [len(r[i]) for r in table]) for i, c in enumerate(cols)]
    header = "  ".join(c.ljust(w) for c, w in zip(cols, widths)).rstrip()
    if cols:
        lines.append(f"\x1b[1m{header}\x1b[0m" if color else header)
    for r in table:
        lines.append("  ".join(x.ljust(w) for x, w in zip(r, widths)).rstrip())
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "pretty"), default="pretty")
    common.add_argument("--out", help="write to this path instead of stdout")

    parser = argparse.ArgumentParser(prog="currentrep", description=__doc__.split("\n")[0])
    parser.add_argument("--version", action="version", version=f"currentrep {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("roots", parents=[common], help="roots and Cartan data")
    p.add_argument("type", help="A1..A4, B2 or G2")
    p = sub.add_parser("parabolics", parents=[common], help="parabolic subsets with certificates")
    p.add_argument("type")

    p = sub.add_parser("induce", parents=[common], help="weight table of M_P(W) and L_P(W)")
    p.add_argument("--type", required=True)
    p.add_argument("--S", required=True, help="points:a,b,...  trunc:n  poly:a^m,...")
    p.add_argument("--P", default="borel", help="borel, full or std:i,j")
    p.add_argument("--W", required=True, help="hw:<labels per character> or chi:<rank x dim S>")
    p.add_argument("--depth", type=int, default=3)

    for name, help_ in (("evalmod", "weight multiplicities of a tensor of evaluation modules"),
                        ("classify", "locally finite and injective roots")):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("--type", default="A1")
        p.add_argument("--factors", required=True,
                       help='e.g. "hw:1@0,dense:0,1@1" (dense factors need A1)')
        p.add_argument("--window", type=int, default=10)

    sub.add_parser("verify", parents=[common], help="run the invariant suite")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config, rows, extra = COMMANDS[args.command](args)
    except CurrentRepError as exc:
        print(f"currentrep: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"currentrep: invalid input: {exc}", file=sys.stderr)
        return 2
    color = (args.out is None and args.format == "pretty" and "NO_COLOR" not in os.environ
             and sys.stdout.isatty())
    text = render(args.format, args.command, config, rows, extra, color)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.command == "verify" and not extra["passed"]:
        return 1
    return 0
