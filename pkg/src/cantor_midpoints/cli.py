"""Command line interface: ``python -m cantor_midpoints <command> ...``."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import intervals as iv
from .cantor import DEFAULT_STAGE_CAP, ResourceCapError, partition, stage
from .cover import CoverError, cover_report
from .midpoint import (
    DEFAULT_PAIR_CAP,
    build_certificates,
    stage_midpoint_set,
    verify_midpoint_claims,
)
from .witness import find_witness, witness_midpoint_residual


def _caps(args) -> tuple[int, int]:
    if args.cap is None:
        return DEFAULT_STAGE_CAP, DEFAULT_PAIR_CAP
    return args.cap, args.cap


def _emit(obj, out=None) -> None:
    text = json.dumps(obj, indent=2)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def cmd_cantor(args) -> int:
    stage_cap, _ = _caps(args)
    if args.level is not None:
        st = stage(args.level, stage_cap)
        _emit({"level": st.level, "set": iv.to_records(st.set)})
    else:
        cells = partition(args.partition, stage_cap)
        _emit(
            {
                "level": args.partition,
                "cells": [{"k": c.index, "cell": iv.to_records(iv.IntervalSet._from_canonical([c.cell]))[0]} for c in cells],
            }
        )
    return 0


def cmd_midpoints(args) -> int:
    stage_cap, pair_cap = _caps(args)
    m = stage_midpoint_set(args.level, args.method, cap=pair_cap, stage_cap=stage_cap)
    out = {"level": args.level, "method": args.method, "set": iv.to_records(m), "measure": iv.format_rational(iv.measure(m))}
    if args.emit_certificates:
        out["certificates"] = [c.to_dict() for c in build_certificates(args.level)]
    _emit(out)
    return 0


def cmd_witness(args) -> int:
    stage_cap, _ = _caps(args)
    chain = find_witness(iv.parse_rational(args.z), args.depth, stage_cap)
    out = chain.to_dict()
    out["residual_bound"] = iv.format_rational(witness_midpoint_residual(chain))
    _emit(out)
    return 0


def cmd_verify(args) -> int:
    stage_cap, pair_cap = _caps(args)
    methods = ("pairwise", "selfsimilar") if args.method == "both" else (args.method,)
    reports = [verify_midpoint_claims(args.max_level, m, cap=pair_cap, stage_cap=stage_cap) for m in methods]
    passed = all(r.passed for r in reports)
    _emit({"passed": passed, "reports": [r.to_dict() for r in reports]})
    return 0 if passed else 1


def cmd_cover(args) -> int:
    stage_cap, _ = _caps(args)
    report = cover_report(args.grid, args.stage, args.depth, cap=stage_cap)
    _emit(report.to_dict(), args.out)
    return 0


def cmd_measure(args) -> int:
    stage_cap, _ = _caps(args)
    value = iv.measure(stage(args.level, stage_cap).set)
    assert value == Fraction(2, 3) ** args.level
    print(f"(2/3)^{args.level} = {iv.format_rational(value)}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--cap",
        type=int,
        default=None,
        help=f"blowup cap for stage levels and pairwise midpoint levels "
        f"(defaults {DEFAULT_STAGE_CAP} and {DEFAULT_PAIR_CAP})",
    )
    parser = argparse.ArgumentParser(
        prog="cantor-midpoints",
        description="Exact midpoint sets of Cantor stages and sphere covers.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cantor", parents=[common], help="emit a Cantor stage or partition")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--level", type=int)
    g.add_argument("--partition", type=int)
    p.set_defaults(func=cmd_cantor)

    p = sub.add_parser("midpoints", parents=[common], help="midpoint set of a Cantor stage")
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--method", choices=("pairwise", "selfsimilar"), default="pairwise")
    p.add_argument("--emit-certificates", action="store_true")
    p.set_defaults(func=cmd_midpoints)

    p = sub.add_parser("witness", parents=[common], help="nested witness chain for a midpoint")
    p.add_argument("--z", required=True, help="target as p/q")
    p.add_argument("--depth", type=int, required=True)
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("verify", parents=[common], help="check M(C_i) = (0,1) for i <= N")
    p.add_argument("--max-level", type=int, required=True)
    p.add_argument("--method", choices=("pairwise", "selfsimilar", "both"), default="pairwise")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("cover", parents=[common], help="sphere cover report")
    p.add_argument("--grid", type=int, required=True)
    p.add_argument("--stage", type=int, required=True)
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_cover)

    p = sub.add_parser("measure", parents=[common], help="exact measure of a Cantor stage")
    p.add_argument("--level", type=int, required=True)
    p.set_defaults(func=cmd_measure)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ResourceCapError as exc:
        print(f"resource cap exceeded: {exc}", file=sys.stderr)
        return 3
    except (ValueError, CoverError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
