"""Command-line interface.

Exit codes: 0 success, 1 domain failure (invalid input, failed check),
2 usage or I/O error.  Results go to stdout (or ``-o``); diagnostics to stderr.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import lattice as L
from .enumeration import BudgetExceeded, enumerate_by_ops, enumerate_oracle, verify_corollaries
from .ops import DeconstructionError, OpError, OpSequence, ReplayError, deconstruct, replay
from .polyform import DualPolyform, validate
from .render import RenderOptions, render_polyform_svg, render_svg
from .tangle import (
    Tangle, TangleError, build_tangle, check_simple, dual_polyform, enclosed_area, metrics,
)


class UsageError(Exception):
    pass


def _read_json(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None
    except json.JSONDecodeError as e:
        raise UsageError(f"malformed JSON in {path}: {e}") from None


def load_any(path: str):
    """Sniff a JSON artifact by its top-level keys."""
    obj = _read_json(path)
    if not isinstance(obj, dict):
        raise UsageError(f"{path}: expected a JSON object")
    try:
        if "steps" in obj:
            return OpSequence.from_json(obj)
        if "links" in obj:
            return Tangle.from_json(obj)
        if "cells" in obj:
            return DualPolyform.from_json(obj)
    except (KeyError, TypeError, ValueError) as e:
        raise UsageError(f"{path}: {e}") from None
    raise UsageError(f"{path}: not a polyform, tangle or operation sequence")


def _load_polyform(path: str) -> DualPolyform:
    x = load_any(path)
    if not isinstance(x, DualPolyform):
        raise UsageError(f"{path}: expected a polyform file")
    return x


def _emit(text: str, out: str | None):
    if out is None or out == "-":
        sys.stdout.write(text)
        return
    try:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as e:
        raise UsageError(f"cannot write {out}: {e.strerror}") from None


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _tiling(tag: str):
    try:
        return L.get_tiling(tag)
    except (KeyError, ValueError):
        raise UsageError(f"unknown tiling {tag!r}") from None


# ------------------------------------------------------------------ subcommands

def cmd_validate(args) -> int:
    p = _load_polyform(args.file)
    rep = validate(p)
    out = rep.to_json()
    if rep.valid:
        out["simple"] = check_simple(build_tangle(p)).simple
    _emit(_dumps(out), None)
    return 0 if rep.valid and out["simple"] else 1


def cmd_build(args) -> int:
    p = _load_polyform(args.file)
    rep = validate(p)
    if not rep.valid:
        print(f"invalid polyform: fails {', '.join(rep.failures())}", file=sys.stderr)
        return 1
    _emit(_dumps(build_tangle(p).to_json()), args.output)
    return 0


def _radius_note(radius: str) -> str:
    return "(r²)" if radius == "1" else f"(r² with r = {radius})"


def cmd_info(args) -> int:
    x = load_any(args.file)
    if isinstance(x, OpSequence):
        x = replay(x)
    if isinstance(x, DualPolyform):
        rep = validate(x)
        if not rep.valid:
            print(f"invalid polyform: fails {', '.join(rep.failures())}", file=sys.stderr)
            return 1
        p, t = x, build_tangle(x)
    else:
        t = x
        p = dual_polyform(t)
    m = metrics(t, p)
    area = enclosed_area(t)
    simple = check_simple(t).simple
    out = {"tiling": t.tiling.tag, **m.to_json(), "area": area.to_json(),
           "area_exact": f"{area} {_radius_note(args.radius)}", "area_approx": area.approx(12),
           "simple": simple}
    _emit(_dumps(out), None)
    return 0 if simple else 1


def cmd_enumerate(args) -> int:
    t = _tiling(args.tiling)
    try:
        if args.oracle:
            table = enumerate_oracle(t, 0, threads=args.threads)
            for m in range(1, args.max_size + 1):
                table.levels.update(enumerate_oracle(t, m, threads=args.threads, budget=args.budget).levels)
        else:
            table = enumerate_by_ops(t, args.max_size, threads=args.threads, budget=args.budget)
    except BudgetExceeded as e:
        raise UsageError(str(e)) from None
    if args.jsonl:
        _emit("".join(line + "\n" for line in table.jsonl_lines()), args.jsonl)
    _emit(_dumps(table.summary()), None)
    if table.incomplete:
        print("budget exceeded: table is incomplete", file=sys.stderr)
        return 2
    return 0


def cmd_deconstruct(args) -> int:
    p = _load_polyform(args.file)
    try:
        seq = deconstruct(p)
    except DeconstructionError as e:
        print(f"deconstruction failed; residual: {e.residual.to_json()}", file=sys.stderr)
        return 1
    except OpError as e:
        print(str(e), file=sys.stderr)
        return 1
    _emit(_dumps(seq.to_json()), args.output)
    return 0


def cmd_replay(args) -> int:
    seq = load_any(args.file)
    if not isinstance(seq, OpSequence):
        raise UsageError(f"{args.file}: expected an operation sequence")
    try:
        p = replay(seq)
    except ReplayError as e:
        print(str(e), file=sys.stderr)
        return 1
    _emit(_dumps(p.to_json()), args.output)
    return 0


def cmd_verify(args) -> int:
    t = _tiling(args.tiling)
    rep = verify_corollaries(t, args.max_size, threads=args.threads)
    _emit(_dumps(rep.to_json()), None)
    return 0 if rep.all_pass else 1


def cmd_render(args) -> int:
    x = load_any(args.file)
    if isinstance(x, OpSequence):
        x = replay(x)
    opts = RenderOptions(scale=args.scale, radius=float(args.radius),
                         show_polyform=args.show_polyform, show_dual_graph=args.dual_graph)
    if isinstance(x, DualPolyform):
        rep = validate(x)
        if not rep.valid:
            _emit(render_polyform_svg(x, opts, rep), args.output)
            return 1
        _emit(render_svg(build_tangle(x), x, opts), args.output)
    else:
        _emit(render_svg(x, dual_polyform(x) if args.show_polyform else None, opts), args.output)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="tangles", description="Regular Tangles: build, check, enumerate.")
    ap.add_argument("--threads", type=int, default=1, help="worker processes (results do not depend on it)")
    ap.add_argument("--radius", default="1", help="circle radius for display only")
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="check a dual polyform")
    s.add_argument("file")
    s.set_defaults(fn=cmd_validate)

    s = sub.add_parser("build", help="trace the Tangle of a polyform")
    s.add_argument("file")
    s.add_argument("-o", "--output")
    s.set_defaults(fn=cmd_build)

    s = sub.add_parser("info", help="metrics and exact area")
    s.add_argument("file")
    s.set_defaults(fn=cmd_info)

    s = sub.add_parser("enumerate", help="all Tangles up to a size")
    s.add_argument("--tiling", required=True)
    s.add_argument("--max-size", type=int, required=True)
    s.add_argument("--oracle", action="store_true", help="use the brute-force generator")
    s.add_argument("--jsonl", help="write one JSON line per Tangle")
    s.add_argument("--budget", type=int, default=None)
    s.set_defaults(fn=cmd_enumerate)

    s = sub.add_parser("deconstruct", help="operation sequence building a polyform")
    s.add_argument("file")
    s.add_argument("-o", "--output")
    s.set_defaults(fn=cmd_deconstruct)

    s = sub.add_parser("replay", help="apply an operation sequence to the circle")
    s.add_argument("file")
    s.add_argument("-o", "--output")
    s.set_defaults(fn=cmd_replay)

    s = sub.add_parser("verify", help="check every corollary over an enumeration")
    s.add_argument("--tiling", required=True)
    s.add_argument("--max-size", type=int, required=True)
    s.set_defaults(fn=cmd_verify)

    s = sub.add_parser("render", help="SVG drawing")
    s.add_argument("file")
    s.add_argument("-o", "--output")
    s.add_argument("--scale", type=float, default=40.0)
    s.add_argument("--show-polyform", action="store_true")
    s.add_argument("--dual-graph", action="store_true")
    s.set_defaults(fn=cmd_render)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    if args.threads < 1:
        print("--threads must be at least 1", file=sys.stderr)
        return 2
    for flag in ("max_size", "budget"):
        v = getattr(args, flag, None)
        if v is not None and v < 0:
            print(f"--{flag.replace('_', '-')} must be non-negative", file=sys.stderr)
            return 2
    try:
        float(args.radius)
    except ValueError:
        print(f"bad --radius {args.radius!r}", file=sys.stderr)
        return 2
    try:
        return args.fn(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (TangleError, OpError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
