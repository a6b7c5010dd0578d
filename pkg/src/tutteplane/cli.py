"""Command-line interface: evaluate, classify, plan, reduce, verify and map the Tutte plane.

Exit codes: 0 success, 1 verification or recovery failure, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import enum
import json
import re
import sys
from fractions import Fraction
from pathlib import Path
from typing import Callable, Sequence

from tutteplane import __version__
from tutteplane.atlas import TARGETS, PlanNotFound, atlas_grid, classify, plan_shift
from tutteplane.exact import (
    ConversionUndefined,
    EnumerationCapError,
    TuttePoint,
    WeightedGraph,
    tutte_bruteforce,
    tutte_delcon,
    tutte_eval,
    z_bruteforce,
    z_frontier,
    z_from_t,
)
from tutteplane.io import GraphFile, ParseError, grid_tsv, parse_3dm, read_graph
from tutteplane.multigraph import components
from tutteplane.rational import Q, approx, fmt
from tutteplane.reductions import bundle as bundles
from tutteplane.reductions.threeway import HypothesisError
from tutteplane.verify import SUITES, run_suite

OK, FAILED, USAGE = 0, 1, 2

# argparse only accepts "-3" or "-0.5" as option values; rationals such as "-1/5" and
# ranges such as "-8,8" are glued to their option before parsing.
_NEGATIVE_VALUE = re.compile(r"^-\d[\d/,.\-]*$")


class UsageError(Exception):
    pass


class Report:
    """A command's result: an ordered record for ``--json`` and text lines for humans."""

    def __init__(self, command: str, args: dict[str, object]) -> None:
        self.record: dict[str, object] = {"command": command, "args": args}
        self.lines: list[str] = []
        self.status = OK

    def put(self, key: str, value: object) -> None:
        self.record[key] = value

    def say(self, line: str = "") -> None:
        self.lines.append(line)

    def fail(self) -> None:
        self.status = FAILED


def _plain(value: object) -> object:
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, (Fraction, int)):
        return fmt(value)
    if isinstance(value, enum.Enum):
        return value.value
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    return str(value)


def _show(value: Fraction | int) -> str:
    """Exact value, with a decimal hint for non-integers or long numbers."""
    value = Q(value)
    text = fmt(value)
    if value.denominator == 1 and len(text) <= 12:
        return text
    return f"{text} (≈ {approx(value)})"


def _short(value: Fraction) -> str:
    text = fmt(value)
    return text if len(text) <= 24 else f"≈ {approx(value)}"


def rational(text: str) -> Fraction:
    try:
        return Q(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not an exact rational: {text!r}") from None


def rational_range(text: str) -> tuple[Fraction, Fraction]:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"range must be 'lo,hi', got {text!r}")
    lo, hi = rational(parts[0]), rational(parts[1])
    if lo > hi:
        raise argparse.ArgumentTypeError(f"degenerate range {text!r}: lo exceeds hi")
    return lo, hi


def int_list(text: str) -> tuple[int, ...]:
    try:
        values = tuple(int(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma list of integers, got {text!r}") from None
    if not values or any(k < 2 for k in values):
        raise argparse.ArgumentTypeError("every k must be at least 2")
    return values


# -- eval ------------------------------------------------------------------------

def cmd_eval(args: argparse.Namespace) -> Report:
    gf = read_graph(args.graph)
    g = gf.graph
    rep = Report("eval", {"graph": str(args.graph), "mode": args.mode})
    if (args.x is None) != (args.y is None):
        raise UsageError("--x and --y must be given together")
    if args.x is None and args.q is None:
        raise UsageError("give a point with --x/--y, or --q with --alpha or a weighted file")
    rep.put("n", g.n)
    rep.put("m", g.m)
    if args.x is not None:
        p = TuttePoint(args.x, args.y)
        if args.mode == "brute":
            t = tutte_bruteforce(g, p, cap=args.max_subset_edges)
        else:
            t = (tutte_delcon if args.mode == "delcon" else tutte_eval)(g, p)
        rep.put("point", {"x": p.x, "y": p.y})
        rep.put("T", t)
        rep.say(f"T(G;{fmt(p.x)},{fmt(p.y)}) = {_show(t)}")
    if args.q is not None:
        gw = _weighted(gf, args.alpha)
        z = _z_value(gw, args.q, args.mode, args.max_subset_edges)
        rep.put("q", args.q)
        rep.put("weights", "file" if gf.weights is not None and args.alpha is None else args.alpha)
        rep.put("Z", z)
        label = "w" if rep.record["weights"] == "file" else fmt(args.alpha)
        rep.say(f"Z(G;{fmt(args.q)},{label}) = {_show(z)}")
    return rep


def _weighted(gf: GraphFile, alpha: Fraction | None) -> WeightedGraph:
    if alpha is not None:
        return WeightedGraph.constant(gf.graph, alpha)
    if gf.weights is None:
        raise UsageError("the graph file has no weights; pass --alpha")
    return gf.weighted()


def _z_value(gw: WeightedGraph, q: Fraction, mode: str, cap: int | None) -> Fraction:
    if mode == "brute":
        return z_bruteforce(gw, q, cap=cap)
    if mode == "auto":
        return z_frontier(gw, q)
    # Deletion-contraction runs on T; convert back, which needs a constant non-zero weight.
    weights = set(gw.weights)
    if len(weights) > 1:
        raise UsageError("--mode delcon evaluates Z only for constant weights; use --mode auto")
    alpha = weights.pop() if weights else Fraction(1)
    if alpha == 0 or q == 0:
        raise UsageError("--mode delcon needs q != 0 and alpha != 0; use --mode auto")
    p = TuttePoint(1 + q / alpha, 1 + alpha)
    kappa = components(gw.graph)
    try:
        return z_from_t(tutte_delcon(gw.graph, p), p, gw.n, kappa)
    except ConversionUndefined as exc:
        raise UsageError(f"{exc}; use --mode auto") from None


# -- classify / plan ---------------------------------------------------------------

def cmd_classify(args: argparse.Namespace) -> Report:
    p = TuttePoint(args.x, args.y)
    rc = classify(p, witness_depth=args.witness_depth)
    rep = Report("classify", {"x": p.x, "y": p.y, "witness_depth": args.witness_depth})
    rep.put("q", p.q)
    rep.put("tag", rc.tag)
    rep.put("citation", rc.citation)
    rep.put("applicable", [
        {"tag": f.tag, "key": f.key, "provenance": f.provenance, "hypothesis": f.hypothesis} for f in rc.applicable
    ])
    rep.say(rc.tag.value)
    rep.say(f"point: ({fmt(p.x)}, {fmt(p.y)})  q = {_show(p.q)}")
    rep.say(f"citation: {rc.citation}")
    for f in rc.applicable:
        rep.say(f"  {f.tag.value:<28} {f.key} [{f.provenance.value}] {f.hypothesis}")
    return rep


def cmd_plan(args: argparse.Namespace) -> Report:
    start = TuttePoint(args.x, args.y)
    rep = Report("plan", {"x": start.x, "y": start.y, "target": args.target, "max_depth": args.max_depth, "k": list(args.k)})
    try:
        plan = plan_shift(start, args.target, max_depth=args.max_depth, ks=args.k)
    except PlanNotFound as exc:
        rep.put("plan", None)
        rep.say(f"no plan: {exc}")
        rep.fail()
        return rep
    replayed = plan.replay()
    rep.put("target_description", TARGETS[args.target][0])
    rep.put("steps", [
        {"op": s.op, "k": s.k, "x": pt.x, "y": pt.y} for s, pt in zip(plan.steps, plan.path[1:])
    ])
    rep.put("end", {"x": plan.end.x, "y": plan.end.y})
    rep.put("q_preserved", all(pt.q == start.q for pt in plan.path))
    rep.put("replay_matches", replayed == plan.end)
    rep.say(f"{len(plan.steps)}-step plan from ({fmt(start.x)}, {fmt(start.y)}) to {args.target} ({TARGETS[args.target][0]})")
    for i, (s, pt) in enumerate(zip(plan.steps, plan.path[1:]), start=1):
        rep.say(f"{i:3d}. {s}  ->  x = {_short(pt.x)}, y = {_short(pt.y)}")
    rep.say(f"end: x = {_show(plan.end.x)}")
    rep.say(f"     y = {_show(plan.end.y)}")
    rep.say(f"q preserved: {rep.record['q_preserved']}; replay matches: {rep.record['replay_matches']}")
    if not (rep.record["q_preserved"] and rep.record["replay_matches"]):
        rep.fail()
    return rep


# -- reduce --------------------------------------------------------------------

REDUCE_DEFAULTS = {
    "3waycut": {"q": Fraction(3), "alpha1": Fraction(1), "alpha2": Fraction(-1, 2)},
    "3dm": {"q": Fraction(3), "alpha1": Fraction(3), "alpha2": Fraction(-6)},
    "matchings": {"alpha1": Fraction(2), "alpha2": Fraction(-4)},
    "colourings": {"y": Fraction(-1, 2)},
    "q0": {"y": Fraction(-3)},
}


def _option(args: argparse.Namespace, kind: str, name: str) -> Fraction:
    value = getattr(args, name)
    return REDUCE_DEFAULTS[kind][name] if value is None else value


def cmd_reduce(args: argparse.Namespace) -> Report:
    kind = args.kind
    used = {name: _option(args, kind, name) for name in REDUCE_DEFAULTS[kind]}
    rep = Report("reduce", {"kind": kind, "instance": str(args.instance), **used, "run": args.run})
    bundle = _build_bundle(kind, Path(args.instance), used, args.run)
    prefix = Path(args.out) if args.out else Path(args.instance).with_name(f"{Path(args.instance).stem}.{kind}")
    graph_path, sidecar_path = bundle.write(prefix)
    rep.put("files", {"graph": str(graph_path), "params": str(sidecar_path)})
    rep.put("params", bundle.params)
    rep.say(f"wrote {graph_path} ({bundle.graph.graph.n} vertices, {bundle.graph.graph.m} edges) and {sidecar_path}")
    for key, value in bundle.params.items():
        rep.say(f"  {key} = {_short(Q(value))}")
    if args.run:
        rep.put("outcome", bundle.outcome)
        _report_outcome(rep, kind, bundle.outcome)
    return rep


def _build_bundle(kind: str, path: Path, used: dict[str, Fraction], run: bool) -> bundles.ReductionBundle:
    if kind == "3dm":
        return bundles.three_dm_bundle(parse_3dm(path.read_text()), used["q"], used["alpha1"], used["alpha2"], run)
    gf = read_graph(path)
    if kind == "3waycut":
        if len(gf.terminals) != 3:
            raise UsageError(f"a three-way cut instance needs exactly 3 't' lines, found {len(gf.terminals)}")
        return bundles.three_way_bundle(gf.graph, gf.terminals, used["q"], used["alpha1"], used["alpha2"], run)
    if kind == "matchings":
        return bundles.matchings_bundle(gf.graph, used["alpha1"], used["alpha2"], run)
    if kind == "colourings":
        return bundles.colourings_bundle(gf.graph, used["y"], run)
    if gf.weights is None:
        raise UsageError("the q0 instance must carry edge weights alpha = y-1 and alpha/k")
    return bundles.q0_bundle(gf.weighted(), used["y"], run)


def _report_outcome(rep: Report, kind: str, out: dict[str, object]) -> None:
    if kind == "3waycut":
        rep.say(f"c={out['c']} N={out['N']} residual≤1/4 (residual = {_short(out['residual'])})")
        agree = (out["c"], out["N"]) == (out["brute_force_c"], out["brute_force_N"])
        rep.say(f"brute force: c={out['brute_force_c']} N={out['brute_force_N']} ({'agrees' if agree else 'DISAGREES'})")
    elif kind in ("3dm", "matchings"):
        rep.say(f"N={out['N']} residual≤1/4 (residual = {_short(out['residual'])})")
        agree = out["N"] == out["brute_force_N"]
        rep.say(f"brute force: N={out['brute_force_N']} ({'agrees' if agree else 'DISAGREES'})")
    elif kind == "colourings":
        rep.say(f"P(G;3,0)={out['P(G;3,0)']}")
        rep.say(f"P(G;2,0)={out['P(G;2,0)']} after {out['bisections']} bisections")
        agree = out["P(G;3,0)"] == out["brute_force"]
        rep.say(f"brute force: {out['brute_force']} ({'agrees' if agree else 'DISAGREES'})")
    else:
        agree = bool(out["identity_holds"])
        rep.say(f"R(G;0,w) = {_show(out['R_original'])}")
        rep.say(f"R(G-hat;0,alpha) = {_show(out['R_stretched'])}")
        rep.say(f"stretch identity {'holds' if agree else 'FAILS'}")
    if not agree:
        rep.fail()


# -- verify / atlas-map ------------------------------------------------------------

def cmd_verify(args: argparse.Namespace) -> Report:
    rep = Report("verify", {"suite": args.suite, "max_edges": args.max_edges, "seed": args.seed})
    results = run_suite(args.suite, max_edges=args.max_edges, seed=args.seed)
    rep.put("checks", [{"name": r.name, "passed": r.passed, "total": r.total, "failures": r.failures} for r in results])
    for r in results:
        rep.say(f"{r.name:<36} {r.passed:>6}/{r.total:<6} {'ok' if r.ok else 'FAIL'}")
        for detail in r.failures:
            rep.say(f"    {detail}")
    failed = [r.name for r in results if not r.ok]
    rep.put("ok", not failed)
    rep.say("all checks passed" if not failed else f"{len(failed)} check(s) failed: {', '.join(failed)}")
    if failed:
        rep.fail()
    return rep


def cmd_atlas_map(args: argparse.Namespace) -> Report:
    if args.step <= 0:
        raise UsageError("--step must be positive")
    rep = Report("atlas-map", {"x_range": list(args.x_range), "y_range": list(args.y_range), "step": args.step})
    cells = atlas_grid(args.x_range, args.y_range, args.step)
    out = Path(args.out)
    out.write_text(grid_tsv((c.point.x, c.point.y, c.tag.value, c.citation) for c in cells))
    files = {"grid": str(out)}
    if not args.no_png:
        from tutteplane.plotting import render_atlas  # matplotlib import is slow; load only when drawing

        files["png"] = str(render_atlas(cells, out.with_suffix(".png")))
    counts: dict[str, int] = {}
    for c in cells:
        counts[c.tag.value] = counts.get(c.tag.value, 0) + 1
    rep.put("files", files)
    rep.put("cells", len(cells))
    rep.put("tag_counts", counts)
    rep.say(f"wrote {len(cells)} cells to {', '.join(files.values())}")
    for tag, count in counts.items():
        rep.say(f"  {tag:<28} {count}")
    return rep


# -- parser ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="tutteplane", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter
    )
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    ap.add_argument("--json", action="store_true", help="print a machine-readable record instead of text")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate T(G;x,y) and/or Z(G;q,w) exactly")
    p.add_argument("graph", help="graph file ('p tutte n m' format)")
    p.add_argument("--x", type=rational)
    p.add_argument("--y", type=rational)
    p.add_argument("--q", type=rational)
    p.add_argument("--alpha", type=rational, help="constant edge weight; default is the file's weights")
    p.add_argument("--mode", choices=("brute", "delcon", "auto"), default="auto")
    p.add_argument("--max-subset-edges", type=int, help="raise the subset-enumeration cap used by --mode brute")
    p.set_defaults(handler=cmd_eval)

    p = sub.add_parser("classify", help="strongest hardness tag at a point, with all applicable results")
    p.add_argument("--x", type=rational, required=True)
    p.add_argument("--y", type=rational, required=True)
    p.add_argument("--witness-depth", type=int, default=0, help="also search shift plans of this depth for a witness")
    p.set_defaults(handler=cmd_classify)

    p = sub.add_parser("plan", help="shortest stretch/thicken plan into a target region")
    p.add_argument("--x", type=rational, required=True)
    p.add_argument("--y", type=rational, required=True)
    p.add_argument("--target", choices=tuple(TARGETS), required=True)
    p.add_argument("--max-depth", type=int, default=20)
    p.add_argument("--k", type=int_list, default=(2,), help="comma list of stretch/thickening lengths (default 2)")
    p.set_defaults(handler=cmd_plan)

    p = sub.add_parser("reduce", help="build a reduction gadget and optionally run it end to end")
    p.add_argument("kind", choices=bundles.KINDS)
    p.add_argument("instance", help="graph file, or 'p 3dm n m' file for 3dm")
    for name in ("q", "alpha1", "alpha2", "y"):
        p.add_argument(f"--{name}", type=rational)
    p.add_argument("--out", help="output prefix for the .graph and .params files")
    p.add_argument("--run", action="store_true", help="evaluate exactly and recover the source count")
    p.set_defaults(handler=cmd_reduce)

    p = sub.add_parser("verify", help="run the property suites")
    p.add_argument("--suite", choices=SUITES + ("all",), default="all")
    p.add_argument("--max-edges", type=int, default=6)
    p.add_argument("--seed", type=int, default=42)
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("atlas-map", help="classify a grid of points; write TSV and PNG")
    p.add_argument("--x-range", type=rational_range, default=(Fraction(-8), Fraction(8)))
    p.add_argument("--y-range", type=rational_range, default=(Fraction(-8), Fraction(8)))
    p.add_argument("--step", type=rational, default=Fraction(1, 4))
    p.add_argument("--out", default="atlas.tsv")
    p.add_argument("--no-png", action="store_true")
    p.set_defaults(handler=cmd_atlas_map)
    return ap


def _glue_negative_values(argv: Sequence[str]) -> list[str]:
    out: list[str] = []
    for token in argv:
        if out and out[-1].startswith("--") and "=" not in out[-1] and _NEGATIVE_VALUE.match(token):
            out[-1] = f"{out[-1]}={token}"
        else:
            out.append(token)
    return out


def _emit(rep: Report, as_json: bool, write: Callable[[str], object]) -> None:
    if as_json:
        write(json.dumps(_plain(rep.record), indent=2) + "\n")
    else:
        write("\n".join(rep.lines) + "\n")


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(_glue_negative_values(sys.argv[1:] if argv is None else argv))
    try:
        rep = args.handler(args)
    except ParseError as exc:
        print(f"tutteplane: parse error: {exc}", file=sys.stderr)
        return USAGE
    except EnumerationCapError as exc:
        print(f"tutteplane: {exc} (CLI: --mode auto, or --max-subset-edges N)", file=sys.stderr)
        return USAGE
    except HypothesisError as exc:
        print(f"tutteplane: hypothesis violated: {exc}", file=sys.stderr)
        return USAGE
    except (UsageError, ValueError, OSError) as exc:
        print(f"tutteplane: {exc}", file=sys.stderr)
        return USAGE
    except ArithmeticError as exc:
        print(f"tutteplane: recovery failed: {exc}", file=sys.stderr)
        return FAILED
    _emit(rep, args.json, sys.stdout.write)
    return rep.status


if __name__ == "__main__":
    sys.exit(main())
