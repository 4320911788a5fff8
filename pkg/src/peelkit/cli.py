"""Command-line interface: count, depth, generate, bounds, verify, plot.

Counts print as full decimal strings and enclosures as exact rational
[lo, hi] pairs with a clearly labeled decimal approximation; nothing is
ever rounded silently.  Exit codes: 0 success, 1 verification failure,
2 input error, 3 resource budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import __version__
from .bounds import Interval, bound_report, count_upper_bound
from .construction import build
from .defense import base_set, depth_oracle, gale_set, open_halfspace_depth
from .errors import (
    CertificationError,
    InputError,
    PeelkitError,
    ResourceBudgetError,
)
from .peeling import peel_count, peel_count_naive, peel_enumerate, simplified_census
from .plotting import plot_pointset
from .pointset import PointSet
from .serialize import load_pointset, save_pointset
from .verify import SUITES, run_suite


@dataclass
class RunReport:
    command: list[str]
    outputs: dict = field(default_factory=dict)
    verdicts: dict = field(default_factory=dict)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return all(bool(v) for v in self.verdicts.values())

    def to_payload(self) -> dict:
        return {
            "command": self.command,
            "outputs": self.outputs,
            "verdicts": self.verdicts,
            "seconds": round(self.seconds, 4),
        }


def _interval_payload(iv: Interval, digits: int = 12) -> dict:
    return {
        "lo": str(iv.lo),
        "hi": str(iv.hi),
        "exact": iv.is_exact,
        "approx": iv.approx(digits),
    }


def _parse_coords(text: str, dim: int | None = None) -> tuple[Fraction, ...]:
    parts = [p.strip() for p in text.split(",") if p.strip()]
    try:
        coords = tuple(Fraction(p) for p in parts)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"not a rational coordinate list: {text!r}") from exc
    if dim is not None and len(coords) != dim:
        raise InputError(f"expected {dim} coordinates, got {len(coords)} in {text!r}")
    return coords


def _emit(report: RunReport, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(report.to_payload(), indent=2))
        return
    for key, value in report.outputs.items():
        print(f"{key}: {_render_text(value)}")
    for key, value in report.verdicts.items():
        print(f"{key}: {'pass' if value else 'FAIL'}")
    print(f"elapsed: {report.seconds:.3f}s")


def _render_text(value) -> str:
    if isinstance(value, dict) and {"lo", "hi"} <= set(value):
        tag = "exactly" if value.get("exact") else "approx."
        return f"[{value['lo']}, {value['hi']}] ({tag} {value['approx']})"
    if isinstance(value, list):
        if value and all(isinstance(v, list) for v in value):
            return "; ".join("(" + ",".join(str(x) for x in v) + ")" for v in value)
        if value and all(isinstance(v, dict) for v in value):
            return "".join("\n  " + _render_text(v) for v in value)
        return " ".join(_render_text(v) for v in value)
    if isinstance(value, dict):
        return ", ".join(f"{k}={_render_text(v)}" for k, v in value.items())
    return str(value)


# ----------------------------------------------------------------- commands


def _cmd_count(args) -> RunReport:
    report = RunReport(command=["count", args.input])
    loaded = load_pointset(args.input)
    P = loaded.points
    result = peel_count(P)
    report.outputs["count"] = str(result.count)
    report.outputs["states"] = result.states_visited
    if args.naive:
        oracle = peel_count_naive(P)
        report.outputs["naive_count"] = str(oracle)
        report.verdicts["naive_agrees"] = oracle == result.count
    if args.enumerate:
        seqs = peel_enumerate(P, args.enumerate)
        report.outputs["first_sequences"] = [list(s) for s in seqs]
    if P.blocks is not None and len(set(P.blocks)) > 1:
        census = simplified_census(P, limit=max(len(P), 14))
        report.outputs["distinct_block_sequences"] = str(census.distinct_sequences)
        report.outputs["max_active_blocks"] = census.max_active_blocks
    return report


def _cmd_depth(args) -> RunReport:
    report = RunReport(command=["depth", args.input])
    loaded = load_pointset(args.input)
    P = loaded.points
    origin = _parse_coords(args.origin, P.dim) if args.origin else (Fraction(0),) * P.dim
    got = open_halfspace_depth(P, origin)
    report.outputs["depth"] = got.depth
    report.outputs["witness_direction"] = [str(c) for c in got.witness]
    if args.oracle:
        other = depth_oracle(P, origin)
        report.outputs["oracle_depth"] = other
        report.verdicts["oracle_agrees"] = other == got.depth
    return report


def _cmd_generate(args) -> RunReport:
    report = RunReport(command=["generate", args.kind])
    meta: dict = {"kind": args.kind, "d": args.d, "m": args.m, "seed": args.seed}
    tree = None
    if args.kind == "gale":
        P = gale_set(args.d, args.m)
        report.verdicts["depth_certified"] = True
        report.outputs["depth"] = args.m
    elif args.kind == "base-set":
        bs = base_set(args.d, args.m)
        P = bs.points
        meta["scaling_radii"] = [str(r) for r in bs.scaling_radii]
        report.verdicts["defends_m_steps"] = True
    else:  # construction
        if args.n is None:
            raise InputError("construction needs -n")
        meta["n"] = args.n
        result = build(args.d, args.m, args.n)  # certification failure raises: no file
        P = result.points
        tree = result.tree
        meta["delta"] = None if result.delta is None else str(result.delta)
        meta["eps"] = None if result.eps is None else str(result.eps)
        meta["certified_up_to"] = result.certified_up_to
        if result.report is not None:
            report.verdicts["certified"] = result.report.passed
            report.outputs["count"] = str(result.report.peel_total)
            report.outputs["block_bound"] = str(result.report.block_bound)
            report.outputs["max_active_blocks"] = result.report.max_active_blocks
        else:
            report.verdicts["certified_up_to_audit_limit"] = True
            report.outputs["certified_up_to"] = result.certified_up_to
    report.outputs["points"] = len(P)
    save_pointset(args.out, P, meta=meta, tree=tree)
    report.outputs["file"] = str(args.out)
    if args.plot:
        svg = Path(args.out).with_suffix(".svg")
        plot_pointset(P, svg, title=f"{args.kind} d={args.d} m={args.m}")
        report.outputs["figure"] = str(svg)
    return report


def _cmd_bounds(args) -> RunReport:
    report = RunReport(command=["bounds", f"d={args.d}"])
    rep = bound_report(args.d, m=args.m, n=args.n)
    report.outputs["defense_number"] = rep.defense_number
    report.outputs["m"] = rep.m
    report.outputs["growth_base"] = _interval_payload(rep.growth_base)
    report.outputs["constant"] = _interval_payload(rep.constant_c)
    report.outputs["log_rule_m"] = rep.log_rule_m
    if rep.optimal_m is not None:
        report.outputs["optimal_m"] = rep.optimal_m
    if rep.bound_value is not None:
        report.outputs["count_upper_bound"] = _interval_payload(rep.bound_value)
    return report


def _cmd_verify(args) -> RunReport:
    report = RunReport(command=["verify", args.suite, f"seed={args.seed}"])
    all_pass = True
    lines = []
    for suite in run_suite(args.suite, args.seed):
        for check in suite.checks:
            all_pass &= check.passed
            lines.append(
                {
                    "suite": suite.suite,
                    "check": check.name,
                    "passed": check.passed,
                    "seconds": round(check.seconds, 3),
                    "detail": check.detail,
                }
            )
    report.outputs["checks"] = lines
    report.verdicts["all_checks_passed"] = all_pass
    return report


def _cmd_plot(args) -> RunReport:
    report = RunReport(command=["plot", args.input])
    loaded = load_pointset(args.input)
    out = Path(args.out) if args.out else Path(args.input).with_suffix(".svg")
    projection = None
    if args.projection:
        i, j = (int(x) for x in _parse_coords(args.projection))
        projection = (i, j)
    path = plot_pointset(loaded.points, out, projection=projection)
    report.outputs["figure"] = str(path)
    return report


# ------------------------------------------------------------------- parser


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="peelkit",
        description="Exact construction, certification, and counting of convex-hull "
        "peeling sequences.",
    )
    parser.add_argument("--version", action="version", version=f"peelkit {__version__}")
    sub = parser.add_subparsers(dest="cmd", required=True)

    def common(p):
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("count", help="count peeling sequences of a point-set file")
    p.add_argument("input")
    p.add_argument("--naive", action="store_true", help="cross-check with full enumeration")
    p.add_argument("--enumerate", type=int, metavar="K", help="print the first K sequences")
    common(p)
    p.set_defaults(handler=_cmd_count)

    p = sub.add_parser("depth", help="open-halfspace depth of a point in a file's set")
    p.add_argument("input")
    p.add_argument("--origin", help="comma-separated rational coordinates (default all-zero)")
    p.add_argument("--oracle", action="store_true", help="cross-check with the LP oracle")
    common(p)
    p.set_defaults(handler=_cmd_depth)

    p = sub.add_parser("generate", help="write a certified point-set file")
    p.add_argument("kind", choices=("gale", "base-set", "construction"))
    p.add_argument("-d", type=int, required=True, help="dimension")
    p.add_argument("-m", type=int, required=True, help="defended peeling steps")
    p.add_argument("-n", type=int, help="construction size (construction only)")
    p.add_argument("--out", required=True)
    p.add_argument("--plot", action="store_true", help="also write an SVG next to the file")
    common(p)
    p.set_defaults(handler=_cmd_generate)

    p = sub.add_parser("bounds", help="growth bases, optimal step counts, count bounds")
    p.add_argument("-d", type=int, required=True)
    p.add_argument("-m", type=int)
    p.add_argument("-n", type=int)
    common(p)
    p.set_defaults(handler=_cmd_bounds)

    p = sub.add_parser("verify", help="run a deterministic property suite")
    p.add_argument("suite", choices=("all",) + SUITES)
    common(p)
    p.set_defaults(handler=_cmd_verify)

    p = sub.add_parser("plot", help="render a point-set file to SVG")
    p.add_argument("input")
    p.add_argument("--out")
    p.add_argument("--projection", help="axes pair for d>2, e.g. 0,2")
    common(p)
    p.set_defaults(handler=_cmd_plot)

    return parser


def _emit_error(exc: PeelkitError, code: int, fmt: str) -> None:
    if fmt == "json":
        payload = {"error": {"type": type(exc).__name__, "message": str(exc), "exit": code}}
        print(json.dumps(payload, indent=2), file=sys.stderr)
    else:
        print(f"error ({type(exc).__name__}): {exc}", file=sys.stderr)


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    fmt = getattr(args, "format", "text")
    t0 = time.perf_counter()
    try:
        report = args.handler(args)
    except InputError as exc:
        _emit_error(exc, 2, fmt)
        return 2
    except ResourceBudgetError as exc:
        _emit_error(exc, 3, fmt)
        return 3
    except CertificationError as exc:
        _emit_error(exc, 1, fmt)
        return 1
    except PeelkitError as exc:
        _emit_error(exc, 1, fmt)
        return 1
    report.seconds = time.perf_counter() - t0
    _emit(report, fmt)
    return 0 if report.ok else 1


if __name__ == "__main__":
    sys.exit(main())
