"""Command-line front end: ``leafduffing <command> [options]``.

Every command writes CSV (or JSON with ``--format json``) to stdout or to
``--out``. Exit status is 0 on success, 1 when a verification fails and 2
for usage or domain errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import re
import sys
from typing import Sequence

from .analysis import extrema, period_boundaries, periods, records_to_csv, residual_sweep
from .checks import GROUPS, run_checks
from .errors import IOFailure, LeafError
from .figures import build_figure
from .integrals import IntegralKind, eval_integral
from .leaf import EvalConfig, LeafKind, constants, eval_leaf, pole_of, quarter_period
from .solutions import (
    SolutionSpec,
    SolutionType,
    coefficients,
    domain,
    evaluate,
    initial_state,
    jet,
)
from .tables import DEFAULT_PRECISION, TABLE_IDS, build_table, format_number, grid

# Flags that a --config JSON file may set, with their built-in defaults.
DEFAULTS = {
    "kind": None,
    "type": None,
    "A": "1",
    "omega": "1",
    "phi": "0",
    "B": None,
    "t": None,
    "grid": None,
    "id": None,
    "precision": DEFAULT_PRECISION,
    "format": "csv",
    "out": None,
    "tol": None,
    "rel_tol": None,
    "pole_guard": None,
    "count": 6,
    "k_max": 6,
    "samples": 50,
    "n": None,
    "only": None,
}


class UsageError(Exception):
    pass


_LEAF_NAME = re.compile(r"^(sleafh|cleafh|sleaf|cleaf)(\d+)$")
_NAMED_REAL = re.compile(r"^(-?)(pi2|zeta2|eta2)(?:/([0-9.]+))?$")


def parse_real(text) -> float:
    """A float, or one of pi2, zeta2, eta2 optionally divided by a number (``pi2/2``)."""
    if isinstance(text, (int, float)):
        return float(text)
    s = str(text).strip()
    m = _NAMED_REAL.match(s)
    if m:
        value = getattr(constants(), m.group(2))
        if m.group(3):
            value /= float(m.group(3))
        return -value if m.group(1) else value
    try:
        return float(s)
    except ValueError:
        raise UsageError(f"not a number: {text!r}") from None


def parse_grid(text: str) -> list[float]:
    parts = str(text).split(":")
    if len(parts) != 3:
        raise UsageError(f"--grid expects start:stop:step, got {text!r}")
    start, stop, step = (parse_real(p) for p in parts)
    try:
        return grid(start, stop, step)
    except ValueError as exc:
        raise UsageError(f"--grid: {exc}") from None


def _common_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--precision", type=int, help="printed digits (1..15, default 9)")
    p.add_argument("--format", choices=("csv", "json"))
    p.add_argument("--out", help="write output to this file instead of stdout")
    p.add_argument("--tol", type=float, help="absolute tolerance of every evaluation")
    p.add_argument("--rel-tol", dest="rel_tol", type=float, help="relative tolerance of every evaluation")
    p.add_argument("--pole-guard", dest="pole_guard", type=float, help="closest allowed approach to a pole")
    p.add_argument("--config", help="JSON file whose keys supply defaults for these flags")
    return p


def _spec_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--type", help="solution type VIII..XIV")
    p.add_argument("--A", help="amplitude (default 1)")
    p.add_argument("--omega", help="angular frequency (default 1)")
    p.add_argument("--phi", help="phase (default 0)")
    p.add_argument("--B", help="constant of types XI-XIV; accepts pi2/2 and similar")
    return p


def _points_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--t", help="single evaluation point")
    group.add_argument("--grid", help="start:stop:step, inclusive")
    return p


def build_parser() -> argparse.ArgumentParser:
    common, spec, points = _common_parser(), _spec_parser(), _points_parser()
    parser = argparse.ArgumentParser(
        prog="leafduffing",
        description="Leaf functions and exact solutions of the unforced Duffing equation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common, spec, points],
                       help="evaluate a leaf function, integral function or solution")
    p.add_argument("--kind", help="sleafN, cleafN, sleafhN, cleafhN, SL2, SLH2 or CLH2")

    p = sub.add_parser("const", parents=[common], help="print the pole and period constants")
    p.add_argument("--n", type=int, help="also report the quarter period and poles for basis n")

    p = sub.add_parser("table", parents=[common], help="regenerate a numeric table")
    p.add_argument("--id", help="table id T1..T17")

    p = sub.add_parser("figure", parents=[common], help="emit the curve data of a figure")
    p.add_argument("--id", help="figure number 1..30")

    p = sub.add_parser("solution", parents=[common, spec, points], help="solution-family operations")
    p.add_argument("action", choices=("eval", "coeffs", "domain", "initial", "residual"))
    p.add_argument("--samples", type=int, help="interior points for the residual check (default 50)")

    p = sub.add_parser("periods", parents=[common, spec], help="oscillation windows of types XIII and XIV")
    p.add_argument("--count", type=int, help="number of windows (default 6)")

    p = sub.add_parser("extrema", parents=[common, spec], help="exact and approximate extrema of XIII and XIV")
    p.add_argument("--k-max", dest="k_max", type=int, help="highest extremum index (default 6)")

    p = sub.add_parser("verify", parents=[common], help="run the verification suite")
    p.add_argument("--only", help=f"comma-separated subset of: {', '.join(GROUPS)}")
    return parser


def _apply_config(args: argparse.Namespace) -> None:
    config = {}
    if getattr(args, "config", None):
        try:
            with open(args.config, encoding="utf-8") as fh:
                config = json.load(fh)
        except OSError as exc:
            raise IOFailure(f"cannot read config {args.config}: {exc.strerror}") from None
        except json.JSONDecodeError as exc:
            raise UsageError(f"config {args.config} is not valid JSON: {exc}") from None
        if not isinstance(config, dict):
            raise UsageError("config file must hold a JSON object")
        unknown = sorted(set(config) - set(DEFAULTS))
        if unknown:
            raise UsageError(f"unknown config keys: {', '.join(unknown)}")
    for key, default in DEFAULTS.items():
        if getattr(args, key, None) is None:
            setattr(args, key, config.get(key, default))
    if not 1 <= int(args.precision) <= 15:
        raise UsageError("--precision must be between 1 and 15")
    if args.format not in ("csv", "json"):
        raise UsageError("--format must be csv or json")


def _eval_config(args) -> EvalConfig:
    kwargs = {}
    if args.tol is not None:
        kwargs["abs_tol"] = float(args.tol)
    if args.rel_tol is not None:
        kwargs["rel_tol"] = float(args.rel_tol)
    if args.pole_guard is not None:
        kwargs["pole_guard"] = float(args.pole_guard)
    try:
        return EvalConfig(**kwargs)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _spec(args) -> SolutionSpec:
    if args.type is None:
        raise UsageError("--type is required")
    B = None if args.B is None else parse_real(args.B)
    return SolutionSpec(args.type, parse_real(args.A), parse_real(args.omega), parse_real(args.phi), B)


def _points(args) -> list[float] | None:
    if args.t is not None:
        return [parse_real(args.t)]
    if args.grid is not None:
        return parse_grid(args.grid)
    return None


def _csv(header: Sequence[str], rows: Sequence[Sequence[object]], precision: int) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([c if isinstance(c, str) else format_number(c, precision) for c in row])
    return buf.getvalue()


def _json(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=True, allow_nan=True) + "\n"


def _rows_output(args, header, rows) -> str:
    if args.format == "json":
        return _json([dict(zip(header, row)) for row in rows])
    return _csv(header, rows, args.precision)


# ----------------------------------------------------------------- commands

def _leaf_evaluator(kind_text: str, cfg: EvalConfig):
    m = _LEAF_NAME.match(kind_text.strip().lower())
    if m:
        kind, n = LeafKind.parse(m.group(1)), int(m.group(2))
        return f"{kind.value}{n}(t)", lambda t: eval_leaf(kind, n, t, cfg)
    try:
        integral = IntegralKind.parse(kind_text)
    except ValueError:
        raise UsageError(f"unknown --kind {kind_text!r}; expected e.g. sleafh2, cleaf3, SL2, SLH2, CLH2") from None
    return f"{integral.value}(t)", lambda t: eval_integral(integral, t, cfg)


def cmd_eval(args) -> str:
    cfg = _eval_config(args)
    pts = _points(args)
    if pts is None:
        raise UsageError("eval needs --t or --grid")
    if args.kind is not None and args.type is not None:
        raise UsageError("give either --kind or --type, not both")
    if args.kind is not None:
        name, fn = _leaf_evaluator(args.kind, cfg)
    elif args.type is not None:
        spec = _spec(args)
        name, fn = "x(t)", lambda t: evaluate(spec, t, cfg)
    else:
        raise UsageError("eval needs --kind or --type")
    if args.t is not None:
        value = fn(pts[0])
        if args.format == "json":
            return _json({"t": pts[0], name: value})
        return format_number(value, args.precision) + "\n"
    return _rows_output(args, ["t", name], [[t, fn(t)] for t in pts])


def cmd_const(args) -> str:
    cfg = _eval_config(args)
    c = constants(cfg)
    rows: list[list[object]] = [["zeta2", c.zeta2], ["eta2", c.eta2], ["pi2", c.pi2]]
    if args.n is not None:
        rows.append([f"quarter_period_{args.n}", quarter_period(args.n)])
        for kind in (LeafKind.SLEAFH, LeafKind.CLEAFH):
            pole = pole_of(kind, args.n, cfg)
            rows.append([f"pole_{kind.value}{args.n}", math.inf if pole is None else float(pole)])
    return _rows_output(args, ["name", "value"], rows)


def cmd_table(args) -> str:
    if args.id is None:
        raise UsageError(f"table needs --id ({TABLE_IDS[0]}..{TABLE_IDS[-1]})")
    table = build_table(str(args.id), _eval_config(args))
    if args.format == "json":
        return _json({"id": table.table_id, "header": table.header, "note": table.note,
                      "rows": [dict(zip(table.header, r)) for r in table.rows]})
    return table.to_csv(args.precision)


def cmd_figure(args) -> str:
    if args.id is None:
        raise UsageError("figure needs --id (1..30)")
    fig = build_figure(args.id, _eval_config(args))
    if args.format == "json":
        return _json({"figure": fig.figure_id,
                      "curves": [{"name": c.name, "t": c.t.tolist(), "x": c.x.tolist()} for c in fig.curves]})
    return fig.to_csv(args.precision)


def cmd_solution(args) -> tuple[str, int]:
    cfg = _eval_config(args)
    spec = _spec(args)
    action = args.action
    if action == "eval":
        pts = _points(args)
        if pts is None:
            raise UsageError("solution eval needs --t or --grid")
        header = ["t", "x(t)", "dx/dt", "d2x/dt2"]
        return _rows_output(args, header, [[t, *jet(spec, t, cfg)] for t in pts]), 0
    if action == "coeffs":
        co = coefficients(spec)
        return _rows_output(args, ["delta", "alpha", "beta", "F"], [[co.delta, co.alpha, co.beta, co.F]]), 0
    if action == "domain":
        dom = domain(spec)
        if args.format == "json":
            return _json(dom.to_dict()), 0
        rows = [["interval", iv.lo, iv.hi] for iv in dom.intervals]
        rows += [["pole", p, ""] for p in dom.poles]
        return _csv(["part", "lo", "hi"], rows, args.precision), 0
    if action == "initial":
        x0, v0 = initial_state(spec, cfg)
        return _rows_output(args, ["x0", "v0"], [[x0, v0]]), 0
    record = residual_sweep(spec, int(args.samples), cfg)
    if args.format == "json":
        out = _json({"id": record.id, "samples": record.samples, "max_deviation": record.max_deviation,
                     "tolerance": record.tolerance, "passed": record.passed})
    else:
        out = records_to_csv([record])
    return out, 0 if record.passed else 1


def _damped_type(args) -> SolutionType:
    if args.type is None:
        raise UsageError("--type XIII or --type XIV is required")
    return SolutionType.parse(args.type)


def cmd_periods(args) -> str:
    type_ = _damped_type(args)
    cfg = _eval_config(args)
    count = int(args.count)
    windows = periods(type_, count)
    located = {b.m: b.located for b in period_boundaries(type_, count, cfg)}
    rows = [[w.m, w.length, w.window[0], w.window[1], located[w.m]] for w in windows]
    return _rows_output(args, ["m", "length", "window_start", "window_end", "located_end"], rows)


def cmd_extrema(args) -> str:
    type_ = _damped_type(args)
    cfg = _eval_config(args)
    spec = _spec(args) if args.B is not None else None
    recs = extrema(type_, spec, int(args.k_max), cfg)
    rows = [[r.label, r.t_exact, r.x_exact, r.t_approx, r.x_approx] for r in recs]
    return _rows_output(args, ["number", "t_exact", "x_exact", "t_approx", "x_approx"], rows)


def cmd_verify(args) -> tuple[str, int]:
    cfg = _eval_config(args)
    only = None
    if args.only:
        only = [g.strip() for g in str(args.only).split(",") if g.strip()]
        unknown = [g for g in only if g not in GROUPS]
        if unknown:
            raise UsageError(f"unknown check group(s): {', '.join(unknown)}; choose from {', '.join(GROUPS)}")
    results = run_checks(cfg, only)
    passed = sum(r.passed for r in results)
    if args.format == "json":
        payload = {
            "passed": passed,
            "total": len(results),
            "checks": [{"group": r.group, "name": r.name, "deviation": r.deviation, "allowed": r.allowed,
                        "passed": r.passed, "failures": r.failures} for r in results],
        }
        return _json(payload), 0 if passed == len(results) else 1
    lines = []
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        lines.append(f"{status} [{r.group}] {r.name}: measured {r.deviation:.3g}, allowed {r.allowed:.3g}")
        lines.extend(f"    {f}" for f in r.failures)
    lines.append(f"{passed}/{len(results)} checks passed")
    return "\n".join(lines) + "\n", 0 if passed == len(results) else 1


COMMANDS = {
    "eval": cmd_eval,
    "const": cmd_const,
    "table": cmd_table,
    "figure": cmd_figure,
    "solution": cmd_solution,
    "periods": cmd_periods,
    "extrema": cmd_extrema,
    "verify": cmd_verify,
}


def _emit(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise IOFailure(f"cannot write {path}: {exc.strerror}") from None


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        _apply_config(args)
        args.precision = int(args.precision)
        result = COMMANDS[args.command](args)
        text, code = result if isinstance(result, tuple) else (result, 0)
        _emit(text, args.out)
        return code
    except UsageError as exc:
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return 2
    except (LeafError, ValueError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
