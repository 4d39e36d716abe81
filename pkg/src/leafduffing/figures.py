"""Curve data for the thirty published figures, emitted as CSV column groups.

Each curve is sampled on its own grid of 400 points. Solution curves stop
short of any pole so that the leaf-function phase stays at least
``pole_guard`` away from it. Nothing is rendered; the output is meant for an
external plotting tool.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .leaf import DEFAULT_CONFIG, EvalConfig, LeafKind, constants, eval_leaf
from .integrals import IntegralKind, eval_integral
from .solutions import SolutionSpec, SolutionType, domain, evaluate
from .tables import format_number

POINTS = 400


@dataclass(frozen=True)
class Curve:
    name: str
    t: np.ndarray
    x: np.ndarray


@dataclass(frozen=True)
class FigureData:
    figure_id: int
    curves: tuple[Curve, ...]

    def to_csv(self, precision: int = 9) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        header = []
        for c in self.curves:
            header += [f"{c.name}:t", f"{c.name}:x"]
        writer.writerow(header)
        rows = max(len(c.t) for c in self.curves)
        for i in range(rows):
            line = []
            for c in self.curves:
                if i < len(c.t):
                    line += [format_number(float(c.t[i]), precision), format_number(float(c.x[i]), precision)]
                else:
                    line += ["", ""]
            writer.writerow(line)
        return buf.getvalue()


def _phase_speed(spec: SolutionSpec, t: float) -> float:
    """|d phase / dt| at ``t``; used to turn the phase guard into a t margin."""
    if spec.type.needs_B:
        return abs(spec.omega * spec.B * math.exp(spec.omega * t))
    return abs(spec.omega)


def solution_window(spec: SolutionSpec, cfg: EvalConfig) -> tuple[float, float]:
    """Finite t-range for plotting ``spec``.

    Finite domain ends are pulled in until the phase clears the pole by twice
    ``pole_guard``. Open ends are cut 6/|omega| from the other end, and
    everywhere-finite solutions use [-3, 3.3]/|omega|.
    """
    iv = domain(spec).intervals[0]
    span = 1.0 / abs(spec.omega)
    lo, hi = iv.lo, iv.hi
    if not math.isfinite(lo) and not math.isfinite(hi):
        return -3.0 * span, 3.3 * span
    if math.isfinite(lo):
        lo += 2 * cfg.pole_guard / min(1.0, _phase_speed(spec, lo))
    if math.isfinite(hi):
        hi -= 2 * cfg.pole_guard / min(1.0, _phase_speed(spec, hi))
    if not math.isfinite(lo):
        lo = hi - 6 * span
    if not math.isfinite(hi):
        hi = lo + 6 * span
    return lo, hi


def _sample(name: str, fn: Callable[[float], float], lo: float, hi: float) -> Curve:
    t = np.linspace(lo, hi, POINTS)
    x = np.empty_like(t)
    for i, ti in enumerate(t):
        x[i] = fn(float(ti))
    return Curve(name, t, x)


def _solution_curve(name: str, spec: SolutionSpec, cfg: EvalConfig) -> Curve:
    lo, hi = solution_window(spec, cfg)
    return _sample(name, lambda t: evaluate(spec, t, cfg), lo, hi)


def _leaf_window(kind: LeafKind, cfg: EvalConfig) -> tuple[float, float]:
    c = constants(cfg)
    pole = c.zeta2 if kind is LeafKind.SLEAFH else c.eta2
    edge = pole - 2 * cfg.pole_guard
    return -edge, edge


def _sweep(type_: SolutionType, cfg: EvalConfig, base: dict, key: str, values) -> list[Curve]:
    curves = []
    for v in values:
        params = dict(base)
        params[key] = v
        spec = SolutionSpec(type_, **params)
        curves.append(_solution_curve(f"{key}={v:g}", spec, cfg))
    return curves


PLUS_MINUS_123 = (1.0, -1.0, 2.0, -2.0, 3.0, -3.0)
PLUS_MINUS_OMEGA = (1.1, -1.1, 1.2, -1.2, 1.3, -1.3)


def _companions(window: tuple[float, float], cfg: EvalConfig, names: list[str]) -> list[Curve]:
    """Reference curves drawn next to a solution, on the solution's window."""
    lo, hi = window
    eta_lo, eta_hi = _leaf_window(LeafKind.CLEAFH, cfg)
    zeta_lo, zeta_hi = _leaf_window(LeafKind.SLEAFH, cfg)
    table = {
        "cosh": (math.cosh, lo, hi),
        "sinh": (math.sinh, lo, hi),
        "exp": (math.exp, lo, hi),
        "-exp": (lambda t: -math.exp(t), lo, hi),
        "cleafh2": (lambda t: eval_leaf(LeafKind.CLEAFH, 2, t, cfg), max(lo, eta_lo), min(hi, eta_hi)),
        "sleafh2": (lambda t: eval_leaf(LeafKind.SLEAFH, 2, t, cfg), max(lo, zeta_lo), min(hi, zeta_hi)),
        "CLH2": (lambda t: eval_integral(IntegralKind.CLH2, t, cfg), max(lo, eta_lo), min(hi, eta_hi)),
        "sqrt(1+cleafh2^2)": (lambda t: math.sqrt(1 + eval_leaf(LeafKind.CLEAFH, 2, t, cfg) ** 2),
                              max(lo, eta_lo), min(hi, eta_hi)),
        "sqrt(1-sleaf2^2)": (lambda t: math.sqrt(max(0.0, 1 - eval_leaf(LeafKind.SLEAF, 2, t, cfg) ** 2)), lo, hi),
    }
    return [_sample(n, *table[n]) for n in names]


def _build(figure_id: int, cfg: EvalConfig) -> list[Curve]:
    VIII, IX, X, XI, XII, XIII, XIV = list(SolutionType)
    half_pi2 = constants(cfg).pi2 / 2

    if figure_id == 1:
        out = []
        for kind, integral in ((LeafKind.SLEAFH, IntegralKind.SLH2), (LeafKind.CLEAFH, IntegralKind.CLH2)):
            lo, hi = _leaf_window(kind, cfg)
            out.append(_sample(f"{kind.value}2", lambda t, k=kind: eval_leaf(k, 2, t, cfg), lo, hi))
            out.append(_sample(integral.value, lambda t, k=integral: eval_integral(k, t, cfg), lo, hi))
        return out

    # Divergent families: a companion figure followed by A and omega sweeps.
    blocks = {
        2: (VIII, ["cosh", "cleafh2", "CLH2"]),
        5: (IX, ["sinh", "cleafh2", "CLH2"]),
        8: (X, ["cosh", "cleafh2", "sqrt(1+cleafh2^2)", "sqrt(1-sleaf2^2)"]),
    }
    for first, (type_, names) in blocks.items():
        base = dict(A=1.0, omega=1.0, phi=0.0)
        if figure_id == first:
            spec = SolutionSpec(type_, **base)
            main = _solution_curve(type_.value, spec, cfg)
            return [main] + _companions(solution_window(spec, cfg), cfg, names)
        if figure_id == first + 1:
            return _sweep(type_, cfg, base, "A", PLUS_MINUS_123)
        if figure_id == first + 2:
            return _sweep(type_, cfg, base, "omega", PLUS_MINUS_123)

    exp_blocks = {11: (XI, ["sinh", "sleafh2"]), 16: (XII, ["exp", "cleafh2"])}
    for first, (type_, names) in exp_blocks.items():
        b1 = dict(A=1.0, omega=1.0, phi=-1.0, B=1.0)
        b2 = dict(A=1.0, omega=1.0, phi=-2.0, B=2.0)
        if figure_id == first:
            spec = SolutionSpec(type_, **b1)
            main = _solution_curve(type_.value, spec, cfg)
            return [main] + _companions(solution_window(spec, cfg), cfg, names)
        offset = figure_id - first
        if offset in (1, 2, 3, 4):
            base = b1 if offset in (1, 2) else b2
            if offset in (1, 3):
                return _sweep(type_, cfg, base, "A", PLUS_MINUS_123)
            return _sweep(type_, cfg, base, "omega", PLUS_MINUS_OMEGA)

    for first, type_ in ((21, XIII), (26, XIV)):
        base = dict(A=1.0, omega=1.0, phi=0.0, B=half_pi2)
        offset = figure_id - first
        if offset == 0:
            spec = SolutionSpec(type_, **base)
            main = _solution_curve(type_.value, spec, cfg)
            return [main] + _companions(solution_window(spec, cfg), cfg, ["exp", "-exp"])
        if offset == 1:
            return _sweep(type_, cfg, base, "A", (1.0, 2.0, 3.0))
        if offset == 2:
            return _sweep(type_, cfg, base, "A", (-1.0, -2.0, -3.0))
        if offset == 3:
            return _sweep(type_, cfg, base, "omega", (1.0, 1.1, 1.2))
        if offset == 4:
            return _sweep(type_, cfg, base, "omega", (-1.0, -1.1, -1.2))

    raise ValueError(f"unknown figure id {figure_id!r}; expected 1..30")


def build_figure(figure_id: int, cfg: EvalConfig = DEFAULT_CONFIG) -> FigureData:
    """Sample every curve of figure ``figure_id`` (1..30)."""
    try:
        figure_id = int(figure_id)
    except (TypeError, ValueError):
        raise ValueError(f"figure id must be an integer, got {figure_id!r}") from None
    if not 1 <= figure_id <= 30:
        raise ValueError(f"unknown figure id {figure_id}; expected 1..30")
    return FigureData(figure_id, tuple(_build(figure_id, cfg)))
