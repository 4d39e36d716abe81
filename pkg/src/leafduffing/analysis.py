"""Periods, extrema, identity checks and residual sweeps.

The damped families XIII and XIV oscillate in the phase ``B e^(omega t) + phi``,
so the m-th oscillation in t lasts ``ln(m / (m - 1))`` for the canonical
parameters. Their extrema solve ``L(p) + (p - phi) L'(p) = 0`` where L is
the leaf function in the solution; each root lies within a quarter period
of the phase at which L peaks.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainExceeded, RootBracketFailure, UnsupportedType
from .leaf import DEFAULT_CONFIG, EvalConfig, LeafKind, leaf_state, quarter_period
from .solutions import (
    SolutionSpec,
    SolutionType,
    canonical_spec,
    coefficients,
    derivative,
    domain,
    evaluate,
    jet,
)
from .roots import bisect_secant, sign_changes

DAMPED = (SolutionType.XIII, SolutionType.XIV)


def _require_damped(type_: SolutionType) -> SolutionType:
    type_ = SolutionType.parse(type_)
    if type_ not in DAMPED:
        raise UnsupportedType(f"only types XIII and XIV oscillate; got {type_.value}")
    return type_


# ------------------------------------------------------------------ periods

@dataclass(frozen=True)
class PeriodRecord:
    m: int
    length: float  # math.inf for m = 1
    window: tuple[float, float]


def periods(type_: SolutionType, count: int) -> list[PeriodRecord]:
    """Lengths and t-windows of the first ``count`` oscillations.

    Window m is ``[ln(4m - 4), ln(4m)]``, the first one open to minus infinity.
    """
    _require_damped(type_)
    if count < 1:
        raise ValueError("count must be at least 1")
    out = [PeriodRecord(1, math.inf, (-math.inf, math.log(4)))]
    for m in range(2, count + 1):
        out.append(PeriodRecord(m, math.log(m / (m - 1)), (math.log(4 * m - 4), math.log(4 * m))))
    return out


@dataclass(frozen=True)
class BoundaryRecord:
    m: int
    expected: float  # ln(4m)
    located: float
    value: float  # the level crossed there: 0 for XIII, 4m for XIV


def period_boundaries(type_: SolutionType, count: int, cfg: EvalConfig = DEFAULT_CONFIG) -> list[BoundaryRecord]:
    """Locate the canonical wave's crossing at the right end of each window.

    XIII passes through zero at ``t = ln(4m)``; XIV reaches ``x = 4m`` there
    (its leaf function peaks while the envelope equals 4m). Both are found by
    bracketed root finding, not by evaluating at the expected point.
    """
    type_ = _require_damped(type_)
    spec = canonical_spec(type_)
    q = quarter_period(2)
    out = []
    for m in range(1, count + 1):
        target = 0.0 if type_ is SolutionType.XIII else 4.0 * m
        lo_phase = (4 * m - 0.5) * q
        if type_ is SolutionType.XIII:
            hi_phase = (4 * m + 0.5) * q
        else:
            # x - 4m changes sign at the peak phase and stays positive only
            # for a short stretch after it, which shrinks like 1/m.
            hi_phase = (4 * m + 0.5 / (4 * m * q * q)) * q
        lo = math.log(lo_phase / spec.B)
        hi = math.log(hi_phase / spec.B)
        t = bisect_secant(lambda s: evaluate(spec, s, cfg) - target, lo, hi, xtol=1e-15)
        out.append(BoundaryRecord(m, math.log(4 * m), t, target))
    return out


# ------------------------------------------------------------------ extrema

class ExtremumKind(str, Enum):
    UPWARD = "upward"  # local maximum
    DOWNWARD = "downward"  # local minimum

    @property
    def letter(self) -> str:
        return "U" if self is ExtremumKind.UPWARD else "D"


@dataclass(frozen=True)
class ExtremumRecord:
    k: int
    kind: ExtremumKind
    t_exact: float
    x_exact: float
    t_approx: float
    x_approx: float

    @property
    def label(self) -> str:
        return f"({self.k}{self.kind.letter})"


def peak_phase(type_: SolutionType, k: int, kind: ExtremumKind) -> tuple[float, float]:
    """Phase where the leaf function of the k-th extremum peaks, and its value there (+1 or -1).

    XIII: maxima at (4k-3)q, minima at (4k-1)q. XIV: maxima at 4kq, minima
    at (4k-2)q. Here q is the quarter period of the basis-2 leaf functions.
    """
    type_ = _require_damped(type_)
    q = quarter_period(2)
    if type_ is SolutionType.XIII:
        factor = 4 * k - 3 if kind is ExtremumKind.UPWARD else 4 * k - 1
    else:
        factor = 4 * k if kind is ExtremumKind.UPWARD else 4 * k - 2
    return factor * q, 1.0 if kind is ExtremumKind.UPWARD else -1.0


def _extremum(spec: SolutionSpec, k: int, kind: ExtremumKind, cfg: EvalConfig) -> ExtremumRecord:
    q = quarter_period(2)
    B, w, phi = spec.B, spec.omega, spec.phi
    p_peak, peak_value = peak_phase(spec.type, k, kind)

    # Just past the peak (in the direction the phase moves) the derivative of
    # x changes sign exactly once before the next zero of the leaf function.
    lo_p, hi_p = (p_peak, p_peak + q) if B > 0 else (p_peak - q, p_peak)
    # The phase only reaches values with (p - phi) / B > 0.
    if B > 0:
        lo_p = max(lo_p, phi)
    else:
        hi_p = min(hi_p, phi)
    if not (hi_p - lo_p) > 0:
        raise RootBracketFailure(f"extremum {k}{kind.letter} is not reached for {spec.label()}")

    ends = []
    for p in (lo_p, hi_p):
        e = (p - phi) / B
        ends.append(math.log(e) / w if e > 0 else (-math.inf if w > 0 else math.inf))
    # A window touching E = 0 is cut where the peak phase first becomes reachable.
    finite = [t for t in ends if math.isfinite(t)]
    if len(finite) < 2:
        raise RootBracketFailure(f"extremum {k}{kind.letter} is not reached for {spec.label()}")
    lo_t, hi_t = sorted(finite)
    # Nudge off the peak itself, where the derivative is finite but the
    # bracket should exclude the neighbouring root.
    pad = 1e-12 * max(1.0, abs(lo_t), abs(hi_t))

    def slope(t: float) -> float:
        return derivative(spec, t, cfg)

    found = None
    for a, b, fa, fb in sign_changes(slope, lo_t + pad, hi_t - pad, pieces=64):
        found = bisect_secant(slope, a, b, xtol=1e-15, fa=fa, fb=fb)
        break
    if found is None:
        raise RootBracketFailure(
            f"no sign change of dx/dt in [{lo_t:.6g}, {hi_t:.6g}] for extremum {k}{kind.letter}"
        )
    x_exact = evaluate(spec, found, cfg)
    g_peak = (p_peak - phi) / B
    return ExtremumRecord(
        k=k,
        kind=kind,
        t_exact=found,
        x_exact=x_exact,
        t_approx=math.log(g_peak) / w,
        x_approx=spec.A * g_peak * peak_value,
    )


def extrema(
    type_: SolutionType,
    spec: SolutionSpec | None = None,
    k_max: int = 6,
    cfg: EvalConfig = DEFAULT_CONFIG,
) -> list[ExtremumRecord]:
    """Exact and approximate extrema k = 1..k_max of both kinds.

    Records are ordered (1U, 1D, 2U, 2D, ...). The approximate values place
    the extremum where the leaf function peaks; for the canonical parameters
    these are ``t = ln(4k-3), x = 4k-3`` and so on.
    """
    type_ = _require_damped(type_)
    spec = canonical_spec(type_) if spec is None else spec
    if spec.type is not type_:
        raise UnsupportedType(f"spec is type {spec.type.value}, expected {type_.value}")
    spec.require_B()
    if k_max < 1:
        raise ValueError("k_max must be at least 1")
    out = []
    for k in range(1, k_max + 1):
        for kind in (ExtremumKind.UPWARD, ExtremumKind.DOWNWARD):
            out.append(_extremum(spec, k, kind, cfg))
    return out


# --------------------------------------------------------------- identities

@dataclass(frozen=True)
class CheckRecord:
    """Outcome of one numerical check, serialisable as a CSV row."""

    id: str
    samples: int
    max_deviation: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.max_deviation <= self.tolerance

    def row(self) -> list[str]:
        return [self.id, str(self.samples), f"{self.max_deviation:.3e}", f"{self.tolerance:.1e}",
                "pass" if self.passed else "FAIL"]


CHECK_HEADER = ["id", "samples", "max_deviation", "tolerance", "result"]


def records_to_csv(records: Iterable[CheckRecord]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CHECK_HEADER)
    for r in records:
        writer.writerow(r.row())
    return buf.getvalue()


IDENTITIES = {
    "a": "cleafh2^2 = cosh(2 CLH2)",
    "b": "sqrt(cleafh2^4 - 1) = sinh(2 CLH2)",
    "c": "sin(2 SL2) = sleaf2^2",
    "d": "-sleaf2^2 + cleafh2^2 - sleaf2^2 cleafh2^2 = 1",
    "e": "(1 - sin 2SL2)(1 + cosh 2CLH2) = 2",
    "f": "cosh(CLH2) (cos SL2 - sin SL2) = 1",
}


def identity_grid(samples: int = 50, margin: float = 0.05) -> np.ndarray:
    from .leaf import constants

    eta = constants().eta2
    return np.linspace(-eta + margin, eta - margin, samples)


def identity_deviations(t: float, cfg: EvalConfig = DEFAULT_CONFIG) -> dict[str, float]:
    """|left - right| of each identity at one point."""
    ch = leaf_state(LeafKind.CLEAFH, 2, t, cfg)
    sl = leaf_state(LeafKind.SLEAF, 2, t, cfg)
    c, C = ch.x, ch.integral
    s, S = sl.x, sl.integral
    # The radical is positive; its sign follows cleafh2' so that (b) also
    # holds for negative t, where both CLH2 and the derivative are negative.
    radical = math.copysign(math.sqrt(max(c**4 - 1.0, 0.0)), ch.v)
    return {
        "a": abs(c * c - math.cosh(2 * C)),
        "b": abs(radical - math.sinh(2 * C)),
        "c": abs(math.sin(2 * S) - s * s),
        "d": abs(-s * s + c * c - s * s * c * c - 1.0),
        "e": abs((1 - math.sin(2 * S)) * (1 + math.cosh(2 * C)) - 2.0),
        "f": abs(math.cosh(C) * (math.cos(S) - math.sin(S)) - 1.0),
    }


def verify_identities(
    cfg: EvalConfig = DEFAULT_CONFIG,
    grid: Sequence[float] | None = None,
    tolerance: float = 1e-8,
) -> list[CheckRecord]:
    """Maximum deviation of identities (a)-(f) over ``grid``.

    Raises DomainExceeded when a grid point is at or beyond the cleafh2 pole.
    """
    grid = identity_grid() if grid is None else list(grid)
    worst = {key: 0.0 for key in IDENTITIES}
    for t in grid:
        for key, dev in identity_deviations(float(t), cfg).items():
            worst[key] = max(worst[key], dev)
    return [CheckRecord(f"identity-{key}", len(grid), worst[key], tolerance) for key in IDENTITIES]


def closed_form_check(cfg: EvalConfig = DEFAULT_CONFIG, grid: Sequence[float] | None = None,
                      tolerance: float = 1e-8) -> CheckRecord:
    """CLH2 from the running integral against its logarithmic closed form."""
    from .integrals import IntegralKind, clh2_closed_form, eval_integral

    grid = identity_grid() if grid is None else list(grid)
    worst = max(abs(eval_integral(IntegralKind.CLH2, t, cfg) - clh2_closed_form(t, cfg)) for t in grid)
    return CheckRecord("clh2-closed-form", len(grid), worst, tolerance)


# ----------------------------------------------------------------- residuals

def interior_grid(spec: SolutionSpec, samples: int, margin: float = 0.02) -> np.ndarray:
    """Evenly spaced points strictly inside the domain of ``spec``.

    An infinite side is replaced by a point 6/|omega| away from the other end,
    and an everywhere-finite solution is sampled on [-3/|omega|, 3/|omega|].
    A fraction ``margin`` of the width is kept clear at both ends.
    """
    if samples < 2:
        raise ValueError("samples must be at least 2")
    dom = domain(spec)
    if dom.empty:
        raise DomainExceeded(f"empty domain for {spec.label()}")
    iv = dom.intervals[0]
    lo, hi = iv.lo, iv.hi
    span = 1.0 / abs(spec.omega)
    if not math.isfinite(lo) and not math.isfinite(hi):
        lo, hi = -3 * span, 3 * span
    elif not math.isfinite(lo):
        lo = hi - 6 * span
    elif not math.isfinite(hi):
        hi = lo + 6 * span
    pad = margin * (hi - lo)
    return np.linspace(lo + pad, hi - pad, samples)


def residual_sweep(spec: SolutionSpec, samples: int = 50, cfg: EvalConfig = DEFAULT_CONFIG,
                   tolerance: float = 1e-6) -> CheckRecord:
    """Largest normalised Duffing residual ``|x'' + delta x' + alpha x + beta x^3| / (1 + |x|^3)``."""
    coef = coefficients(spec)
    worst = 0.0
    grid = interior_grid(spec, samples)
    for t in grid:
        x, v, a = jet(spec, float(t), cfg)
        worst = max(worst, abs(coef.residual(x, v, a)) / (1.0 + abs(x) ** 3))
    return CheckRecord(f"residual {spec.label()}", len(grid), worst, tolerance)


def sweep_specs() -> list[SolutionSpec]:
    """Parameter sweep used for residual checks across all seven families."""
    specs = []
    for type_ in SolutionType:
        for A in (1.0, -1.0, 2.0, -2.0):
            for w in (1.0, -1.0, 1.3, -1.3):
                for phi in (-2.0, 0.0, 1.0):
                    for B in ((1.0, 2.0) if type_.needs_B else (None,)):
                        specs.append(SolutionSpec(type_, A, w, phi, B))
    return specs
