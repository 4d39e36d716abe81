"""The full verification suite behind ``leafduffing verify``.

Checks are grouped so a subset can be run with ``--only``. Each check
returns a :class:`CheckResult` with the measured deviation, the allowance and
a list of human-readable failures.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .analysis import (
    DAMPED,
    closed_form_check,
    period_boundaries,
    residual_sweep,
    sweep_specs,
    verify_identities,
)
from .leaf import DEFAULT_CONFIG, EvalConfig, LeafKind, constants, eval_leaf
from .oracle import oracle_leaf
from .solutions import SolutionSpec, SolutionType, domain
from .tables import EXTREMUM_TABLES, SOLUTION_TABLES, compare_table

GROUPS = ("constants", "tables", "identities", "residuals", "domains", "periods", "extrema", "oracle")


@dataclass
class CheckResult:
    group: str
    name: str
    deviation: float
    allowed: float
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures and self.deviation <= self.allowed


def matches_printed(value: float, printed: str) -> bool:
    """True when ``value`` rounds or truncates to the decimal string ``printed``.

    Published digits followed by an ellipsis are sometimes rounded and
    sometimes cut off, so either reading is accepted.
    """
    decimals = len(printed.split(".")[1]) if "." in printed else 0
    if f"{value:.{decimals}f}" == printed:
        return True
    scale = 10**decimals
    truncated = math.trunc(value * scale) / scale
    return f"{truncated:.{decimals}f}" == printed


def _constants(cfg: EvalConfig) -> list[CheckResult]:
    c = constants(cfg)
    failures = []
    for name, value, printed in (("zeta2", c.zeta2, "1.85407"), ("eta2", c.eta2, "1.31102")):
        if not matches_printed(value, printed):
            failures.append(f"{name} = {value:.10f} does not print as {printed}")
    gap = abs(c.eta2 - c.pi2 / 2)
    return [CheckResult("constants", "zeta2, eta2 and eta2 = pi2/2", gap, 1e-10, failures)]


def _table_check(group: str, table_id: str, cfg: EvalConfig) -> CheckResult:
    cmp = compare_table(table_id, cfg)
    return CheckResult(group, f"table {table_id} ({cmp.rule})", cmp.worst, 1.0,
                       [m.describe() for m in cmp.mismatches])


def _tables(cfg: EvalConfig) -> list[CheckResult]:
    ids = ["T1"] + [t for t in SOLUTION_TABLES if t != "T16"]
    return [_table_check("tables", t, cfg) for t in ids]


def _extrema(cfg: EvalConfig) -> list[CheckResult]:
    return [_table_check("extrema", t, cfg) for t in EXTREMUM_TABLES]


def _identities(cfg: EvalConfig) -> list[CheckResult]:
    out = []
    for rec in verify_identities(cfg) + [closed_form_check(cfg)]:
        out.append(CheckResult("identities", rec.id, rec.max_deviation, rec.tolerance))
    return out


def _residuals(cfg: EvalConfig) -> list[CheckResult]:
    worst: dict[SolutionType, tuple[float, str]] = {}
    for spec in sweep_specs():
        rec = residual_sweep(spec, 50, cfg)
        if rec.max_deviation >= worst.get(spec.type, (-1.0, ""))[0]:
            worst[spec.type] = (rec.max_deviation, rec.id)
    return [CheckResult("residuals", f"residual sweep {t.value} (worst: {worst[t][1]})", worst[t][0], 1e-6)
            for t in SolutionType]


# Domain ends as printed, with the number of decimals shown.
DOMAIN_CASES = (
    (SolutionSpec(SolutionType.XI, 1, 1, -1, 1), (None, "1.0487")),
    (SolutionSpec(SolutionType.XI, 1, 1, -2, 2), ("-2.617", "0.655")),
    (SolutionSpec(SolutionType.XII, 1, 1, -1, 1), (None, "0.837693")),
    (SolutionSpec(SolutionType.XII, 1, 1, -2, 2), ("-1.065690", "0.504109")),
)


def domain_mismatches() -> list[str]:
    """Printed domain limits that the computed domains do not round to."""
    failures = []
    for spec, ends in DOMAIN_CASES:
        iv = domain(spec).intervals[0]
        for printed, value in zip(ends, (iv.lo, iv.hi)):
            if printed is None:
                if math.isfinite(value):
                    failures.append(f"{spec.label()}: expected an open lower end, got {value}")
                continue
            if not matches_printed(value, printed):
                failures.append(f"{spec.label()}: limit {value:.10f} does not print as {printed}")
    return failures


def _domains(cfg: EvalConfig) -> list[CheckResult]:
    failures = domain_mismatches()
    return [CheckResult("domains", "printed domain limits", float(len(failures)), 0.0, failures)]


def _periods(cfg: EvalConfig) -> list[CheckResult]:
    out = []
    for type_ in DAMPED:
        recs = period_boundaries(type_, 6, cfg)
        dev = max(abs(r.located - r.expected) for r in recs)
        out.append(CheckResult("periods", f"window ends ln(4m) for {type_.value}, m=1..6", dev, 1e-8))
    return out


def _oracle(cfg: EvalConfig) -> list[CheckResult]:
    c = constants(cfg)
    limits = {
        LeafKind.SLEAF: c.pi2 / 2,
        LeafKind.CLEAF: c.pi2 / 2,
        LeafKind.SLEAFH: c.zeta2 - 0.05,
        LeafKind.CLEAFH: c.eta2 - 0.05,
    }
    out = []
    for kind, limit in limits.items():
        dev = max(abs(eval_leaf(kind, 2, t, cfg) - oracle_leaf(kind, t))
                  for t in np.linspace(-limit, limit, 30))
        out.append(CheckResult("oracle", f"{kind.value}2 against integral inversion", dev, 1e-8))
    return out


RUNNERS: dict[str, Callable[[EvalConfig], list[CheckResult]]] = {
    "constants": _constants,
    "tables": _tables,
    "identities": _identities,
    "residuals": _residuals,
    "domains": _domains,
    "periods": _periods,
    "extrema": _extrema,
    "oracle": _oracle,
}


def run_checks(cfg: EvalConfig = DEFAULT_CONFIG, only: list[str] | None = None) -> list[CheckResult]:
    groups = list(GROUPS) if not only else only
    unknown = [g for g in groups if g not in RUNNERS]
    if unknown:
        raise ValueError(f"unknown check group(s) {unknown}; choose from {', '.join(GROUPS)}")
    results = []
    for g in groups:
        results.extend(RUNNERS[g](cfg))
    return results
