"""Regenerate the published numeric tables and compare them with the printed digits."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from typing import Callable

from .analysis import ExtremumKind, extrema
from .golden import DUPLICATE_TABLES, GOLDEN_TABLES
from .leaf import DEFAULT_CONFIG, EvalConfig, LeafKind, constants, leaf_state
from .solutions import SolutionSpec, SolutionType, domain, jet

DEFAULT_PRECISION = 9


def format_number(value: float | None, precision: int = DEFAULT_PRECISION) -> str:
    """Render a value the way the tables print it.

    Magnitudes below 1 keep ``precision`` decimals; larger ones keep
    ``precision + 1`` significant digits. Trailing zeros are dropped, so exact
    values print as ``1`` or ``-3``. ``None`` renders as an empty cell.
    """
    if not 1 <= precision <= 15:
        raise ValueError("precision must be between 1 and 15")
    if value is None:
        return ""
    if not math.isfinite(value):
        return str(value)
    if abs(value) < 1:
        text = f"{value:.{precision}f}"
    else:
        text = f"{value:.{precision + 1}g}"
        if "e" in text:
            return text
    if "." in text:
        text = text.rstrip("0").rstrip(".")
    if text in ("-0", ""):
        text = "0"
    return text


def printed_ulp(text: str) -> float:
    """Unit in the last printed place of a decimal string."""
    decimals = len(text.split(".")[1]) if "." in text else 0
    return 10.0 ** -decimals


@dataclass
class SampleTable:
    table_id: str
    header: list[str]
    rows: list[list[object]] = field(default_factory=list)
    note: str = ""

    def to_csv(self, precision: int = DEFAULT_PRECISION) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.header)
        for row in self.rows:
            writer.writerow([c if isinstance(c, str) else format_number(c, precision) for c in row])
        return buf.getvalue()

    def to_records(self) -> list[dict]:
        return [dict(zip(self.header, row)) for row in self.rows]


def grid(start: float, stop: float, step: float) -> list[float]:
    """Inclusive arithmetic grid, rounded to shed accumulated float error."""
    if step <= 0:
        raise ValueError("step must be positive")
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    return [round(start + i * step, 10) for i in range(count)]


SOLUTION_HEADER = ["t", "x(t)", "x(t)^3", "d2x/dt2"]
LEAF_HEADER = ["t", "sleafh2(t)", "cleafh2(t)", "int_0^t sleafh2(u)du", "int_0^t cleafh2(u)du"]


@dataclass(frozen=True)
class SolutionTable:
    spec: SolutionSpec
    start: float
    stop: float
    step: float


def _specs() -> dict[str, SolutionTable]:
    xi = dict(A=1.0, omega=1.0, phi=-1.0, B=1.0)
    return {
        "T2": SolutionTable(SolutionSpec(SolutionType.VIII, 1.0, 1.0, 0.0), -1.3, 1.3, 0.1),
        "T3": SolutionTable(SolutionSpec(SolutionType.IX, 1.0, 1.0, 0.0), -1.3, 1.3, 0.1),
        "T4": SolutionTable(SolutionSpec(SolutionType.X, 1.0, 1.0, 0.0), -1.3, 1.3, 0.1),
        "T5": SolutionTable(SolutionSpec(SolutionType.XI, **xi), -1.3, 1.0, 0.1),
        "T6": SolutionTable(SolutionSpec(SolutionType.XII, **xi), -1.3, 0.8, 0.1),
        "T11": SolutionTable(SolutionSpec(SolutionType.XIII, **xi), -1.0, 3.0, 0.2),
        "T16": SolutionTable(SolutionSpec(SolutionType.XIII, **xi), -1.0, 3.0, 0.2),
        "T17": SolutionTable(SolutionSpec(SolutionType.XIV, **xi), -1.0, 3.0, 0.2),
    }


SOLUTION_TABLES = _specs()
EXTREMUM_TABLES = {
    # id: (type, kind, exact?)
    "T7": (SolutionType.XIII, ExtremumKind.UPWARD, True),
    "T8": (SolutionType.XIII, ExtremumKind.DOWNWARD, True),
    "T9": (SolutionType.XIII, ExtremumKind.UPWARD, False),
    "T10": (SolutionType.XIII, ExtremumKind.DOWNWARD, False),
    "T12": (SolutionType.XIV, ExtremumKind.UPWARD, True),
    "T13": (SolutionType.XIV, ExtremumKind.DOWNWARD, True),
    "T14": (SolutionType.XIV, ExtremumKind.UPWARD, False),
    "T15": (SolutionType.XIV, ExtremumKind.DOWNWARD, False),
}
TABLE_IDS = tuple(f"T{i}" for i in range(1, 18))


def _leaf_table(cfg: EvalConfig) -> SampleTable:
    table = SampleTable("T1", list(LEAF_HEADER))
    eta = constants(cfg).eta2
    for t in grid(0.0, 1.8, 0.1):
        sh = leaf_state(LeafKind.SLEAFH, 2, t, cfg)
        if t < eta - cfg.pole_guard:
            ch = leaf_state(LeafKind.CLEAFH, 2, t, cfg)
            c, ci = ch.x, ch.integral
        else:
            c = ci = None
        table.rows.append([t, sh.x, c, sh.integral, ci])
    return table


def _solution_table(table_id: str, cfg: EvalConfig) -> SampleTable:
    st = SOLUTION_TABLES[table_id]
    table = SampleTable(table_id, list(SOLUTION_HEADER), note=st.spec.label())
    for t in grid(st.start, st.stop, st.step):
        x, _, a = jet(st.spec, t, cfg)
        table.rows.append([t, x, x**3, a])
    if table_id in DUPLICATE_TABLES:
        table.note += f"; printed rows duplicate {DUPLICATE_TABLES[table_id]}"
    return table


def _extremum_table(table_id: str, cfg: EvalConfig, k_max: int = 6) -> SampleTable:
    type_, kind, exact = EXTREMUM_TABLES[table_id]
    header = ["number", "t", "x(t)"]
    table = SampleTable(table_id, header, note=f"type={type_.value} {kind.value} {'exact' if exact else 'approximate'}")
    for rec in extrema(type_, None, k_max, cfg):
        if rec.kind is not kind:
            continue
        if exact:
            table.rows.append([rec.label, rec.t_exact, rec.x_exact])
        else:
            table.rows.append([rec.label, rec.t_approx, rec.x_approx])
    return table


def build_table(table_id: str, cfg: EvalConfig = DEFAULT_CONFIG) -> SampleTable:
    """Compute table ``T1``..``T17`` from scratch."""
    table_id = table_id.upper()
    if table_id == "T1":
        return _leaf_table(cfg)
    if table_id in SOLUTION_TABLES:
        return _solution_table(table_id, cfg)
    if table_id in EXTREMUM_TABLES:
        return _extremum_table(table_id, cfg)
    raise ValueError(f"unknown table id {table_id!r}; expected one of T1..T17")


# --------------------------------------------------------------- comparison

@dataclass(frozen=True)
class CellMismatch:
    table_id: str
    row: str  # t value or extremum label
    column: str
    printed: str
    computed: float
    deviation: float  # in the unit of the tolerance
    allowed: float

    def describe(self) -> str:
        return (f"{self.table_id} row {self.row} {self.column}: printed {self.printed}, "
                f"computed {self.computed:.12g}, deviation {self.deviation:.3g} > {self.allowed:g}")


@dataclass
class TableComparison:
    table_id: str
    cells: int
    mismatches: list[CellMismatch]
    rule: str

    @property
    def passed(self) -> bool:
        return not self.mismatches

    @property
    def worst(self) -> float:
        return max((m.deviation / m.allowed for m in self.mismatches), default=0.0)


# Relative tolerances for solution tables; looser within this distance of a pole.
SOLUTION_REL_TOL = 1e-6
NEAR_POLE_REL_TOL = 1e-4
NEAR_POLE_DISTANCE = 0.05
EXTREMUM_ABS_TOL = 1e-6


def compare_table(table_id: str, cfg: EvalConfig = DEFAULT_CONFIG) -> TableComparison:
    """Check every printed cell of a table against freshly computed values.

    T1 cells must lie within one unit of the last printed place. Solution
    tables use a relative tolerance of 1e-6, relaxed to 1e-4 within 0.05 of a
    pole. Exact extremum tables use 1e-6 absolute on t and x. Approximate
    extremum tables must round to the printed digits.
    """
    table_id = table_id.upper()
    golden = GOLDEN_TABLES[table_id]
    built = build_table(table_id, cfg)
    mismatches: list[CellMismatch] = []
    cells = 0

    def check(row: str, column: str, printed: str, computed, dev_fn: Callable[[float, float], float], allowed: float):
        nonlocal cells
        if printed == "":
            return
        cells += 1
        if computed is None:
            mismatches.append(CellMismatch(table_id, row, column, printed, math.nan, math.inf, allowed))
            return
        dev = dev_fn(float(printed), computed)
        if not dev <= allowed:
            mismatches.append(CellMismatch(table_id, row, column, printed, computed, dev, allowed))

    if table_id == "T1":
        rule = "within 1 unit of the last printed place"
        for gold, row in zip(golden, built.rows):
            for col, printed, value in zip(built.header[1:], gold[1:], row[1:]):
                ulp = printed_ulp(printed)
                check(gold[0], col, printed, value, lambda p, v, u=ulp: abs(p - v) / u, 1.0 + 1e-9)
        return TableComparison(table_id, cells, mismatches, rule)

    if table_id in SOLUTION_TABLES:
        rule = f"relative {SOLUTION_REL_TOL:g}, {NEAR_POLE_REL_TOL:g} within {NEAR_POLE_DISTANCE} of a pole"
        poles = domain(SOLUTION_TABLES[table_id].spec).poles
        for gold, row in zip(golden, built.rows):
            t = row[0]
            near = any(abs(t - p) < NEAR_POLE_DISTANCE for p in poles)
            allowed = NEAR_POLE_REL_TOL if near else SOLUTION_REL_TOL
            for col, printed, value in zip(built.header[1:], gold[1:], row[1:]):
                check(gold[0], col, printed, value, _relative, allowed)
        return TableComparison(table_id, cells, mismatches, rule)

    _, _, exact = EXTREMUM_TABLES[table_id]
    by_label = {row[0]: row for row in built.rows}
    if exact:
        rule = f"absolute {EXTREMUM_ABS_TOL:g} on t and x"
        for gold in golden:
            row = by_label.get(gold[0])
            for i, col in ((1, "t"), (2, "x(t)")):
                check(gold[0], col, gold[i], None if row is None else row[i],
                      lambda p, v: abs(p - v), EXTREMUM_ABS_TOL)
    else:
        rule = "closed form rounds to the printed digits"
        for gold in golden:
            row = by_label.get(gold[0])
            for i, col in ((1, "t"), (2, "x(t)")):
                ulp = printed_ulp(gold[i])
                check(gold[0], col, gold[i], None if row is None else row[i],
                      lambda p, v, u=ulp: abs(p - v) / u, 0.5 + 1e-6)
    return TableComparison(table_id, cells, mismatches, rule)


def _relative(printed: float, value: float) -> float:
    if value == 0.0:
        return abs(printed)
    return abs(printed - value) / abs(value)
