import csv
import io
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from leafduffing import SolutionSpec, SolutionType, constants, domain
from leafduffing.figures import POINTS, build_figure, solution_window
from leafduffing.golden import DUPLICATE_TABLES, GOLDEN_TABLES
from leafduffing.leaf import DEFAULT_CONFIG
from leafduffing.tables import (
    LEAF_HEADER,
    SOLUTION_HEADER,
    TABLE_IDS,
    build_table,
    compare_table,
    format_number,
    grid,
    printed_ulp,
)


# ---- number format


@pytest.mark.parametrize(
    "value, text",
    [
        (0.503141363, "0.503141363"),
        (64.118603224, "64.11860322"),
        (263604.09812, "263604.0981"),
        (1.0, "1"),
        (-3.0, "-3"),
        (0.0, "0"),
        (-0.0, "0"),
        (1e-12, "0"),
        (0.10000000004, "0.1"),
        (None, ""),
    ],
)
def test_format_number(value, text):
    assert format_number(value) == text


@given(st.floats(-1e6, 1e6, allow_nan=False))
def test_format_number_round_trips_within_half_a_printed_unit(value):
    text = format_number(value)
    assert abs(float(text) - value) <= 0.5 * printed_ulp(text) * (1 + 1e-9) + 1e-15


def test_precision_bounds():
    with pytest.raises(ValueError):
        format_number(1.0, 0)
    with pytest.raises(ValueError):
        format_number(1.0, 16)


def test_grid_is_inclusive_and_clean():
    assert grid(-1.3, 1.3, 0.1)[0] == -1.3
    assert grid(-1.3, 1.3, 0.1)[-1] == 1.3
    assert len(grid(-1.3, 1.3, 0.1)) == 27
    assert grid(-1.0, 3.0, 0.2)[5] == 0.0
    with pytest.raises(ValueError):
        grid(0, 1, 0)


# ---- tables


def test_every_table_has_golden_rows_of_matching_shape():
    assert set(GOLDEN_TABLES) == set(TABLE_IDS)
    for table_id in TABLE_IDS:
        built = build_table(table_id)
        assert len(built.rows) == len(GOLDEN_TABLES[table_id]), table_id
        for gold, row in zip(GOLDEN_TABLES[table_id], built.rows):
            assert len(gold) == len(row)
            if table_id in ("T1",) or built.header == SOLUTION_HEADER:
                assert float(gold[0]) == pytest.approx(row[0], abs=1e-12)
            else:
                assert gold[0] == row[0]


def test_table_headers():
    assert build_table("T1").header == LEAF_HEADER
    assert build_table("T2").header == ["t", "x(t)", "x(t)^3", "d2x/dt2"]
    assert build_table("T7").header == ["number", "t", "x(t)"]


def test_table_published_cells():
    t2 = {row[0]: row for row in build_table("T2").rows}
    assert t2[-1.3][1] == pytest.approx(64.11860322, rel=1e-6)
    t4 = {row[0]: row for row in build_table("T4").rows}
    assert format_number(t4[0.0][2]) == "14.07106781"
    t1 = build_table("T1")
    assert t1.rows[0] == [0.0, 0.0, 1.0, 0.0, 0.0]
    assert format_number(t1.rows[5][1]) == "0.503141363"


def test_leaf_table_leaves_cells_past_the_pole_empty():
    eta = constants().eta2
    for row in build_table("T1").rows:
        if row[0] >= eta:
            assert row[2] is None and row[4] is None
        else:
            assert row[2] is not None


def test_table_16_is_flagged_as_a_duplicate():
    assert DUPLICATE_TABLES == {"T16": "T11"}
    assert GOLDEN_TABLES["T16"] == GOLDEN_TABLES["T11"]
    assert "duplicate" in build_table("T16").note


def test_unknown_table():
    with pytest.raises(ValueError):
        build_table("T18")


def test_table_csv_is_byte_stable():
    a = build_table("T5").to_csv()
    b = build_table("T5").to_csv()
    assert a == b
    assert a.splitlines()[0] == "t,x(t),x(t)^3,d2x/dt2"
    assert "," in a and ";" not in a


@pytest.mark.parametrize("table_id", ["T2", "T4", "T7", "T8", "T9", "T10", "T14", "T15"])
def test_tables_that_reproduce(table_id):
    result = compare_table(table_id)
    assert result.passed, [m.describe() for m in result.mismatches]
    assert result.cells > 0


# ---- figures


def _groups(fig):
    return [c.name for c in fig.curves]


def test_figure_3_sweeps_the_amplitude():
    fig = build_figure(3)
    assert _groups(fig) == ["A=1", "A=-1", "A=2", "A=-2", "A=3", "A=-3"]
    header = fig.to_csv().splitlines()[0]
    assert header.split(",")[:2] == ["A=1:t", "A=1:x"]


def test_figure_21_has_the_exponential_envelope():
    assert _groups(build_figure(21)) == ["XIII", "exp", "-exp"]


def test_figure_1_has_both_functions_and_their_integrals():
    assert _groups(build_figure(1)) == ["sleafh2", "SLH2", "cleafh2", "CLH2"]


@pytest.mark.parametrize("figure_id", range(1, 31))
def test_every_figure_builds_inside_its_domain(figure_id):
    fig = build_figure(figure_id)
    assert fig.curves
    for c in fig.curves:
        assert len(c.t) == POINTS
        assert np.all(np.isfinite(c.x))
        assert np.all(np.diff(c.t) > 0)


def test_solution_window_respects_the_pole_guard():
    spec = SolutionSpec(SolutionType.XI, 1, 1, -1, 1)
    lo, hi = solution_window(spec, DEFAULT_CONFIG)
    end = domain(spec).intervals[0].hi
    assert hi < end
    phase_gap = constants().zeta2 - (math.exp(hi) - 1)
    assert phase_gap >= DEFAULT_CONFIG.pole_guard
    assert lo == pytest.approx(hi - 6)


def test_figure_ids_are_checked():
    for bad in (0, 31, "x"):
        with pytest.raises(ValueError):
            build_figure(bad)


def test_figure_csv_parses_back():
    rows = list(csv.reader(io.StringIO(build_figure(8).to_csv())))
    assert len(rows) == POINTS + 1
    assert len(rows[0]) == 2 * len(build_figure(8).curves)
