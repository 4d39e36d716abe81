import math

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from leafduffing import (
    InvalidSpec,
    SolutionSpec,
    SolutionType,
    UnsupportedType,
    coefficients,
    constants,
    extrema,
    period_boundaries,
    periods,
    residual_sweep,
    verify_identities,
)
from leafduffing.analysis import (
    DAMPED,
    ExtremumKind,
    closed_form_check,
    identity_deviations,
    identity_grid,
    peak_phase,
    records_to_csv,
    sweep_specs,
)
from leafduffing.solutions import canonical_spec, derivative, jet

T = SolutionType
C2 = constants()


# ---- periods


def test_period_examples():
    recs = periods(T.XIII, 2)
    assert recs[0].length == math.inf
    assert recs[0].window == (-math.inf, math.log(4))
    assert recs[1].length == pytest.approx(math.log(2), abs=1e-15)
    assert periods(T.XIV, 3)[2].length == pytest.approx(math.log(1.5), abs=1e-15)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(DAMPED), st.integers(2, 200))
def test_periods_telescope_and_abut(type_, count):
    recs = periods(type_, count)
    assert sum(r.length for r in recs[1:]) == pytest.approx(math.log(count), abs=1e-12)
    for a, b in zip(recs, recs[1:]):
        assert a.window[1] == b.window[0]
        if a.m >= 2:
            assert b.length < a.length


@pytest.mark.parametrize("type_", [T.VIII, T.XI, T.XII])
def test_periods_reject_non_oscillating_types(type_):
    with pytest.raises(UnsupportedType):
        periods(type_, 3)


@pytest.mark.parametrize("type_", DAMPED)
def test_period_boundaries_are_located_at_ln_4m(type_):
    for rec in period_boundaries(type_, 6):
        assert abs(rec.located - rec.expected) <= 1e-8


# ---- extrema


def test_xiii_published_extremum():
    rec = next(r for r in extrema(T.XIII) if r.label == "(2U)")
    assert rec.t_exact == pytest.approx(1.620875816, abs=1e-6)
    assert rec.x_exact == pytest.approx(5.028840775, abs=1e-6)
    assert rec.t_approx == pytest.approx(math.log(5), abs=1e-15)
    assert rec.x_approx == 5.0


@pytest.mark.parametrize("type_", DAMPED)
def test_extrema_against_duffing_integration(type_):
    # Taylor-series integration of the Duffing equation itself, started from the
    # solution's state at t = 0; no leaf functions or shared solver involved
    s = canonical_spec(type_)
    co = coefficients(s)
    x0, v0, _ = jet(s, 0.0)
    mpmath.mp.dps = 20
    try:
        sol = mpmath.odefun(
            lambda t, y: [y[1], -co.delta * y[1] - co.alpha * y[0] - co.beta * y[0] ** 3],
            0, [x0, v0], tol=mpmath.mpf(10) ** -18,
        )
        for rec in extrema(type_):
            x, v = sol(rec.t_exact)
            assert float(x) == pytest.approx(rec.x_exact, abs=1e-9)
            assert abs(float(v)) <= 1e-9 * abs(rec.x_exact)
    finally:
        mpmath.mp.dps = 15


@pytest.mark.parametrize("type_", DAMPED)
def test_gradient_vanishes_at_exact_extrema(type_):
    s = canonical_spec(type_)
    for rec in extrema(type_):
        assert abs(derivative(s, rec.t_exact)) <= 1e-8


@pytest.mark.parametrize("type_", DAMPED)
def test_extrema_alternate_and_match_their_kind(type_):
    s = canonical_spec(type_)
    for rec in extrema(type_):
        x, _, a = jet(s, rec.t_exact)
        if rec.kind is ExtremumKind.UPWARD:
            assert x > 0 and a < 0
        else:
            assert x < 0 and a > 0


@pytest.mark.parametrize(
    "type_, kind, t_of_k, x_of_k",
    [
        (T.XIII, ExtremumKind.UPWARD, lambda k: math.log(4 * k - 3), lambda k: 4 * k - 3),
        (T.XIII, ExtremumKind.DOWNWARD, lambda k: math.log(4 * k - 1), lambda k: -(4 * k - 1)),
        (T.XIV, ExtremumKind.UPWARD, lambda k: math.log(4 * k), lambda k: 4 * k),
        (T.XIV, ExtremumKind.DOWNWARD, lambda k: math.log(4 * k - 2), lambda k: -(4 * k - 2)),
    ],
)
def test_approximate_extrema_closed_forms(type_, kind, t_of_k, x_of_k):
    for rec in extrema(type_):
        if rec.kind is kind:
            assert rec.t_approx == pytest.approx(t_of_k(rec.k), abs=1e-14)
            assert rec.x_approx == pytest.approx(x_of_k(rec.k), abs=1e-12)


@pytest.mark.parametrize("type_", DAMPED)
def test_exact_extrema_stay_near_the_approximations_from_k2(type_):
    # the first extremum sits well before its leaf-function peak, so k = 1 is excluded
    for rec in extrema(type_):
        if rec.k < 2:
            continue
        assert abs(rec.t_exact - rec.t_approx) < 0.02
        assert abs(rec.x_exact - rec.x_approx) < 0.03 * abs(rec.x_approx)
        assert abs(rec.x_exact) >= abs(rec.x_approx) - 0.25


def test_first_extremum_lies_outside_the_envelope():
    first = extrema(T.XIII, k_max=1)[0]
    assert abs(first.t_exact - first.t_approx) > 0.2


def test_peak_phase_values():
    q = C2.pi2 / 2
    assert peak_phase(T.XIII, 2, ExtremumKind.UPWARD) == pytest.approx((5 * q, 1.0))
    assert peak_phase(T.XIV, 1, ExtremumKind.DOWNWARD) == pytest.approx((2 * q, -1.0))


def test_extrema_for_scaled_spec_scale_with_amplitude():
    base = extrema(T.XIII, k_max=3)
    scaled = extrema(T.XIII, SolutionSpec(T.XIII, 2.5, 1.0, 0.0, C2.pi2 / 2), k_max=3)
    for a, b in zip(base, scaled):
        assert b.t_exact == pytest.approx(a.t_exact, abs=1e-12)
        assert b.x_exact == pytest.approx(2.5 * a.x_exact, rel=1e-12)


def test_extrema_argument_checks():
    with pytest.raises(UnsupportedType):
        extrema(T.XI)
    with pytest.raises(ValueError):
        extrema(T.XIII, k_max=0)
    with pytest.raises(UnsupportedType):
        extrema(T.XIII, canonical_spec(T.XIV))


# ---- identities


def test_identity_examples_at_zero():
    dev = identity_deviations(0.0)
    assert dev["d"] == 0.0
    assert dev["f"] == 0.0


def test_identity_a_at_published_point():
    assert 1.286737281**2 == pytest.approx(math.cosh(2 * 0.545169614), abs=1e-8)
    assert identity_deviations(0.5)["a"] <= 1e-8


def test_all_identities_hold_on_the_grid():
    grid = identity_grid()
    assert len(grid) == 50
    assert grid[0] == pytest.approx(-C2.eta2 + 0.05)
    for rec in verify_identities():
        assert rec.passed, rec.row()


@settings(max_examples=60, deadline=None)
@given(st.floats(-C2.eta2 + 0.05, C2.eta2 - 0.05))
def test_identities_at_random_points(t):
    for dev in identity_deviations(t).values():
        assert dev <= 1e-8


def test_closed_form_check_passes():
    assert closed_form_check().passed


# ---- residual sweeps


def test_sweep_covers_the_parameter_grid():
    specs = sweep_specs()
    # A in {+-1, +-2}, omega in {+-1, +-1.3}, phi in {-2, 0, 1}, and B in {1, 2} where used
    assert len(specs) == 3 * 48 + 4 * 96
    assert {s.type for s in specs} == set(T)


def test_residual_sweep_example_and_invalid_spec():
    assert residual_sweep(canonical_spec(T.VIII), 100).max_deviation < 1e-6
    assert residual_sweep(canonical_spec(T.XIII), 100).max_deviation < 1e-6
    with pytest.raises(InvalidSpec):
        residual_sweep(SolutionSpec(T.VIII, 0.0, 1.0), 10)


def test_records_serialise_to_csv():
    text = records_to_csv(verify_identities()[:2])
    lines = text.splitlines()
    assert lines[0] == "id,samples,max_deviation,tolerance,result"
    assert lines[1].startswith("identity-a,50,")
    assert lines[1].endswith(",pass")
