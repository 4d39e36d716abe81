import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from leafduffing import (
    DomainExceeded,
    IntegralKind,
    LeafKind,
    PoleProximity,
    clh2_closed_form,
    constants,
    eval_integral,
    eval_leaf,
)
from leafduffing.oracle import oracle_leaf

SL2, SLH2, CLH2 = IntegralKind.SL2, IntegralKind.SLH2, IntegralKind.CLH2
C2 = constants()


@pytest.mark.parametrize(
    "kind, t, expected",
    [
        (CLH2, 0.5, 0.545169614),
        (SLH2, 1.0, 0.517553929),
        (CLH2, 1.0, 1.514209452),
    ],
)
def test_published_values(kind, t, expected):
    assert eval_integral(kind, t) == pytest.approx(expected, abs=1e-9)


def test_empty_integrals():
    for kind in IntegralKind:
        assert eval_integral(kind, 0.0) == 0.0
    assert clh2_closed_form(0.0) == 0.0


@pytest.mark.parametrize("t, expected", [(0.5, 0.545169614), (1.0, 1.514209452)])
def test_closed_form_published_values(t, expected):
    assert clh2_closed_form(t) == pytest.approx(expected, abs=1e-9)


@pytest.mark.parametrize("kind", list(IntegralKind))
def test_integral_against_quadrature_of_the_oracle(kind):
    # quadrature of the independent inversion oracle over [0, t]
    for t in (0.3, 0.9):
        ref = mpmath.quad(lambda u: oracle_leaf(kind.integrand, float(u)), [0, t])
        assert eval_integral(kind, t) == pytest.approx(float(ref), abs=1e-10)


def test_closed_form_matches_quadrature_on_the_domain():
    for t in np.linspace(-C2.eta2 + 0.05, C2.eta2 - 0.05, 50):
        assert abs(eval_integral(CLH2, t) - clh2_closed_form(t)) <= 1e-8


@settings(max_examples=50, deadline=None)
@given(st.sampled_from(list(IntegralKind)), st.floats(0.0, 1.0))
def test_parity(kind, frac):
    limit = {SL2: 7.0, SLH2: C2.zeta2 - 0.1, CLH2: C2.eta2 - 0.1}[kind]
    t = frac * limit
    a, b = eval_integral(kind, t), eval_integral(kind, -t)
    if kind is CLH2:
        assert abs(a + b) <= 1e-12
    else:
        assert abs(a - b) <= 1e-12


@pytest.mark.parametrize("kind", list(IntegralKind))
def test_derivative_recovers_the_integrand(kind):
    limit = {SL2: 6.0, SLH2: C2.zeta2 - 0.1, CLH2: C2.eta2 - 0.1}[kind]
    h = 1e-5
    for t in np.linspace(-limit, limit, 21):
        slope = (eval_integral(kind, t + h) - eval_integral(kind, t - h)) / (2 * h)
        assert slope == pytest.approx(eval_leaf(kind.integrand, 2, t), abs=1e-6, rel=1e-6)


def test_sl2_over_a_full_period_vanishes():
    assert abs(eval_integral(SL2, 2 * C2.pi2)) <= 1e-12
    assert eval_integral(SL2, 40.0) == pytest.approx(eval_integral(SL2, 40.0 - 6 * C2.pi2), abs=1e-11)


def test_sl2_half_period_closed_form():
    # sin(2 SL2) = sleaf2^2, and sleaf2 = 1 at the quarter period, so SL2 = pi/4 there
    assert eval_integral(SL2, C2.pi2 / 2) == pytest.approx(math.pi / 4, abs=1e-12)


def test_domain_errors():
    with pytest.raises(DomainExceeded):
        eval_integral(CLH2, 1.5)
    with pytest.raises(PoleProximity):
        eval_integral(SLH2, C2.zeta2 - 1e-4)
    with pytest.raises(DomainExceeded):
        clh2_closed_form(-2.0)


def test_integrands():
    assert SL2.integrand is LeafKind.SLEAF
    assert SLH2.integrand is LeafKind.SLEAFH
    assert CLH2.integrand is LeafKind.CLEAFH
    assert IntegralKind.parse("clh2") is CLH2
    with pytest.raises(ValueError):
        IntegralKind.parse("XL2")
