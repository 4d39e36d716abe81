import math

import numpy as np

import pytest
import scipy.integrate
from hypothesis import given, settings
from hypothesis import strategies as st

from leafduffing.errors import QuadratureFailure, RootBracketFailure
from leafduffing.quadrature import gk15, integrate
from leafduffing.roots import bisect, bisect_secant, sign_changes


def test_gk15_is_exact_for_low_degree_polynomials():
    value, err = gk15(lambda x: x**20 - 3 * x**7 + 1, -1.0, 2.0)
    expected = (2**21 + 1) / 21 - 3 * (2**8 - 1) / 8 + 3
    assert value == pytest.approx(expected, rel=1e-14)
    assert err >= 0


@settings(max_examples=40, deadline=None)
@given(st.floats(0.1, 5.0), st.floats(-3.0, 3.0))
def test_integrate_matches_scipy_quad(width, start):
    f = lambda x: np.exp(-x * x) * np.cos(3 * x)
    mine = integrate(f, start, start + width)
    ref, _ = scipy.integrate.quad(f, start, start + width, epsabs=1e-14, epsrel=1e-13)
    assert mine == pytest.approx(ref, rel=1e-12, abs=1e-14)


def test_integrate_reversed_and_empty_ranges():
    assert integrate(np.sin, 0.0, 0.0) == 0.0
    assert integrate(np.sin, math.pi, 0.0) == pytest.approx(-2.0, rel=1e-14)


def test_integrate_reports_failure():
    with pytest.raises(QuadratureFailure):
        integrate(lambda x: 1.0 / np.sqrt(np.abs(x - 0.1)), -1.0, 1.0, max_panels=20)


def test_sign_changes_finds_every_root_of_sine():
    brackets = list(sign_changes(math.sin, 0.5, 10.0, pieces=64))
    assert len(brackets) == 3
    for lo, hi, flo, fhi in brackets:
        assert flo * fhi < 0
        assert hi - lo == pytest.approx(9.5 / 64)


@settings(max_examples=60, deadline=None)
@given(st.floats(-50, 50))
def test_bisect_secant_hits_a_known_root(root):
    f = lambda x: math.atan(x - root)
    x = bisect_secant(f, root - 7.3, root + 11.1)
    assert abs(x - root) <= 8 * 2.2e-16 * max(1.0, abs(root))


def test_bisect_secant_needs_a_bracket():
    with pytest.raises(RootBracketFailure):
        bisect_secant(lambda x: x * x + 1, -1.0, 1.0)


def test_plain_bisection_converges_to_machine_precision():
    x = bisect(lambda x: x**3 - 2, 0.0, 2.0)
    assert x == pytest.approx(2 ** (1 / 3), abs=4e-16)
