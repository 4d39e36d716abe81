"""Independent n=2 reference values by inverting incomplete integrals.

Each leaf function of basis 2 is the inverse of an elliptic-type integral
built from its first integral. After a trigonometric substitution the
integrands are smooth on a finite interval, so the inverse can be found by
plain bisection on an angle with Gauss-Kronrod quadrature inside. Nothing
here touches the ODE integrator, which makes it usable as a cross-check.
"""

from __future__ import annotations

import math

import numpy as np

from .leaf import LeafKind, constants
from .quadrature import integrate
from .roots import bisect

_HALF_PI = math.pi / 2


def _sin_form(theta):
    return 1.0 / np.sqrt(1.0 + np.sin(theta) ** 2)


def _cos_form(theta):
    return 1.0 / np.sqrt(1.0 + np.cos(theta) ** 2)


def _tan_form(theta):
    c, s = np.cos(theta), np.sin(theta)
    return 1.0 / np.sqrt(c**4 + s**4)


def _elapsed(integrand, theta: float) -> float:
    return integrate(integrand, 0.0, theta, abs_tol=1e-15, rel_tol=1e-14)


def _invert(integrand, target: float) -> float:
    """Angle theta in [0, pi/2] at which the running integral equals ``target``."""
    return bisect(lambda th: _elapsed(integrand, th) - target, 0.0, _HALF_PI)


def oracle_leaf(kind: LeafKind, t: float) -> float:
    """Reference value of ``kind`` with basis 2.

    Periodic kinds are restricted to one quarter period, ``|t| <= pi2/2``;
    hyperbolic kinds to ``|t|`` below their pole.
    """
    kind = LeafKind(kind)
    c = constants()
    a = abs(float(t))
    sign = -1.0 if t < 0 and kind.sine_like else 1.0

    if kind is LeafKind.SLEAF:
        # t = int_0^asin(x) dtheta / sqrt(1 + sin^2)
        _limit(a, c.pi2 / 2, kind)
        return sign * math.sin(_invert(_sin_form, a))
    if kind is LeafKind.CLEAF:
        # quarter - t = int_0^asin(x) ..., since cleaf(t) = sleaf(quarter - t)
        _limit(a, c.pi2 / 2, kind)
        return math.sin(_invert(_sin_form, c.pi2 / 2 - a))
    if kind is LeafKind.SLEAFH:
        # t = int_0^atan(x) dtheta / sqrt(cos^4 + sin^4)
        _limit(a, c.zeta2, kind)
        return sign * math.tan(_invert(_tan_form, a))
    # cleafh: t = int_0^asec(x) dtheta / sqrt(1 + cos^2)
    _limit(a, c.eta2, kind)
    return 1.0 / math.cos(_invert(_cos_form, a))


def _limit(a: float, bound: float, kind: LeafKind) -> None:
    if a >= bound and not (kind in (LeafKind.SLEAF, LeafKind.CLEAF) and a == bound):
        raise ValueError(f"oracle for {kind.value}_2 only covers |t| < {bound:.6f}")
