"""Running integrals SL2, SLH2 and CLH2 of the basis-2 leaf functions.

The integral is carried as a third state variable in the same trajectory
that produces the function value, so no separate quadrature is involved.
SL2 inherits the periodic reduction of sleaf_2: it is even with period
2 * pi2, and over half a period it rises to twice its quarter-period value.
"""

from __future__ import annotations

import math
from enum import Enum

from .errors import NegativeRadicand
from .leaf import DEFAULT_CONFIG, EvalConfig, LeafKind, leaf_state

# Relative slack, in units of c**2, before c**2 < 1 is treated as a bug.
_RADICAND_SLACK = 1e-12


class IntegralKind(str, Enum):
    SL2 = "SL2"
    SLH2 = "SLH2"
    CLH2 = "CLH2"

    @property
    def integrand(self) -> LeafKind:
        return _INTEGRAND[self]

    @classmethod
    def parse(cls, text: str) -> "IntegralKind":
        key = text.strip().upper()
        try:
            return cls(key)
        except ValueError:
            raise ValueError(f"unknown integral kind {text!r}; expected SL2, SLH2 or CLH2") from None


_INTEGRAND = {
    IntegralKind.SL2: LeafKind.SLEAF,
    IntegralKind.SLH2: LeafKind.SLEAFH,
    IntegralKind.CLH2: LeafKind.CLEAFH,
}


def eval_integral(kind: IntegralKind, t: float, cfg: EvalConfig = DEFAULT_CONFIG) -> float:
    """Integral of the matching basis-2 leaf function from 0 to ``t``.

    Raises DomainExceeded or PoleProximity for SLH2/CLH2 outside the
    integrand's domain.
    """
    kind = IntegralKind(kind)
    return leaf_state(kind.integrand, 2, t, cfg).integral


def clh2_closed_form(t: float, cfg: EvalConfig = DEFAULT_CONFIG) -> float:
    """CLH2 from the value of cleafh_2 alone.

    Uses ``ln(sqrt(c**2 + 1) + sqrt(c**2 - 1)) - ln(sqrt(2))`` with
    ``c = cleafh_2(t)`` and the sign of ``t``, since the logarithm only sees
    the even function c.
    """
    c = leaf_state(LeafKind.CLEAFH, 2, t, cfg).x
    c2 = c * c
    radicand = c2 - 1.0
    if radicand < 0.0:
        if radicand < -_RADICAND_SLACK * c2:
            raise NegativeRadicand(f"cleafh_2({t}) squared is {c2!r}, below 1")
        radicand = 0.0
    value = math.log(math.sqrt(c2 + 1.0) + math.sqrt(radicand)) - 0.5 * math.log(2.0)
    return math.copysign(value, t) if t != 0 else 0.0
