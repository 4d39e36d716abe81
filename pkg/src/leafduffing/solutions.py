"""Exact solutions VIII-XIV of the unforced Duffing equation.

    x'' + delta x' + alpha x + beta x**3 = 0

Types VIII-X are built from the integral functions SL2 and CLH2 evaluated at
the phase ``omega t + phi``. Types XI-XIV multiply ``A e^(omega t)`` by a
basis-2 leaf function of the phase ``B e^(omega t) + phi``.

Derivatives are analytic. Wherever a formula needs the derivative of a leaf
function, the signed value from the trajectory is used instead of a positive
square root, so the expressions stay valid past the first quarter period.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass
from enum import Enum

from .errors import DomainExceeded, InvalidSpec, MissingB
from .leaf import DEFAULT_CONFIG, EvalConfig, LeafKind, constants, leaf_state

SQRT2 = math.sqrt(2.0)


class SolutionType(str, Enum):
    VIII = "VIII"
    IX = "IX"
    X = "X"
    XI = "XI"
    XII = "XII"
    XIII = "XIII"
    XIV = "XIV"

    @property
    def needs_B(self) -> bool:
        return self in _EXPONENTIAL

    @property
    def leaf(self) -> LeafKind | None:
        """Leaf function inside the exponential families, None for VIII-X."""
        return _EXPONENTIAL.get(self)

    @classmethod
    def parse(cls, text) -> "SolutionType":
        if isinstance(text, cls):
            return text
        key = str(text).strip().upper()
        if key.isdigit() and 8 <= int(key) <= 14:
            return list(cls)[int(key) - 8]
        try:
            return cls(key)
        except ValueError:
            raise ValueError(f"unknown solution type {text!r}; expected VIII..XIV") from None


_EXPONENTIAL = {
    SolutionType.XI: LeafKind.SLEAFH,
    SolutionType.XII: LeafKind.CLEAFH,
    SolutionType.XIII: LeafKind.SLEAF,
    SolutionType.XIV: LeafKind.CLEAF,
}

SPEC_FIELDS = ("type", "A", "omega", "phi", "B")


@dataclass(frozen=True)
class SolutionSpec:
    type: SolutionType
    A: float
    omega: float
    phi: float = 0.0
    B: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "type", SolutionType.parse(self.type))
        for name in ("A", "omega", "phi"):
            value = getattr(self, name)
            if not math.isfinite(float(value)):
                raise InvalidSpec(f"{name} must be finite, got {value!r}")
            object.__setattr__(self, name, float(value))
        if self.A == 0:
            raise InvalidSpec("amplitude A must be nonzero")
        if self.omega == 0:
            raise InvalidSpec("omega must be nonzero")
        if self.B is not None:
            if not self.type.needs_B:
                raise InvalidSpec(f"type {self.type.value} takes no B parameter")
            b = float(self.B)
            if not math.isfinite(b) or b == 0:
                raise InvalidSpec(f"B must be finite and nonzero, got {self.B!r}")
            object.__setattr__(self, "B", b)

    def require_B(self) -> float:
        if self.B is None:
            raise MissingB(f"type {self.type.value} requires the constant B")
        return self.B

    def to_dict(self) -> dict:
        d = asdict(self)
        d["type"] = self.type.value
        return d

    @classmethod
    def from_dict(cls, data: dict) -> "SolutionSpec":
        unknown = set(data) - set(SPEC_FIELDS)
        if unknown:
            raise InvalidSpec(f"unknown spec fields: {sorted(unknown)}")
        try:
            return cls(**{k: data[k] for k in SPEC_FIELDS if k in data and data[k] is not None})
        except TypeError as exc:
            raise InvalidSpec(str(exc)) from None

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "SolutionSpec":
        return cls.from_dict(json.loads(text))

    def label(self) -> str:
        parts = [f"type={self.type.value}", f"A={self.A:g}", f"omega={self.omega:g}", f"phi={self.phi:g}"]
        if self.B is not None:
            parts.append(f"B={self.B:.10g}")
        return " ".join(parts)


def canonical_spec(type_: SolutionType | str) -> SolutionSpec:
    """A=1, omega=1, phi=0, and B=pi2/2 for the types that take B."""
    type_ = SolutionType.parse(type_)
    B = constants().pi2 / 2 if type_.needs_B else None
    return SolutionSpec(type_, 1.0, 1.0, 0.0, B)


@dataclass(frozen=True)
class DuffingCoefficients:
    delta: float
    alpha: float
    beta: float
    F: float = 0.0

    def residual(self, x: float, v: float, a: float) -> float:
        return a + self.delta * v + self.alpha * x + self.beta * x**3


def coefficients(spec: SolutionSpec) -> DuffingCoefficients:
    """Duffing coefficients for which ``spec`` is an exact solution."""
    w, A, t = spec.omega, spec.A, spec.type
    if t is SolutionType.VIII:
        return DuffingCoefficients(0.0, 3 * w**2, -4 * (w / A) ** 2)
    if t is SolutionType.IX:
        return DuffingCoefficients(0.0, -3 * w**2, -4 * (w / A) ** 2)
    if t is SolutionType.X:
        return DuffingCoefficients(0.0, 3 * w**2 * (1 + 2 * SQRT2), -2 * (w / A) ** 2)
    scale = 2 * (spec.require_B() * w / A) ** 2
    if t in (SolutionType.XI, SolutionType.XII):
        return DuffingCoefficients(-3 * w, 2 * w**2, -scale)
    return DuffingCoefficients(-3 * w, 2 * w**2, scale)


# ------------------------------------------------------------------ domains

@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float

    def __contains__(self, t: float) -> bool:
        return self.lo < t < self.hi

    @property
    def finite(self) -> bool:
        return math.isfinite(self.lo) and math.isfinite(self.hi)


@dataclass(frozen=True)
class Domain:
    """Open intervals of t on which the solution is finite, with their poles."""

    intervals: tuple[Interval, ...]
    poles: tuple[float, ...]

    def contains(self, t: float) -> bool:
        return any(t in iv for iv in self.intervals)

    @property
    def empty(self) -> bool:
        return not self.intervals

    def nearest_pole(self, t: float) -> float | None:
        return min(self.poles, key=lambda p: abs(p - t)) if self.poles else None

    def to_dict(self) -> dict:
        return {
            "intervals": [[iv.lo, iv.hi] for iv in self.intervals],
            "poles": list(self.poles),
        }


_EVERYWHERE = Domain((Interval(-math.inf, math.inf),), ())


def domain(spec: SolutionSpec) -> Domain:
    """Where ``spec`` is finite.

    VIII-X need ``|omega t + phi| < eta2``. XI and XII need the phase
    ``B e^(omega t) + phi`` strictly between minus and plus the pole of their
    leaf function; every sign combination of B, omega and phi is handled by
    solving for ``E = e^(omega t) > 0`` first. XIII and XIV are finite
    everywhere.
    """
    c = constants()
    t = spec.type
    if t in (SolutionType.XIII, SolutionType.XIV):
        return _EVERYWHERE
    if t in (SolutionType.VIII, SolutionType.IX, SolutionType.X):
        a = (-c.eta2 - spec.phi) / spec.omega
        b = (c.eta2 - spec.phi) / spec.omega
        lo, hi = min(a, b), max(a, b)
        return Domain((Interval(lo, hi),), (lo, hi))

    B = spec.require_B()
    P = c.zeta2 if t is SolutionType.XI else c.eta2
    e1, e2 = (-P - spec.phi) / B, (P - spec.phi) / B
    e_lo, e_hi = min(e1, e2), max(e1, e2)
    if e_hi <= 0:
        return Domain((), ())
    poles: list[float] = []
    if e_lo > 0:
        t1 = math.log(e_lo) / spec.omega
        poles.append(t1)
    else:
        t1 = -math.inf if spec.omega > 0 else math.inf
    t2 = math.log(e_hi) / spec.omega
    poles.append(t2)
    lo, hi = min(t1, t2), max(t1, t2)
    return Domain((Interval(lo, hi),), tuple(sorted(poles)))


def _check_domain(spec: SolutionSpec, t: float) -> None:
    if not math.isfinite(t):
        raise DomainExceeded(f"non-finite time {t!r}")
    if spec.type in (SolutionType.XIII, SolutionType.XIV):
        return
    dom = domain(spec)
    if not dom.contains(t):
        pole = dom.nearest_pole(t)
        where = f"pole at {pole:.5f}" if pole is not None else "empty domain"
        raise DomainExceeded(f"{where}: t={t:g} is outside the domain of type {spec.type.value}")


# --------------------------------------------------------------- evaluation

class _Jet:
    """x, x' and x'' of a solution at one instant."""

    __slots__ = ("x", "v", "a")

    def __init__(self, x: float, v: float, a: float):
        self.x, self.v, self.a = x, v, a


def _jet(spec: SolutionSpec, t: float, cfg: EvalConfig) -> _Jet:
    t = float(t)
    typ = spec.type
    if typ.needs_B:
        spec.require_B()
    _check_domain(spec, t)
    A, w, phi = spec.A, spec.omega, spec.phi

    if typ in (SolutionType.VIII, SolutionType.IX, SolutionType.X):
        p = w * t + phi
        ch = leaf_state(LeafKind.CLEAFH, 2, p, cfg)
        C, c, dc = ch.integral, ch.x, ch.v  # CLH2, cleafh2, cleafh2'
        cosh_c, sinh_c = math.cosh(C), math.sinh(C)
        if typ is SolutionType.VIII:
            x = A * cosh_c
            v = A * w * sinh_c * c
            a = A * w * w * (cosh_c * c * c + sinh_c * dc)
            return _Jet(x, v, a)
        if typ is SolutionType.IX:
            x = A * sinh_c
            v = A * w * cosh_c * c
            a = A * w * w * (sinh_c * c * c + cosh_c * dc)
            return _Jet(x, v, a)
        sl = leaf_state(LeafKind.SLEAF, 2, p, cfg)
        S, s, ds = sl.integral, sl.x, sl.v  # SL2, sleaf2, sleaf2'
        cos_s, sin_s = math.cos(S), math.sin(S)
        x = A * (cos_s - sin_s + SQRT2 * cosh_c)
        v = A * w * (-sin_s * s - cos_s * s + SQRT2 * sinh_c * c)
        a = A * w * w * (
            -cos_s * s * s - sin_s * ds
            + sin_s * s * s - cos_s * ds
            + SQRT2 * (cosh_c * c * c + sinh_c * dc)
        )
        return _Jet(x, v, a)

    # x = A E L(g + phi) with E = e^(w t), g = B E
    B = spec.B
    E = math.exp(w * t)
    g = B * E
    state = leaf_state(typ.leaf, 2, g + phi, cfg)
    L, dL = state.x, state.v
    d2L = (2.0 if typ.leaf.hyperbolic else -2.0) * L**3
    x = A * E * L
    v = A * w * E * (L + g * dL)
    a = A * w * w * E * (L + 3 * g * dL + g * g * d2L)
    return _Jet(x, v, a)


def evaluate(spec: SolutionSpec, t: float, cfg: EvalConfig = DEFAULT_CONFIG) -> float:
    """x(t) for the solution described by ``spec``.

    Raises DomainExceeded outside ``domain(spec)``, PoleProximity when the
    phase comes within ``cfg.pole_guard`` of a leaf-function pole and MissingB
    when an exponential family has no B.
    """
    return _jet(spec, t, cfg).x


def derivative(spec: SolutionSpec, t: float, cfg: EvalConfig = DEFAULT_CONFIG) -> float:
    """Analytic dx/dt."""
    return _jet(spec, t, cfg).v


def second_derivative(spec: SolutionSpec, t: float, cfg: EvalConfig = DEFAULT_CONFIG) -> float:
    """Analytic d2x/dt2."""
    return _jet(spec, t, cfg).a


def jet(spec: SolutionSpec, t: float, cfg: EvalConfig = DEFAULT_CONFIG) -> tuple[float, float, float]:
    """(x, dx/dt, d2x/dt2) in one evaluation."""
    j = _jet(spec, t, cfg)
    return j.x, j.v, j.a


def initial_state(spec: SolutionSpec, cfg: EvalConfig = DEFAULT_CONFIG) -> tuple[float, float]:
    """Closed-form (x(0), dx/dt(0)).

    The exponential families use the first integral of their leaf function for
    the magnitude of its derivative; the sign is read from the trajectory.
    Where the leaf function sits at a turning point (|L| = 1 for XIII/XIV) the
    radical keeps only about half the digits of L, so ``jet(spec, 0)`` is the
    better-conditioned route to the same numbers.
    """
    typ = spec.type
    if typ.needs_B:
        spec.require_B()
    _check_domain(spec, 0.0)
    A, w, phi = spec.A, spec.omega, spec.phi

    if typ in (SolutionType.VIII, SolutionType.IX, SolutionType.X):
        ch = leaf_state(LeafKind.CLEAFH, 2, phi, cfg)
        C, c = ch.integral, ch.x
        if typ is SolutionType.VIII:
            return A * math.cosh(C), A * math.sinh(C) * w * c
        if typ is SolutionType.IX:
            return A * math.sinh(C), A * math.cosh(C) * w * c
        sl = leaf_state(LeafKind.SLEAF, 2, phi, cfg)
        S, s = sl.integral, sl.x
        x0 = SQRT2 * A * (math.cos(S + math.pi / 4) + math.cosh(C))
        v0 = (-A * math.sin(S) * w * s - A * math.cos(S) * w * s
              + SQRT2 * A * math.sinh(C) * w * c)
        return x0, v0

    B = spec.B
    state = leaf_state(typ.leaf, 2, B + phi, cfg)
    L = state.x
    if typ is SolutionType.XI:
        radicand = 1 + L**4
    elif typ is SolutionType.XII:
        radicand = L**4 - 1
    else:
        radicand = 1 - L**4
    radical = math.copysign(math.sqrt(max(radicand, 0.0)), state.v)
    return A * L, A * w * L + A * B * w * radical
