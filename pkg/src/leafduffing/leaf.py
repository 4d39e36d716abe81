"""Leaf functions and hyperbolic leaf functions of integer basis n.

Every kind is the solution of an autonomous second-order initial-value
problem::

    sleaf_n, cleaf_n    x'' = -n x**(2n-1)
    sleafh_n, cleafh_n  x'' = +n x**(2n-1)

with x(0)=0, x'(0)=1 for the sine-like kinds and x(0)=1, x'(0)=0 for the
cosine-like kinds. Each is evaluated from a dense-output DOP853 trajectory of
the state (x, x', running integral of x). Trajectories are built lazily, once
per (kind, n, config), and never mutated afterwards.

Periodic kinds are integrated over one quarter period only; any other
argument is mapped back with the exact symmetries of the wave. Hyperbolic
kinds are integrated from 0 until |x| exceeds 1e8 and extended to negative t
by parity.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import NamedTuple

import numpy as np
from scipy.integrate import solve_ivp

from .errors import DomainExceeded, InvalidBasis, PoleProximity
from .quadrature import integrate

# |x| at which a hyperbolic trajectory is considered to have escaped.
ESCAPE_THRESHOLD = 1e8

# DOP853 refuses rtol below 100 * machine epsilon.
_MIN_RTOL = 100.0 * np.finfo(float).eps
# Solver tolerances are set this much tighter than the requested accuracy so
# that dense-output interpolation and argument reduction fit in the budget.
_SOLVER_SAFETY = 1e-3


class LeafKind(str, Enum):
    SLEAF = "sleaf"
    CLEAF = "cleaf"
    SLEAFH = "sleafh"
    CLEAFH = "cleafh"

    @property
    def hyperbolic(self) -> bool:
        return self in (LeafKind.SLEAFH, LeafKind.CLEAFH)

    @property
    def sine_like(self) -> bool:
        return self in (LeafKind.SLEAF, LeafKind.SLEAFH)

    @classmethod
    def parse(cls, text: str) -> "LeafKind":
        try:
            return cls(text.strip().lower())
        except ValueError:
            names = ", ".join(k.value for k in cls)
            raise ValueError(f"unknown leaf kind {text!r}; expected one of {names}") from None


@dataclass(frozen=True)
class EvalConfig:
    """Accuracy and safety settings shared by every evaluation.

    ``pole_guard`` is the smallest distance to a blow-up point at which an
    evaluation is still attempted.
    """

    abs_tol: float = 1e-12
    rel_tol: float = 1e-10
    pole_guard: float = 1e-3

    def __post_init__(self):
        for name in ("abs_tol", "rel_tol", "pole_guard"):
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
                raise ValueError(f"{name} must be a positive finite number, got {value!r}")

    @property
    def solver_rtol(self) -> float:
        return max(self.rel_tol * _SOLVER_SAFETY, _MIN_RTOL)

    @property
    def solver_atol(self) -> float:
        return self.abs_tol * _SOLVER_SAFETY


DEFAULT_CONFIG = EvalConfig()


class LeafConstants(NamedTuple):
    zeta2: float  # pole of sleafh_2
    eta2: float  # pole of cleafh_2
    pi2: float  # period constant; sleaf_2 has period 2 * pi2


class LeafState(NamedTuple):
    x: float
    v: float
    integral: float


class Pole(float):
    """A pole abscissa; ``approximate`` is True when it was detected numerically."""

    approximate: bool

    def __new__(cls, value: float, approximate: bool = False):
        obj = super().__new__(cls, value)
        obj.approximate = approximate
        return obj

    def __repr__(self) -> str:
        tag = ", approximate" if self.approximate else ""
        return f"Pole({float(self)!r}{tag})"


def _check_basis(n) -> int:
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 1:
        raise InvalidBasis(f"basis must be an integer >= 1, got {n!r}")
    return int(n)


def quarter_period(n: int) -> float:
    """Quarter period of sleaf_n: the integral of (1 - u**(2n))**-1/2 over [0, 1]."""
    n = _check_basis(n)
    a = 1.0 / (2 * n)
    return math.sqrt(math.pi) * math.gamma(1.0 + a) / math.gamma(0.5 + a)


# ---------------------------------------------------------------- constants

def _zeta_integrand(theta):
    # u = tan(theta) maps [0, inf) onto [0, pi/2)
    c, s = np.cos(theta), np.sin(theta)
    return 1.0 / np.sqrt(c**4 + s**4)


def _eta_integrand(theta):
    # u = sec(theta) maps [1, inf) onto [0, pi/2)
    return 1.0 / np.sqrt(1.0 + np.cos(theta) ** 2)


def _half_pi2_integrand(theta):
    # u = sin(theta) maps [0, 1] onto [0, pi/2]
    return 1.0 / np.sqrt(1.0 + np.sin(theta) ** 2)


@lru_cache(maxsize=None)
def _constants(rel_tol: float, abs_tol: float) -> LeafConstants:
    tol = dict(abs_tol=min(abs_tol, 1e-14), rel_tol=min(rel_tol, 1e-13))
    zeta2 = integrate(_zeta_integrand, 0.0, math.pi / 2, **tol)
    eta2 = integrate(_eta_integrand, 0.0, math.pi / 2, **tol)
    pi2 = 2.0 * integrate(_half_pi2_integrand, 0.0, math.pi / 2, **tol)
    return LeafConstants(zeta2, eta2, pi2)


def constants(cfg: EvalConfig = DEFAULT_CONFIG) -> LeafConstants:
    """Pole constants of the n=2 hyperbolic kinds and the n=2 period constant.

    The improper integrals are mapped to [0, pi/2] by trigonometric
    substitution and integrated with adaptive Gauss-Kronrod. ``pi2`` is
    computed from its own integral so that ``eta2 == pi2 / 2`` is a genuine
    cross-check.
    """
    return _constants(cfg.rel_tol, cfg.abs_tol)


# ------------------------------------------------------------ trajectories

@dataclass(frozen=True)
class _Trajectory:
    kind: LeafKind
    n: int
    end: float  # last abscissa covered by the dense output
    pole: Pole | None
    sol: object  # scipy OdeSolution

    def state(self, t: float) -> np.ndarray:
        return self.sol(t)


_CACHE: dict[tuple[LeafKind, int, EvalConfig], _Trajectory] = {}
_LOCK = threading.Lock()


def clear_caches() -> None:
    """Drop all cached trajectories and constants (used for cold-start timing)."""
    with _LOCK:
        _CACHE.clear()
    _constants.cache_clear()


def _initial(kind: LeafKind) -> list[float]:
    return [0.0, 1.0, 0.0] if kind.sine_like else [1.0, 0.0, 0.0]


def _build(kind: LeafKind, n: int, cfg: EvalConfig) -> _Trajectory:
    sign = 1.0 if kind.hyperbolic else -1.0
    power = 2 * n - 1

    def rhs(_t, y):
        return [y[1], sign * n * y[0] ** power, y[0]]

    opts = dict(method="DOP853", dense_output=True, rtol=cfg.solver_rtol, atol=cfg.solver_atol)

    if not kind.hyperbolic:
        q = quarter_period(n)
        # A small overshoot keeps the endpoint inside the interpolant.
        end = q * (1.0 + 1e-9)
        res = solve_ivp(rhs, (0.0, end), _initial(kind), **opts)
        if not res.success:
            raise RuntimeError(f"integration of {kind.value}_{n} failed: {res.message}")
        return _Trajectory(kind, n, end, None, res.sol)

    def escape(_t, y):
        return abs(y[0]) - ESCAPE_THRESHOLD

    escape.terminal = True
    escape.direction = 1

    # Hyperbolic solutions reach the threshold well before t = 40 for n = 1
    # (sinh) and much sooner for larger n.
    res = solve_ivp(rhs, (0.0, 40.0), _initial(kind), events=escape, **opts)
    end = float(res.t[-1])
    # For n >= 3 the blow-up is steep enough that the step size can underflow
    # before |x| reaches the threshold; the last accepted step is then the
    # best available bound.
    if res.status == -1 and not (res.sol is not None and abs(res.y[0, -1]) > 1e3):
        raise RuntimeError(f"integration of {kind.value}_{n} failed: {res.message}")

    pole: Pole | None
    if n == 1:
        pole = None
    elif n == 2:
        c = constants(cfg)
        pole = Pole(c.zeta2 if kind is LeafKind.SLEAFH else c.eta2)
    else:
        pole = Pole(end, approximate=True)
    return _Trajectory(kind, n, end, pole, res.sol)


def _trajectory(kind: LeafKind, n: int, cfg: EvalConfig) -> _Trajectory:
    key = (kind, n, cfg)
    traj = _CACHE.get(key)
    if traj is None:
        with _LOCK:
            traj = _CACHE.get(key)
            if traj is None:
                traj = _build(kind, n, cfg)
                _CACHE[key] = traj
    return traj


def pole_of(kind: LeafKind, n: int, cfg: EvalConfig = DEFAULT_CONFIG) -> Pole | None:
    """Positive blow-up abscissa, or None when the function is finite everywhere.

    For n=2 the exact constants are returned. For n >= 3 the hyperbolic
    kinds report the abscissa where |x| crossed the escape threshold, with
    ``approximate`` set. sinh and cosh (n=1) have no pole.
    """
    kind = LeafKind(kind)
    n = _check_basis(n)
    if not kind.hyperbolic:
        return None
    if n == 2:
        c = constants(cfg)
        return Pole(c.zeta2 if kind is LeafKind.SLEAFH else c.eta2)
    return _trajectory(kind, n, cfg).pole


# ----------------------------------------------------------- evaluation

def _periodic_state(traj: _Trajectory, t: float) -> LeafState:
    q = quarter_period(traj.n)
    quarter = traj.state(q)
    jq = float(quarter[2])  # integral over one quarter period

    if traj.kind is LeafKind.SLEAF:
        # odd; x(t + 2q) = -x(t); x(2q - t) = x(t)
        parity = -1.0 if t < 0 else 1.0
        r = math.fmod(abs(t), 4 * q)
        shift = r >= 2 * q
        if shift:
            r -= 2 * q
        if r > q:
            y = traj.state(2 * q - r)
            x, v, j = y[0], -y[1], 2 * jq - y[2]
        else:
            y = traj.state(r)
            x, v, j = y[0], y[1], y[2]
        if shift:
            x, v, j = -x, -v, 2 * jq - j
        return LeafState(float(parity * x), float(v), float(j))

    # cleaf: even; x(t + 2q) = -x(t); x(2q - t) = -x(t)
    parity = -1.0 if t < 0 else 1.0
    r = math.fmod(abs(t), 4 * q)
    shift = r >= 2 * q
    if shift:
        r -= 2 * q
    if r > q:
        y = traj.state(2 * q - r)
        x, v, j = -y[0], y[1], y[2]
    else:
        y = traj.state(r)
        x, v, j = y[0], y[1], y[2]
    if shift:
        x, v, j = -x, -v, -j
    return LeafState(float(x), float(parity * v), float(parity * j))


def _domain_error(kind: LeafKind, n: int, t: float, traj: _Trajectory, cfg: EvalConfig):
    a = abs(t)
    pole = traj.pole
    name = f"{kind.value}_{n}"
    if pole is None:
        if a > traj.end:
            return DomainExceeded(
                f"|t|={a:g} exceeds the integrated range {traj.end:.5f} of {name}"
            )
        return None
    tag = " (approximate)" if pole.approximate else ""
    if a >= pole:
        return DomainExceeded(f"pole at {float(pole):.5f}{tag}: |t|={a:g} is beyond the pole of {name}")
    if a > pole - cfg.pole_guard or a > traj.end:
        return PoleProximity(
            f"pole at {float(pole):.5f}{tag}: |t|={a:g} is within {cfg.pole_guard:g} of the pole of {name}"
        )
    return None


def leaf_state(kind: LeafKind, n: int, t: float, cfg: EvalConfig = DEFAULT_CONFIG) -> LeafState:
    """(x, x', running integral from 0) of a leaf function at ``t``.

    Raises
    ------
    InvalidBasis
        ``n`` is not an integer >= 1.
    DomainExceeded
        ``|t|`` is at or beyond the pole.
    PoleProximity
        ``|t|`` is within ``cfg.pole_guard`` of the pole.
    """
    kind = LeafKind(kind)
    n = _check_basis(n)
    t = float(t)
    if not math.isfinite(t):
        raise DomainExceeded(f"non-finite argument {t!r}")
    traj = _trajectory(kind, n, cfg)

    if not kind.hyperbolic:
        return _periodic_state(traj, t)

    err = _domain_error(kind, n, t, traj, cfg)
    if err is not None:
        raise err
    y = traj.state(abs(t))
    x, v, j = float(y[0]), float(y[1]), float(y[2])
    if t < 0:
        if kind.sine_like:
            x = -x  # odd function, even derivative, even integral
        else:
            v, j = -v, -j  # even function, odd derivative, odd integral
    return LeafState(x, v, j)


def eval_leaf(kind: LeafKind, n: int, t: float, cfg: EvalConfig = DEFAULT_CONFIG) -> float:
    """Value of the leaf function ``kind`` of basis ``n`` at ``t``."""
    return leaf_state(kind, n, t, cfg).x


def eval_leaf_derivative(kind: LeafKind, n: int, t: float, cfg: EvalConfig = DEFAULT_CONFIG) -> float:
    """First derivative, with its sign taken from the trajectory."""
    return leaf_state(kind, n, t, cfg).v


def eval_leaf_second_derivative(kind: LeafKind, n: int, t: float, cfg: EvalConfig = DEFAULT_CONFIG) -> float:
    """Second derivative from the defining equation."""
    kind = LeafKind(kind)
    x = eval_leaf(kind, n, t, cfg)
    sign = 1.0 if kind.hyperbolic else -1.0
    return sign * n * x ** (2 * n - 1)
