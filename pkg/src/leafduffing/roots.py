"""Bracketed scalar root finding: grid scan, bisection, then secant polish."""

from __future__ import annotations

import math
from typing import Callable, Iterator

import numpy as np

from .errors import RootBracketFailure

Func = Callable[[float], float]


def sign_changes(f: Func, a: float, b: float, pieces: int = 64) -> Iterator[tuple[float, float, float, float]]:
    """Yield ``(lo, hi, f(lo), f(hi))`` for every subinterval with a sign change.

    The window ``[a, b]`` is cut into ``pieces`` equal subintervals. An exact
    zero at a grid point is reported as a degenerate bracket.
    """
    grid = np.linspace(a, b, pieces + 1)
    prev_x, prev_f = float(grid[0]), f(float(grid[0]))
    for x in grid[1:]:
        x = float(x)
        fx = f(x)
        if prev_f == 0.0:
            yield prev_x, prev_x, prev_f, prev_f
        elif prev_f * fx < 0.0:
            yield prev_x, x, prev_f, fx
        prev_x, prev_f = x, fx
    if prev_f == 0.0:
        yield prev_x, prev_x, prev_f, prev_f


def bisect_secant(
    f: Func,
    a: float,
    b: float,
    xtol: float = 1e-15,
    fa: float | None = None,
    fb: float | None = None,
    switch_width: float = 1e-6,
    max_iter: int = 200,
) -> float:
    """Root of ``f`` in ``[a, b]`` given ``f(a) * f(b) <= 0``.

    Bisection shrinks the bracket to ``switch_width`` (relative to the
    bracket scale); a secant step then polishes, falling back to bisection
    whenever the secant iterate leaves the current bracket.
    """
    fa = f(a) if fa is None else fa
    fb = f(b) if fb is None else fb
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    if fa * fb > 0.0 or math.isnan(fa) or math.isnan(fb):
        raise RootBracketFailure(f"no sign change on [{a}, {b}]: f = {fa}, {fb}")

    scale = max(abs(a), abs(b), 1.0)
    tol = max(xtol, 4.0 * np.finfo(float).eps * scale)
    for _ in range(max_iter):
        width = abs(b - a)
        if width <= tol:
            break
        if width > switch_width * scale:
            x = 0.5 * (a + b)
        else:
            x = b - fb * (b - a) / (fb - fa)
            lo, hi = min(a, b), max(a, b)
            if not lo < x < hi:
                x = 0.5 * (a + b)
        fx = f(x)
        if fx == 0.0:
            return x
        if fa * fx < 0.0:
            b, fb = x, fx
        else:
            a, fa = x, fx
    return a if abs(fa) < abs(fb) else b


def bisect(f: Func, a: float, b: float, xtol: float = 0.0, max_iter: int = 200) -> float:
    """Plain bisection; used by the oracle so it shares nothing with the secant path."""
    fa, fb = f(a), f(b)
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    if fa * fb > 0.0:
        raise RootBracketFailure(f"no sign change on [{a}, {b}]")
    for _ in range(max_iter):
        mid = 0.5 * (a + b)
        if mid in (a, b) or abs(b - a) <= xtol:
            break
        fm = f(mid)
        if fm == 0.0:
            return mid
        if fa * fm < 0.0:
            b, fb = mid, fm
        else:
            a, fa = mid, fm
    return 0.5 * (a + b)
