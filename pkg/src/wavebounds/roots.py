"""Safeguarded scalar root finding.

``newton_bisect`` keeps a sign-change bracket at all times and takes a
Newton step only when it lands strictly inside the bracket and shrinks it
fast enough; otherwise it bisects.  This is the classic ``rtsafe`` scheme.
"""

from __future__ import annotations

import math
from typing import Callable


class BracketError(ValueError):
    """Raised when a root is not bracketed by the supplied interval."""


def newton_bisect(
    fdf: Callable[[float], tuple[float, float]],
    a: float,
    b: float,
    *,
    fa: float | None = None,
    fb: float | None = None,
    xtol: float = 1e-14,
    rtol: float = 4 * 2.220446049250313e-16,
    maxiter: int = 200,
    x0: float | None = None,
) -> float:
    """Root of ``f`` in ``[a, b]`` given ``fdf(x) -> (f(x), f'(x))``.

    ``f(a)`` and ``f(b)`` must not have the same strict sign.  Returns once
    the bracket is narrower than ``xtol + rtol * |x|`` or ``f`` vanishes.
    ``x0`` (inside the bracket) replaces the midpoint as the first iterate.
    """
    if a > b:
        a, b = b, a
        fa, fb = fb, fa
    if fa is None:
        fa = fdf(a)[0]
    if fb is None:
        fb = fdf(b)[0]
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    if (fa > 0) == (fb > 0):
        raise BracketError(f"no sign change on [{a!r}, {b!r}]: f = {fa!r}, {fb!r}")

    # orient so that f(lo) < 0 < f(hi)
    lo, hi = (a, b) if fa < 0 else (b, a)
    x = 0.5 * (a + b) if x0 is None or not (min(a, b) < x0 < max(a, b)) else x0
    dx_old = abs(b - a)
    dx = dx_old
    f, df = fdf(x)
    for _ in range(maxiter):
        if f == 0.0:
            return x
        if f < 0:
            lo = x
        else:
            hi = x
        width = abs(hi - lo)
        if width <= xtol + rtol * abs(x):
            return x
        newton_ok = (
            df != 0.0
            and math.isfinite(df)
            and ((x - hi) * df - f) * ((x - lo) * df - f) < 0.0
            and abs(2.0 * f) < abs(dx_old * df)
        )
        dx_old = dx
        if newton_ok:
            dx = f / df
            x_new = x - dx
            if x_new == x:
                return x
        else:
            dx = 0.5 * (hi - lo)
            x_new = lo + dx
            if x_new == lo or x_new == hi:
                return x_new
        x = x_new
        f, df = fdf(x)
    return x


def bisect(f: Callable[[float], float], a: float, b: float, *, xtol: float = 1e-14, maxiter: int = 200) -> float:
    """Plain bisection; used where no derivative is available."""
    fa, fb = f(a), f(b)
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    if (fa > 0) == (fb > 0):
        raise BracketError(f"no sign change on [{a!r}, {b!r}]")
    for _ in range(maxiter):
        m = 0.5 * (a + b)
        if m == a or m == b or (b - a) <= xtol:
            return m
        fm = f(m)
        if fm == 0.0:
            return m
        if (fm > 0) == (fa > 0):
            a, fa = m, fm
        else:
            b = m
    return 0.5 * (a + b)


def expand_bracket(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    *,
    factor: float = 2.0,
    max_steps: int = 60,
) -> tuple[float, float]:
    """Grow ``hi`` geometrically (about ``lo``) until ``f`` changes sign."""
    flo = f(lo)
    step = hi - lo
    for _ in range(max_steps):
        fhi = f(hi)
        if fhi == 0.0 or (flo > 0) != (fhi > 0):
            return lo, hi
        lo, flo = hi, fhi
        step *= factor
        hi = lo + step
    raise BracketError("could not bracket a sign change")
