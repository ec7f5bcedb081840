"""Small dense-polynomial helpers.

Coefficients are stored lowest power first, ``c[k]`` multiplying ``t**k``.
Everything here works on plain tuples/lists of floats so that the scalar
paths stay cheap inside quadrature callbacks.
"""

from __future__ import annotations

import math
from math import comb
from typing import Sequence

import numpy as np

from .roots import newton_bisect


def trim(c: Sequence[float]) -> tuple[float, ...]:
    """Drop trailing exact zeros (keeps at least one coefficient)."""
    c = list(c)
    while len(c) > 1 and c[-1] == 0.0:
        c.pop()
    return tuple(float(v) for v in c)


def horner(c: Sequence[float], t: float) -> float:
    acc = 0.0
    for ck in reversed(c):
        acc = acc * t + ck
    return acc


def horner_vec(c: Sequence[float], t: np.ndarray) -> np.ndarray:
    acc = np.zeros_like(t, dtype=float)
    for ck in reversed(c):
        acc = acc * t + ck
    return acc


def derivative(c: Sequence[float]) -> tuple[float, ...]:
    if len(c) <= 1:
        return (0.0,)
    return tuple(k * c[k] for k in range(1, len(c)))


def antiderivative(c: Sequence[float]) -> tuple[float, ...]:
    """Antiderivative vanishing at ``t = 0``."""
    return (0.0,) + tuple(c[k] / (k + 1) for k in range(len(c)))


def taylor_shift(c: Sequence[float], d: float) -> tuple[float, ...]:
    """Coefficients of ``p(t + d)`` as a polynomial in ``t``."""
    n = len(c)
    out = [0.0] * n
    for j in range(n):
        if c[j] == 0.0:
            continue
        dp = 1.0
        for k in range(j, -1, -1):
            # term c_j * C(j, k) * d**(j-k) * t**k, walking k downwards
            out[k] += c[j] * comb(j, k) * dp
            dp *= d
    return tuple(out)


def scale_bound(c: Sequence[float], a: float, b: float) -> float:
    """Cheap upper bound for |p| on [a, b]; used to scale zero tolerances."""
    r = max(abs(a), abs(b), 1.0)
    return sum(abs(ck) * r**k for k, ck in enumerate(c)) or 1.0


def real_roots(c: Sequence[float], a: float, b: float, rel_tol: float = 1e-14) -> list[float]:
    """Real roots of ``p`` on the closed interval ``[a, b]``.

    Isolation is by recursion on the derivative: the critical points split
    ``[a, b]`` into monotone pieces, each holding at most one simple root.
    Values within ``rel_tol * scale`` of zero at a critical point or at an
    end point count as roots, which is how tangential (even-order) roots
    are caught.  A polynomial that vanishes identically returns ``[a, b]``.
    """
    c = trim(c)
    if a > b:
        raise ValueError("empty interval")
    if len(c) == 1:
        return [a, b] if c[0] == 0.0 else []
    ztol = rel_tol * scale_bound(c, a, b)
    if len(c) == 2:
        r = -c[0] / c[1]
        return [min(max(r, a), b)] if a - ztol <= r <= b + ztol else []

    dc = derivative(c)
    crit = [x for x in real_roots(dc, a, b, rel_tol) if a < x < b]
    knots = [a] + sorted(crit) + [b]
    roots: list[float] = []
    for x0, x1 in zip(knots[:-1], knots[1:]):
        f0 = horner(c, x0)
        f1 = horner(c, x1)
        if abs(f0) <= ztol:
            roots.append(x0)
            continue
        if abs(f1) <= ztol or f0 * f1 > 0.0:
            continue
        r = newton_bisect(lambda t: (horner(c, t), horner(dc, t)), x0, x1, fa=f0, fb=f1, xtol=0.0)
        roots.append(r)
    if abs(horner(c, b)) <= ztol:
        roots.append(b)

    out: list[float] = []
    for r in sorted(roots):
        if not out or r - out[-1] > 1e-13 * max(1.0, abs(r)):
            out.append(min(max(r, a), b))
    return out


def max_on(c: Sequence[float], a: float, b: float) -> tuple[float, float]:
    """Maximum of ``p`` on the finite interval ``[a, b]`` and its location."""
    cand = [a, b] + real_roots(derivative(c), a, b)
    vals = [horner(c, t) for t in cand]
    i = int(np.argmax(vals))
    return vals[i], cand[i]


def min_on(c: Sequence[float], a: float, b: float) -> tuple[float, float]:
    v, t = max_on([-x for x in c], a, b)
    return -v, t


def finite(x: float) -> bool:
    return math.isfinite(x)
