"""Integrals of ``(s**2 - 2 Omega(tau))**(-p)`` with square-root end points.

Every length in the stream-solution theory is an integral of this form,
and the radicand ``G = s**2 - 2 Omega`` typically has a simple zero at one
or both ends (a turning point, or ``s = s0``).  The interval is split at
its midpoint and each half is mapped with ``tau = e -+ u**2`` towards its
outer end ``e``.  The radicand is then expanded about ``e`` from the exact
local polynomial, so ``G / u**2`` is evaluated without cancellation and the
transformed integrand is smooth for ``p = 1/2``.
"""

from __future__ import annotations

import math

from scipy import integrate

from . import _poly
from .config import current
from .vorticity import DistributionError, VorticityDistribution


class DivergentIntegral(ArithmeticError):
    """The integral diverges (a degenerate turning point or ``p >= 1``)."""


def _segment_ending_at(dist: VorticityDistribution, b: float) -> int:
    k = dist.segment_index(b)
    if k > 0 and dist.segments[k].lo == b:
        k -= 1
    return k


def _zero_threshold(s2: float, omega_e: float) -> float:
    return 1e-14 * max(1.0, abs(s2), abs(2.0 * omega_e))


def endpoint_radicand(dist: VorticityDistribution, s: float, e: float) -> float:
    """``s**2 - 2 Omega(e)`` with values at rounding level snapped to zero."""
    s2 = s * s
    om = dist.primitive(e)
    if e == 0.0:
        return s2  # Omega(0) = 0 exactly
    g = s2 - 2.0 * om
    return 0.0 if abs(g) <= _zero_threshold(s2, om) else g


def _half(dist, s, e, m, side, power, rtol, weight=None):
    """Integral over the half between end point ``e`` and midpoint ``m``.

    ``side = +1``: ``e`` is the right end, ``tau = e - v``;
    ``side = -1``: ``e`` is the left end, ``tau = e + v``.
    """
    length = abs(e - m)
    if length == 0.0:
        return 0.0, 0.0
    if side > 0:
        k = _segment_ending_at(dist, e)
        v_loc = min(length, e - dist.segments[k].lo)
    else:
        k = dist.segment_index(e)
        v_loc = min(length, dist.segments[k].hi - e)
    d = dist.local_coeffs(k, e)
    if side > 0:
        # int_{e-v}^{e} omega = v * sum d_k (-v)^k / (k+1)
        gc = tuple(dk * (-1.0) ** j / (j + 1) for j, dk in enumerate(d))
    else:
        # int_{e}^{e+v} omega = v * sum d_k v^k / (k+1)
        gc = tuple(dk / (j + 1) for j, dk in enumerate(d))
    ge = endpoint_radicand(dist, s, e)
    if ge < 0.0:
        raise DistributionError(f"radicand s^2 - 2 Omega is negative at tau = {e!r}")
    om_loc_edge = dist.primitive(e - side * v_loc)
    gap_loc_edge = v_loc * _poly.horner(gc, v_loc)

    def gap_over_v(v):
        if v <= v_loc:
            return _poly.horner(gc, v)
        t = e - side * v
        if side > 0:
            g = gap_loc_edge + om_loc_edge - dist.primitive(t)
        else:
            g = gap_loc_edge + dist.primitive(t) - om_loc_edge
        return g / v

    if ge == 0.0:
        q0 = 2.0 * side * d[0]
        if q0 <= 0.0 or power >= 1.0:
            raise DivergentIntegral(f"non-integrable end point at tau = {e!r}")

        def f(u):
            v = u * u
            q = 2.0 * side * gap_over_v(v)
            if q <= 0.0:
                raise DistributionError("radicand vanishes inside the integration interval")
            out = 2.0 * u ** (1.0 - 2.0 * power) * q ** (-power)
            return out if weight is None else out * weight(e - side * v)

    else:

        def f(u):
            v = u * u
            r = ge + 2.0 * side * v * gap_over_v(v)
            if r <= 0.0:
                raise DistributionError("radicand vanishes inside the integration interval")
            out = 2.0 * u * r ** (-power)
            return out if weight is None else out * weight(e - side * v)

    umax = math.sqrt(length)
    pts = [math.sqrt(abs(e - x)) for x in dist._los if min(e, m) < x < max(e, m)]
    if ge > 0.0 and d[0] != 0.0:
        ustar = math.sqrt(ge / (2.0 * abs(d[0])))
        if 0.0 < ustar < umax:
            # graded breakpoints: the layer of width ustar is invisible to the first quad rule
            while ustar < umax:
                pts.append(ustar)
                ustar *= 8.0
    pts = sorted(set(p for p in pts if 0.0 < p < umax))
    val, err = integrate.quad(
        f, 0.0, umax, epsabs=0.0, epsrel=rtol, limit=400, points=pts or None
    )
    return val, err


def radicand_integral(
    dist: VorticityDistribution,
    s: float,
    a: float,
    b: float,
    power: float = 0.5,
    *,
    rtol: float | None = None,
    weight=None,
) -> tuple[float, float]:
    """``int_a^b (s**2 - 2 Omega(tau))**(-power) dtau`` and an error estimate.

    An optional bounded ``weight(tau)`` multiplies the integrand.

    Raises :class:`DivergentIntegral` when an end point is a degenerate
    zero of the radicand (``omega`` vanishes there) or when ``power >= 1``
    and the radicand vanishes at an end point.
    """
    rtol = current().quad_rel if rtol is None else rtol
    if a == b:
        return 0.0, 0.0
    if a > b:
        v, e = radicand_integral(dist, s, b, a, power, rtol=rtol, weight=weight)
        return -v, e
    m = 0.5 * (a + b)
    v1, e1 = _half(dist, s, a, m, -1, power, rtol, weight)
    v2, e2 = _half(dist, s, b, m, +1, power, rtol, weight)
    return v1 + v2, e1 + e2


def inverse_sqrt_integral(dist: VorticityDistribution, s: float, a: float, b: float, **kw) -> float:
    """``int_a^b dtau / sqrt(s**2 - 2 Omega)``; ``+-inf`` when divergent."""
    try:
        return radicand_integral(dist, s, a, b, 0.5, **kw)[0]
    except DivergentIntegral:
        return math.inf if b > a else -math.inf
