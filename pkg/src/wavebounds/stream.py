"""Shear-flow solutions ``U(y; s)`` of ``U'' + omega(U) = 0``.

``U(0; s) = 0`` and ``U'(0; s) = s``.  Two independent routes are provided:
:func:`profile_cauchy` integrates the ODE with an embedded Runge-Kutta pair,
:func:`profile_implicit` inverts ``y = int_0^U dtau / sqrt(s^2 - 2 Omega)``
point by point.  The first integral ``U'^2 / 2 + Omega(U) = s^2 / 2`` ties
them together and is checked along every computed profile.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

from .config import current
from .quadrature import DivergentIntegral, radicand_integral
from .roots import newton_bisect
from .vorticity import DistributionError, VorticityDistribution, classify, s0

KINDS = ("monotone", "single_max", "single_min", "periodic")


class StreamError(ValueError):
    """Requested stream quantity does not exist for these arguments."""


# -- turning points -----------------------------------------------------------------


@dataclass(frozen=True)
class TurningPoints:
    """Extremal values ``tau_+-`` of ``U(.; s)`` and their positions ``y_+-``.

    Infinite positions and values are ``+-math.inf``.  ``truncated_*`` is
    set when no root was found inside a bounded domain, so the infinite
    value only means "not within the distribution's range".
    """

    s: float
    tau_plus: float
    tau_minus: float
    y_plus: float
    y_minus: float
    truncated_plus: bool = False
    truncated_minus: bool = False


def _y_to(dist, s, tau):
    if not math.isfinite(tau):
        return tau
    if tau == 0.0:
        return 0.0
    try:
        return radicand_integral(dist, s, 0.0, tau)[0]
    except DivergentIntegral:
        return math.copysign(math.inf, tau)


def turning_points(dist: VorticityDistribution, s: float) -> TurningPoints:
    """Nearest roots of ``2 Omega(tau) = s**2`` on each side of zero."""
    if s < 0:
        raise StreamError("turning points are defined for s >= 0")
    lo, hi = dist.domain
    level = 0.5 * s * s
    right = [t for t in dist.level_crossings(level, 0.0, hi) if t > 0.0]
    left = [t for t in dist.level_crossings(level, lo, 0.0) if t < 0.0]
    tp = right[0] if right else math.inf
    tm = left[-1] if left else -math.inf
    if s > 0.0:
        # roots within ~1e-8 of 0 are lost to rounding in segment coordinates
        if abs(tp) < 1e-6 or (not right and hi > 0.0):
            tp = _near_zero_root(dist, level, +1, tp)
        if abs(tm) < 1e-6 or (not left and lo < 0.0):
            tm = _near_zero_root(dist, level, -1, tm)
    if s == 0.0:
        w0 = dist.omega(0.0)
        tol = current().sign
        if abs(w0) <= tol:
            tp = tm = 0.0
        elif w0 > 0:
            tp = 0.0
        else:
            tm = 0.0
    return TurningPoints(
        s=s,
        tau_plus=tp,
        tau_minus=tm,
        y_plus=_y_to(dist, s, tp),
        y_minus=_y_to(dist, s, tm),
        truncated_plus=not math.isfinite(tp) and math.isfinite(hi),
        truncated_minus=not math.isfinite(tm) and math.isfinite(lo),
    )


def _near_zero_root(dist, level, side, fallback):
    """Root of ``Omega(tau) = level`` next to 0 on ``side``, from the Taylor expansion at 0."""
    w0 = dist.omega(0.0)
    if w0 == 0.0 or (w0 > 0) != (side > 0):
        return fallback
    k = dist.segment_index(0.0)
    if side < 0 and dist.segments[k].lo == 0.0:
        k -= 1
        if k < 0:
            return fallback
    seg = dist.segments[k]
    c = dist.local_coeffs(k, 0.0)
    prim = [0.0] + [cj / (j + 1) for j, cj in enumerate(c)]
    x = level / w0
    if not abs(x) <= 1e-4:
        # not a near-zero root
        return fallback
    for _ in range(60):
        f = sum(pj * x**j for j, pj in enumerate(prim)) - level
        df = sum(cj * x**j for j, cj in enumerate(c))
        if df == 0.0 or (df > 0) != (side > 0):
            return fallback
        dx = f / df
        x -= dx
        if abs(dx) <= 1e-16 * abs(x):
            break
    if not seg.lo <= x <= seg.hi or (x > 0) != (side > 0):
        return fallback
    return x


def classify_profile(tp: TurningPoints) -> tuple[str, float | None]:
    """Shape of ``U(.; s)`` from the finiteness of ``y_+-``; period if periodic."""
    fp, fm = math.isfinite(tp.y_plus), math.isfinite(tp.y_minus)
    if fp and fm:
        return "periodic", 2.0 * (tp.y_plus - tp.y_minus)
    if fp:
        return "single_max", None
    if fm:
        return "single_min", None
    return "monotone", None


# -- depth, s0, h0 ----------------------------------------------------------------------


@functools.lru_cache(maxsize=1024)
def _h0_cached(dist: VorticityDistribution) -> float:
    if classify(dist).label == "I":
        return math.inf
    try:
        return radicand_integral(dist, s0(dist), 0.0, 1.0)[0]
    except DivergentIntegral:  # pragma: no cover - excluded by classification
        return math.inf


def h0(dist: VorticityDistribution) -> float:
    """Limiting depth ``h(s0)``; infinite exactly for class I."""
    return _h0_cached(dist)


def _check_s(dist, s):
    sz = s0(dist)
    if s < sz:
        if sz - s <= 4e-16 * max(1.0, sz):
            return sz
        raise StreamError(f"s = {s!r} is below s0 = {sz!r}")
    return s


def depth_with_error(dist: VorticityDistribution, s: float) -> tuple[float, float]:
    """``h(s) = int_0^1 dtau / sqrt(s^2 - 2 Omega)`` with the quadrature error estimate."""
    s = _check_s(dist, s)
    if s == s0(dist):
        h = h0(dist)
        if not math.isfinite(h):
            raise StreamError("h(s0) diverges for class I vorticity")
    try:
        return radicand_integral(dist, s, 0.0, 1.0)
    except DivergentIntegral as exc:  # pragma: no cover - guarded above
        raise StreamError(str(exc)) from exc


def depth(dist: VorticityDistribution, s: float) -> float:
    return depth_with_error(dist, s)[0]


def depth_derivative(dist: VorticityDistribution, s: float) -> float:
    """``dh/ds = -s int_0^1 (s^2 - 2 Omega)^(-3/2) dtau`` for ``s > s0``.

    At ``s = 0`` for class II the one-sided limit ``1 / omega(0)`` is returned.
    """
    s = _check_s(dist, s)
    if s == 0.0:
        if classify(dist).label == "II":
            return 1.0 / dist.omega(0.0)
        raise StreamError("dh/ds is unbounded at s = s0")
    if s == s0(dist):
        raise StreamError("dh/ds is unbounded at s = s0")
    return -s * radicand_integral(dist, s, 0.0, 1.0, 1.5)[0]


def depth_inverse(dist: VorticityDistribution, h_target: float) -> float:
    """The ``s >= s0`` with ``h(s) = h_target`` (h decreases from h0 to 0)."""
    if not h_target > 0:
        raise StreamError("target depth must be positive")
    sz = s0(dist)
    hz = h0(dist)
    if h_target > hz:
        raise StreamError(f"no stream solution deeper than h0 = {hz!r}")
    if h_target == hz:
        return sz
    s_hi = math.sqrt(sz * sz + 1.0 / h_target**2)
    f_hi = depth(dist, s_hi) - h_target
    while f_hi > 0.0:
        # the bound is exact for omega = 0; rounding can leave it a hair short
        s_hi *= 1.0 + 1e-12
        f_hi = depth(dist, s_hi) - h_target
    if f_hi == 0.0:
        return s_hi

    def fdf(s):
        return depth(dist, s) - h_target, depth_derivative(dist, s)

    fa = hz - h_target if math.isfinite(hz) else 1.0
    return newton_bisect(fdf, sz, s_hi, fa=fa, fb=f_hi, xtol=current().root_abs)


# -- profiles -----------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class StreamProfile:
    """Samples of ``U(.; s)`` on an increasing grid."""

    s: float
    y_grid: np.ndarray
    u_values: np.ndarray
    u_prime: np.ndarray
    kind: str
    period: float | None = None

    def __eq__(self, other):
        if not isinstance(other, StreamProfile):
            return NotImplemented
        return (
            self.s == other.s
            and self.kind == other.kind
            and self.period == other.period
            and np.array_equal(self.y_grid, other.y_grid)
            and np.array_equal(self.u_values, other.u_values)
            and np.array_equal(self.u_prime, other.u_prime)
        )

    def energy_residual(self, dist: VorticityDistribution) -> np.ndarray:
        """``U'^2/2 + Omega(U) - s^2/2`` at every grid point."""
        return 0.5 * self.u_prime**2 + dist.primitive(self.u_values) - 0.5 * self.s**2


def kind_from_slopes(u_prime: np.ndarray) -> str:
    sg = np.sign(u_prime)
    sg = sg[sg != 0]
    if sg.size == 0:
        return "monotone"
    flips = np.nonzero(np.diff(sg))[0]
    if flips.size == 0:
        return "monotone"
    if flips.size == 1:
        return "single_max" if sg[0] > 0 else "single_min"
    return "periodic"


class CauchySolution:
    """Dense ODE solution of ``U'' = -omega(U)``, ``U(0) = 0``, ``U'(0) = s``.

    With ``variational=True`` the linearisation ``z'' + omega'(U) z = 0``,
    ``z(0) = 0``, ``z'(0) = 1`` is carried along; ``z = dU/ds``.
    """

    def __init__(self, dist: VorticityDistribution, s: float, y_lo: float, y_hi: float, *, variational: bool = False):
        if y_lo > 0 or y_hi < 0:
            raise StreamError("the y-range must contain 0")
        self.dist = dist
        self.s = s
        self.y_lo, self.y_hi = y_lo, y_hi
        self._variational = variational
        w0 = [0.0, s, 0.0, 1.0] if variational else [0.0, s]
        self._n = len(w0)
        self._parts = [self._integrate(w0, end) if end != 0.0 else None for end in (y_hi, y_lo)]

    def _rhs(self, w, forward):
        """Right-hand side frozen on the segment ``U`` is entering.

        The segment's polynomial is continued past its ends, so every step
        sees a smooth field; the knot events stop the piece before the
        continuation matters.
        """
        dist = self.dist
        u, du = w[0], w[1]
        k = dist.segment_index(min(max(u, dist.domain[0]), dist.domain[1]))
        seg = dist.segments[k]
        if u == seg.lo or u == seg.hi:
            # on a knot: pick the side U moves into
            moving_up = (du > 0) == forward if du != 0.0 else dist.omega(u) < 0
            if u == seg.lo and not moving_up and k > 0:
                seg = dist.segments[k - 1]
            elif u == seg.hi and moving_up and k + 1 < len(dist.segments):
                seg = dist.segments[k + 1]
        c = np.array(seg.coeffs[::-1])
        base = seg.lo if math.isfinite(seg.lo) else 0.0
        if not math.isfinite(seg.lo):
            c = c[-1:]  # tails are constant
        dc = np.polyder(c) if c.size > 1 else np.zeros(1)

        if self._variational:

            def rhs(y, v):
                x = v[0] - base
                return [v[1], -np.polyval(c, x), v[3], -np.polyval(dc, x) * v[2]]
        else:

            def rhs(y, v):
                return [v[1], -np.polyval(c, v[0] - base)]

        return rhs

    def _integrate(self, w0, end):
        """Integrate from 0 to ``end``, restarting whenever ``U`` crosses a knot of omega.

        Each piece runs on one polynomial, so no step straddles a jump in
        omega'.  Returns a list of ``(y_a, y_b, dense)`` pieces.
        """
        lo, hi = self.dist.domain
        knots = sorted({b for seg in self.dist.segments for b in (seg.lo, seg.hi)
                        if math.isfinite(b) and lo < b < hi})
        tol = current()
        pieces = []
        y0, w = 0.0, list(w0)
        skip = set()  # knots whose event fired without progress
        for _ in range(100000):
            events, kinds, where = [], [], []
            for k in knots:
                if k in skip:
                    continue
                if w[0] == k:
                    if w[1] == 0.0:
                        continue
                    # only a return to this knot; U moves with sign(U') sign(end - y)
                    moving_up = (w[1] > 0) == (end > y0)
                    direction = -1.0 if moving_up else 1.0
                else:
                    direction = 0.0
                ev = (lambda k: lambda y, v: v[0] - k)(k)
                ev.terminal, ev.direction = True, direction
                events.append(ev)
                kinds.append("knot")
                where.append(k)
            # fire only when U actually leaves, not when it starts on an edge
            for edge, direction in ((lo, -1), (hi, 1)):
                if math.isfinite(edge):
                    ev = (lambda e: lambda y, v: v[0] - e)(edge)
                    ev.terminal, ev.direction = True, direction
                    events.append(ev)
                    kinds.append("edge")
                    where.append(edge)
            sol = solve_ivp(
                self._rhs(w, end > y0), (y0, end), w, method="DOP853", rtol=tol.ode_rtol, atol=tol.ode_atol,
                dense_output=True, events=events or None,
            )
            if sol.status < 0:  # pragma: no cover
                raise StreamError(sol.message)
            y1 = float(sol.t[-1])
            if y1 != y0:
                pieces.append((min(y0, y1), max(y0, y1), sol.sol))
            if sol.status == 0:
                return pieces
            fired = next(i for i, te in enumerate(sol.t_events) if te.size)
            if kinds[fired] == "edge":
                if abs(y1 - end) > 1e-9 * max(1.0, abs(end)):
                    raise DistributionError(
                        f"U(y; {self.s!r}) leaves the distribution's domain near y = {y1!r}; extend omega first"
                    )
                return pieces
            if abs(y1 - y0) <= 1e-14 * max(1.0, abs(y0)):
                skip.add(where[fired])
                continue
            skip.clear()
            y0 = y1
            w = list(sol.y_events[fired][0])
            w[0] = where[fired]
        raise StreamError("too many knot crossings")  # pragma: no cover

    def state(self, y) -> np.ndarray:
        y = np.asarray(y, dtype=float)
        scalar = y.ndim == 0
        y = np.atleast_1d(y)
        if np.any(y > self.y_hi * (1 + 1e-12) + 1e-300) or np.any(y < self.y_lo * (1 + 1e-12) - 1e-300):
            raise StreamError("y outside the integrated range")
        fwd, bwd = self._parts
        out = np.empty((self._n, y.size))
        out[:] = np.array([0.0, self.s, 0.0, 1.0][: self._n])[:, None]
        for pieces, mask in ((fwd, y > 0), (bwd, y < 0)):
            if pieces is None or not np.any(mask):
                continue
            idx = np.nonzero(mask)[0]
            for a, b, dense in pieces:
                sel = idx[(y[idx] >= a) & (y[idx] <= b)]
                if sel.size:
                    out[:, sel] = dense(y[sel])
            # rounding past the far end of the last piece
            rest = idx[(y[idx] > max(p[1] for p in pieces)) | (y[idx] < min(p[0] for p in pieces))]
            if rest.size:
                out[:, rest] = pieces[-1][2](y[rest])
        return out[:, 0] if scalar else out

    def __call__(self, y):
        return self.state(y)[0]

    def derivative(self, y):
        return self.state(y)[1]


def profile_cauchy(
    dist: VorticityDistribution,
    s: float,
    y_range: tuple[float, float],
    n: int = 201,
) -> StreamProfile:
    """Sample the ODE solution on ``n`` equispaced points of ``y_range``."""
    a, b = y_range
    if not a < b:
        raise StreamError("empty y-range")
    sol = CauchySolution(dist, s, min(a, 0.0), max(b, 0.0))
    y = np.linspace(a, b, n)
    st = sol.state(y)
    lo, hi = dist.domain
    u = st[0]
    # integration may step a rounding error past an end of the domain
    u = np.where((u > hi) & (u <= hi + 1e-9), hi, np.where((u < lo) & (u >= lo - 1e-9), lo, u))
    st = (u, st[1])
    kind = kind_from_slopes(st[1])
    period = None
    if kind == "periodic" and s >= 0:
        period = classify_profile(turning_points(dist, s))[1]
    return StreamProfile(s, y, st[0], st[1], kind, period)


def implicit_y(dist: VorticityDistribution, s: float, u: float) -> float:
    """``y(U) = int_0^U dtau / sqrt(s^2 - 2 Omega)``."""
    return _y_to(dist, s, u)


def profile_implicit(dist: VorticityDistribution, s: float, y_grid) -> StreamProfile:
    """Invert the implicit formula at each grid point (monotone branch only).

    Points are processed outward from ``y = 0``; each solve starts from the
    previous solution and integrates only the short increment, using a
    safeguarded Newton iteration on the increasing map ``U -> y(U)``.
    """
    y_grid = np.asarray(y_grid, dtype=float)
    if np.any(np.diff(y_grid) <= 0):
        raise StreamError("grid must be strictly increasing")
    tp = turning_points(dist, s)
    lo, hi = dist.domain
    u_top = tp.tau_plus if math.isfinite(tp.tau_plus) else hi
    u_bot = tp.tau_minus if math.isfinite(tp.tau_minus) else lo
    y_top = tp.y_plus if math.isfinite(tp.tau_plus) else _y_to(dist, s, u_top)
    y_bot = tp.y_minus if math.isfinite(tp.tau_minus) else _y_to(dist, s, u_bot)
    # the ends of the domain may be reached; turning points may not
    past_top = y_grid[-1] >= y_top if math.isfinite(tp.tau_plus) else y_grid[-1] > y_top
    past_bot = y_grid[0] <= y_bot if math.isfinite(tp.tau_minus) else y_grid[0] < y_bot
    if past_bot or past_top:
        raise StreamError(f"grid leaves the monotone interval ({y_bot!r}, {y_top!r})")

    s2 = s * s
    om = dist.primitive
    xtol = current().root_abs
    u = np.empty_like(y_grid)

    def march(indices, u_end, sign):
        ua, ya = 0.0, 0.0
        for i in indices:
            yt = y_grid[i]
            if yt == 0.0:
                u[i] = 0.0
                continue

            def fdf(x, ua=ua, ya=ya, yt=yt):
                g = s2 - 2.0 * om(x)
                inc = radicand_integral(dist, s, ua, x)[0] if x != ua else 0.0
                return ya + inc - yt, (1.0 / math.sqrt(g) if g > 0 else math.inf)

            g_a = s2 - 2.0 * om(ua)
            guess = ua + (yt - ya) * math.sqrt(max(g_a, 0.0))
            a, b = (ua, u_end) if sign > 0 else (u_end, ua)
            fa = ya - yt if sign > 0 else (y_bot - yt)
            fb = (y_top - yt) if sign > 0 else ya - yt
            x = newton_bisect(fdf, a, b, fa=fa, fb=fb, xtol=xtol, x0=guess)
            u[i] = x
            ua, ya = x, yt

    pos = np.nonzero(y_grid >= 0)[0]
    neg = np.nonzero(y_grid < 0)[0][::-1]
    march(pos, u_top, +1)
    march(neg, u_bot, -1)
    up = np.sqrt(np.maximum(s2 - 2.0 * dist.primitive(u), 0.0))
    return StreamProfile(s, y_grid.copy(), u, up, "monotone" if s > 0 else kind_from_slopes(up))
