"""The Bernoulli curve ``R(s) = (s^2 - 2 Omega(1) + 2 h(s)) / 3`` and what hangs off it.

``R'(s) = 2 s (1 - J(s)) / 3`` with ``J(s) = int_0^1 (s^2 - 2 Omega)^(-3/2)``.
``J`` is strictly decreasing, infinite at ``s0`` and ``O(s^-3)`` at
infinity, so ``R`` has exactly one critical point, a minimum at the root
``s_c`` of ``J = 1``.

For class II vorticity the curve continues to ``s < 0`` through the
Cauchy solution with negative slope at the bottom: ``h(s) = h_-(-s)``.
"""

from __future__ import annotations

import functools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy import optimize
from scipy.integrate import solve_ivp

from .config import current
from .counter_current import FamilyError, h_minus, s_upper
from .quadrature import radicand_integral
from .roots import BracketError, bisect, newton_bisect
from .stream import (
    CauchySolution,
    StreamError,
    depth,
    depth_derivative,
    h0,
    turning_points,
)
from .vorticity import VorticityDistribution, classify, padded, s0


class CurveError(StreamError):
    """A point of the Bernoulli curve does not exist for these arguments."""


# -- positive branch -------------------------------------------------------------------


def bernoulli_R(dist: VorticityDistribution, s: float) -> float:
    """``R(s)``; negative ``s`` uses the extended branch (class II only)."""
    h = depth(dist, s) if s >= 0 else h_negative(dist, s)
    return (s * s - 2.0 * dist.primitive(1.0) + 2.0 * h) / 3.0


def _J(dist, s):
    return radicand_integral(dist, s, 0.0, 1.0, 1.5)[0]


def critical(dist: VorticityDistribution, s_max: float | None = None) -> tuple[float, float]:
    """``(s_c, r_c)``: the root of ``J(s) = 1`` and ``R`` there."""
    sz = s0(dist)
    hi = sz + 10.0 * (1.0 + sz) if s_max is None else s_max
    f_hi = 1.0 - _J(dist, hi)
    for _ in range(60):
        if f_hi > 0:
            break
        hi = sz + 2.0 * (hi - sz)
        f_hi = 1.0 - _J(dist, hi)
    else:
        raise CurveError("minimum of R not bracketed")

    def fdf(s):
        return 1.0 - _J(dist, s), 3.0 * s * radicand_integral(dist, s, 0.0, 1.0, 2.5)[0]

    # J is unbounded at s0, so 1 - J < 0 there without evaluating it
    sc = newton_bisect(fdf, sz, hi, fa=-1.0, fb=f_hi, xtol=current().root_abs)
    return sc, bernoulli_R(dist, sc)


def r0(dist: VorticityDistribution) -> float:
    hz = h0(dist)
    if not math.isfinite(hz):
        return math.inf
    sz = s0(dist)
    return (sz * sz - 2.0 * dist.primitive(1.0) + 2.0 * hz) / 3.0


def bernoulli_derivative(dist: VorticityDistribution, s: float) -> float:
    dh = depth_derivative(dist, s) if s >= 0 else -h_minus_derivative(dist, -s)
    return 2.0 * (s + dh) / 3.0


@dataclass(frozen=True)
class ConjugatePair:
    """Roots ``s_+ < s_c < s_-`` of ``R(s) = r`` and depths ``H_+ > H_-``.

    ``s_plus``/``H_plus`` are ``None`` when ``r >= r0`` (unless the extended
    branch supplied them, see ``plus_branch``).
    """

    r: float
    s_plus: float | None
    s_minus: float
    H_plus: float | None
    H_minus: float
    degenerate: bool = False
    plus_branch: str = "positive"

    @property
    def plus_exists(self) -> bool:
        return self.s_plus is not None

    def bernoulli_residuals(self, dist: VorticityDistribution) -> tuple[float, float]:
        """``u'(H)^2 + 2H - 3r`` for both conjugates, ``u'(H)^2 = s^2 - 2 Omega(1)``."""
        om1 = dist.primitive(1.0)
        out = []
        for s, H in ((self.s_plus, self.H_plus), (self.s_minus, self.H_minus)):
            out.append(math.nan if s is None else s * s - 2.0 * om1 + 2.0 * H - 3.0 * self.r)
        return tuple(out)


def _root_R(dist, r, a, b, fa, fb):
    def fdf(s):
        return bernoulli_R(dist, s) - r, bernoulli_derivative(dist, s)

    return newton_bisect(fdf, a, b, fa=fa, fb=fb, xtol=current().root_abs)


def conjugate_streams(
    dist: VorticityDistribution,
    r: float,
    *,
    extended: bool = False,
    crit: tuple[float, float] | None = None,
) -> ConjugatePair:
    """Solve ``R(s) = r`` on both sides of ``s_c``.

    With ``extended`` (class II) and ``r0 <= r < r'``, ``s_+`` is sought on
    the negative branch ``(s', 0)``.
    """
    sc, rc = critical(dist) if crit is None else crit
    if r < rc - 1e-12 * max(1.0, abs(rc)):
        raise CurveError(f"r = {r!r} is below r_c = {rc!r}: no stream solutions")
    if abs(r - rc) <= 1e-12 * max(1.0, abs(rc)):
        H = depth(dist, sc)
        return ConjugatePair(r, sc, sc, H, H, degenerate=True)
    om1 = dist.primitive(1.0)
    s_hi = math.sqrt(3.0 * r + 2.0 * om1)  # R(s) > (s^2 - 2 Omega(1))/3 >= r beyond
    sm = _root_R(dist, r, sc, s_hi, rc - r, bernoulli_R(dist, s_hi) - r)
    Hm = depth(dist, sm)
    rz = r0(dist)
    if r < rz:
        try:
            sp = _root_R(dist, r, s0(dist), sc, rz - r, rc - r)
            return ConjugatePair(r, sp, sm, depth(dist, sp), Hm)
        except (StreamError, ArithmeticError) as exc:
            # h grows so slowly near s0 that s_+ can sit within rounding of it
            raise CurveError(f"s_+ for r = {r!r} is not resolved in floating point next to s0: {exc}") from exc
    if extended and classify(dist).label == "II":
        nb = negative_branch(dist)
        if r < nb.r_prime:
            lo = nb.s_prime
            f_lo = nb.r_prime - r if math.isfinite(nb.r_prime) else 1.0
            sp = _root_R(dist, r, lo, 0.0, f_lo, rz - r) if r > rz else 0.0
            return ConjugatePair(r, sp, sm, h_negative(dist, sp) if sp < 0 else h0(dist), Hm, plus_branch="negative")
    return ConjugatePair(r, None, sm, None, Hm)


# -- negative branch (class II) -------------------------------------------------------


def h_negative(dist: VorticityDistribution, s: float) -> float:
    """``h(s)`` for ``s <= 0``: ``h(-s) - 2 y_-(-s)``."""
    if classify(dist).label != "II":
        raise CurveError("the negative branch needs class II vorticity")
    return h_minus(dist, -s)


def y_minus_derivative(dist: VorticityDistribution, sigma: float) -> float:
    """``d y_-/d sigma`` by differentiating under the integral sign.

    Near the turning point ``tau_-`` the integrand is first rewritten with
    ``G^(-1/2) = -(1/omega) d sqrt(G)/dtau`` and integrated by parts, which
    leaves an integrand whose ``sigma``-derivative is integrable.
    """
    tp = turning_points(dist, sigma)
    tm = tp.tau_minus
    if not math.isfinite(tp.y_minus) or tm >= 0.0:
        raise CurveError(f"y_- is not differentiable at sigma = {sigma!r}")
    # keep the by-parts piece clear of zeros of omega
    zs = [z for z in dist.zeros(tm, 0.0) if z > tm]
    m = tm + 0.5 * ((zs[0] if zs else 0.0) - tm)
    gm = sigma * sigma - 2.0 * dist.primitive(m)
    wm = dist.omega(m)

    def weight(t):
        w = dist.omega(t)
        return dist.omega_prime(t) / (w * w)

    near = radicand_integral(dist, sigma, tm, m, 0.5, weight=weight)[0]
    far = radicand_integral(dist, sigma, m, 0.0, 1.5)[0]
    return sigma * (1.0 / (math.sqrt(gm) * wm) + near + far)


def h_minus_derivative(dist: VorticityDistribution, sigma: float) -> float:
    """``d h_-/d sigma = dh/dsigma - 2 dy_-/dsigma``."""
    if sigma == 0.0:
        return -1.0 / dist.omega(0.0)
    return depth_derivative(dist, sigma) - 2.0 * y_minus_derivative(dist, sigma)


@dataclass(frozen=True)
class NegativeBranch:
    s_prime: float
    r_prime: float
    boundary: bool
    s_bound: float
    plateau: bool = False


@functools.lru_cache(maxsize=64)
def negative_branch(dist: VorticityDistribution, n_scan: int = 64) -> NegativeBranch:
    """``s'`` (left end of the interval ``(s', 0)`` where ``h' < 0``) and ``r' = R(s')``.

    ``h'(s) = -h_-'(-s)``, so the scan looks for the first zero of ``h_-'``
    on ``(0, s^>)``.  Without one, ``s' = -s^>`` and ``boundary`` is set.
    """
    if classify(dist).label != "II":
        raise CurveError("the negative branch needs class II vorticity")
    bz = s_upper(dist, "minus")
    sup = bz.s_bound
    top = sup * (1.0 - 1e-6) if math.isfinite(sup) else 10.0
    grid = np.linspace(0.0, top, n_scan + 1)[1:]
    prev_s, prev_d = 0.0, h_minus_derivative(dist, 0.0)
    root = None
    plateau = False
    for sg in grid:
        try:
            d = h_minus_derivative(dist, float(sg))
        except (StreamError, FamilyError):
            break
        if d <= 0.0:
            if d == 0.0:
                plateau = True
            root = bisect(lambda x: h_minus_derivative(dist, x), prev_s, float(sg), xtol=current().root_abs) \
                if d < 0.0 else float(sg)
            break
        prev_s, prev_d = float(sg), d
    if root is not None:
        sp = -root
        out = NegativeBranch(sp, bernoulli_R(dist, sp), False, sup, plateau)
    else:
        sp = -sup
        rp = math.inf
        if bz.domain_limited:
            try:
                rp = bernoulli_R(dist, -top)
            except (StreamError, FamilyError):
                rp = math.inf
        out = NegativeBranch(sp, rp, True, sup)
    return out


def extend_negative(dist: VorticityDistribution, n: int = 32) -> "BifurcationCurve":
    """Curve samples on ``(s', 0]`` together with the positive-branch constants."""
    nb = negative_branch(dist)
    lo = nb.s_prime * (1.0 - 1e-6) if not nb.boundary else -nb.s_bound * (1.0 - 1e-6)
    ss = list(np.linspace(lo, 0.0, n))
    return sample_curve(dist, [], negative=ss)


def profile_value(dist: VorticityDistribution, s: float, y) -> np.ndarray:
    """``U(y; s)`` from the Cauchy problem, any sign of ``s``."""
    y = np.asarray(y, dtype=float)
    lo_y, hi_y = min(0.0, float(np.min(y))), max(0.0, float(np.max(y)))
    return CauchySolution(padded(dist), s, lo_y, hi_y)(y)


@dataclass(frozen=True)
class MonotoneCheck:
    holds: bool
    difference: float
    degenerate: bool = False


def monotone_in_s(dist: VorticityDistribution, y: float, s1: float, s2: float) -> MonotoneCheck:
    """Whether ``U(y; s1) < U(y; s2)`` for ``s1 < s2``; equal slopes hold vacuously."""
    if s1 == s2:
        return MonotoneCheck(True, 0.0, True)
    if s1 > s2:
        raise CurveError("need s1 < s2")
    for s in (s1, s2):
        H = depth(dist, s) if s >= 0 else h_negative(dist, s)
        if not 0.0 <= y <= H:
            raise CurveError(f"y = {y!r} outside (0, h({s!r})) = (0, {H!r})")
    d = float(profile_value(dist, s2, y) - profile_value(dist, s1, y))
    return MonotoneCheck(d > 0.0, d)


# -- disconjugacy ------------------------------------------------------------------------


@dataclass(frozen=True)
class Disconjugacy:
    positive: bool
    margin: float
    sufficient_mu_bound: bool
    mu: float
    depth: float
    conjugate_point: float


def disconjugacy(dist: VorticityDistribution, s: float, depth_: float | None = None) -> Disconjugacy:
    """Sturm test for ``z'' + omega'(U(y; s)) z = 0``, ``z(0) = 0``, ``z'(0) = 1`` on ``(0, H]``.

    ``H`` defaults to ``h(s)``; an explicit ``depth_`` runs the test on a
    longer interval along the same Cauchy solution.  ``mu`` is the
    supremum of ``omega'`` over the values ``U`` takes on ``[0, H]``.
    """
    if depth_ is None:
        H = depth(dist, s) if s >= 0 else h_negative(dist, s)
    else:
        H = float(depth_)
    if not H > 0:
        raise CurveError("depth must be positive")
    lo, hi = dist.domain
    om, omp = dist.omega, dist.omega_prime

    def rhs(y, w):
        u = min(max(w[0], lo), hi)
        return [w[1], -om(u), w[3], -omp(u) * w[2]]

    def crossing(y, w):
        return w[2]

    crossing.terminal = True
    crossing.direction = -1
    tol = current()
    sol = solve_ivp(rhs, (0.0, H), [0.0, s, 0.0, 1.0], method="DOP853", rtol=tol.ode_rtol,
                    atol=tol.ode_atol, events=crossing, dense_output=True)
    if sol.status < 0:  # pragma: no cover
        raise CurveError(sol.message)
    if sol.t_events[0].size:
        yc = float(sol.t_events[0][0])
        positive, margin = False, yc - H
    else:
        yc, positive, margin = math.inf, True, math.inf
    yy = np.linspace(0.0, H if positive else yc, 257)
    uu = sol.sol(yy)[0]
    mu = dist.sup_derivative(float(np.min(uu)), float(np.max(uu)))
    bound = mu < math.pi**2 / H**2
    return Disconjugacy(positive, margin, bound, mu, H, yc)


# -- sampled curve ------------------------------------------------------------------------


@dataclass
class BifurcationCurve:
    samples: list  # (s, h, R, branch)
    s0: float
    h0: float
    s_c: float
    r_c: float
    r0: float
    s_prime: float | None = None
    r_prime: float | None = None
    notes: dict = field(default_factory=dict)

    def constants(self) -> dict:
        return {"s0": self.s0, "h0": self.h0, "s_c": self.s_c, "r_c": self.r_c, "r0": self.r0,
                "s_prime": self.s_prime, "r_prime": self.r_prime}


def _point(args):
    dist, s, branch = args
    if branch == "negative":
        h = h_negative(dist, s)
    else:
        h = depth(dist, s)
    return (s, h, (s * s - 2.0 * dist.primitive(1.0) + 2.0 * h) / 3.0, branch)


def default_grid(dist: VorticityDistribution, n: int = 64, span: float | None = None) -> list[float]:
    """``n`` values of ``s > s0``, geometric in ``s - s0`` from ``1e-3 (1+s0)`` to ``span``."""
    sz = s0(dist)
    span = 4.0 * (1.0 + sz) if span is None else span
    return list(sz + np.geomspace(1e-3 * (1.0 + sz), span, n))


def sample_curve(
    dist: VorticityDistribution,
    s_values,
    *,
    negative=(),
    parallel: int = 1,
) -> BifurcationCurve:
    """Evaluate ``(s, h, R)`` at the given slopes; the output order never depends on ``parallel``."""
    jobs = [(dist, float(s), "negative") for s in sorted(negative)] + [(dist, float(s), "positive") for s in sorted(s_values)]
    if parallel > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=parallel) as ex:
            pts = list(ex.map(_point, jobs, chunksize=max(1, len(jobs) // (4 * parallel))))
    else:
        pts = [_point(j) for j in jobs]
    sc, rc = critical(dist)
    curve = BifurcationCurve(pts, s0(dist), h0(dist), sc, rc, r0(dist))
    if len(negative):
        nb = negative_branch(dist)
        curve.s_prime, curve.r_prime = nb.s_prime, nb.r_prime
        curve.notes["s_prime_boundary"] = nb.boundary
        curve.notes["plateau"] = nb.plateau
    return curve


def is_unimodal(values) -> bool:
    """At most one sign change (minus to plus) in successive differences, zeros ignored."""
    d = np.sign(np.diff(np.asarray(values, dtype=float)))
    d = d[d != 0]
    flips = np.nonzero(np.diff(d))[0]
    return flips.size == 0 or (flips.size == 1 and d[0] < 0)


def critical_grid_oracle(dist: VorticityDistribution, n: int = 2001, span: float | None = None):
    """Brute-force minimiser of ``R``: dense-grid argmin polished by bounded Brent.

    Uses only values of ``R``, never ``J``, so it cross-checks :func:`critical`.
    """
    ss = default_grid(dist, n, span)
    rs = [bernoulli_R(dist, s) for s in ss]
    i = int(np.argmin(rs))
    a, b = ss[max(i - 1, 0)], ss[min(i + 1, len(ss) - 1)]
    res = optimize.minimize_scalar(lambda s: bernoulli_R(dist, s), bounds=(a, b), method="bounded",
                                   options={"xatol": 1e-12})
    return float(res.x), float(res.fun)


__all__ = [
    "BifurcationCurve",
    "BracketError",
    "ConjugatePair",
    "CurveError",
    "Disconjugacy",
    "MonotoneCheck",
    "NegativeBranch",
    "bernoulli_R",
    "bernoulli_derivative",
    "conjugate_streams",
    "critical",
    "critical_grid_oracle",
    "default_grid",
    "disconjugacy",
    "extend_negative",
    "h_minus_derivative",
    "h_negative",
    "is_unimodal",
    "monotone_in_s",
    "negative_branch",
    "profile_value",
    "r0",
    "sample_curve",
    "y_minus_derivative",
]
