"""Stream solutions with a reversed layer: the families ``(h_-, u_-)`` and ``(h_+, u_+)``.

For class II vorticity the profile ``u_-(y; s) = U(y + 2 y_-(s); s)`` dips
below zero near the bottom before rising to 1 at ``h_-(s) = h(s) - 2 y_-(s)``.
Reflection symmetry about the minimum makes it the Cauchy solution with
slope ``-s`` at the bottom, which is how it is integrated here.  For class
III, ``u_+(y; s) = U(y; s)`` overshoots 1, peaks at ``y_+(s)`` and comes
back down to 1 at ``h_+(s) = 2 y_+(s) - h(s)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .stream import (
    CauchySolution,
    StreamError,
    StreamProfile,
    depth,
    h0,
    kind_from_slopes,
    profile_implicit,
    turning_points,
)
from .vorticity import BoundaryZero, VorticityDistribution, boundary_zeros, classify, padded, s0

GUARD = 1e-9


class FamilyError(StreamError):
    """Requested family member does not exist."""


@dataclass(frozen=True, eq=False)
class CounterCurrentSolution:
    side: str
    s: float
    depth: float
    profile: StreamProfile
    stationary_point: float
    extreme_value: float


def _require(dist, label):
    got = classify(dist).label
    if got != label:
        raise FamilyError(f"needs class {label} vorticity, got class {got}")


def s_upper(dist: VorticityDistribution, side: str) -> BoundaryZero:
    """``s^>`` (``side='minus'``) or ``s^<`` (``side='plus'``) with its zero."""
    try:
        return boundary_zeros(dist, "below" if side == "minus" else "above")
    except ValueError as exc:
        raise FamilyError(f"{exc}; extend omega first") from exc


def h_minus(dist: VorticityDistribution, s: float) -> float:
    """``h_-(s) = h(s) - 2 y_-(s)``; ``h_-(0) = h0``."""
    if s < 0:
        raise FamilyError("h_- is defined for s >= 0")
    if s == 0.0:
        return h0(dist)
    tp = turning_points(dist, s)
    if not math.isfinite(tp.y_minus):
        raise FamilyError(f"y_-({s!r}) is infinite; is s below s^> and omega extended below 0?")
    return depth(dist, s) - 2.0 * tp.y_minus


def h_plus(dist: VorticityDistribution, s: float) -> float:
    """``h_+(s) = 2 y_+(s) - h(s)``."""
    tp = turning_points(dist, s)
    if not math.isfinite(tp.y_plus):
        raise FamilyError(f"y_+({s!r}) is infinite; is s below s^< and omega extended above 1?")
    return 2.0 * tp.y_plus - depth(dist, s)


def family_minus(dist: VorticityDistribution, s: float, n: int = 201) -> CounterCurrentSolution:
    _require(dist, "II")
    if s < 0:
        raise FamilyError("s must be non-negative")
    sup = s_upper(dist, "minus").s_bound
    if s >= sup - GUARD:
        raise FamilyError(f"s = {s!r} is not below s^> = {sup!r}")
    H = h_minus(dist, s)
    tp = turning_points(dist, s)
    y = np.linspace(0.0, H, n)
    u, up = _reflected(dist, s, y, -tp.y_minus, tp.y_minus, tp.tau_minus, +1)
    prof = StreamProfile(-s, y, u, up, kind_from_slopes(up))
    return CounterCurrentSolution("minus", s, H, prof, -tp.y_minus, tp.tau_minus)


def family_plus(dist: VorticityDistribution, s: float, n: int = 201) -> CounterCurrentSolution:
    _require(dist, "III")
    sz = s0(dist)
    if s < sz:
        raise FamilyError(f"s = {s!r} is below s0 = {sz!r}")
    sup = s_upper(dist, "plus").s_bound
    if s >= sup - GUARD:
        raise FamilyError(f"s = {s!r} is not below s^< = {sup!r}")
    H = h_plus(dist, s)
    tp = turning_points(dist, s)
    y = np.linspace(0.0, H, n)
    u, up = _reflected(dist, s, y, tp.y_plus, tp.y_plus, tp.tau_plus, -1)
    prof = StreamProfile(s, y, u, up, kind_from_slopes(up))
    return CounterCurrentSolution("plus", s, H, prof, tp.y_plus, tp.tau_plus)


def _reflected(dist, s, y, p, y_turn, tau_turn, sign):
    """Family profile from the monotone branch of ``U(.; s)`` and its mirror symmetry.

    A point at distance ``d`` from the stationary point ``p`` takes the value
    ``U(y_turn + sign d)``, which lies on the monotone branch and is found
    from the implicit formula.  Slopes come from the energy identity.
    """
    t = y_turn + sign * np.abs(y - p)
    # rounding must not push the far end past the monotone branch
    t = np.minimum(t, depth(dist, s)) if sign > 0 else np.maximum(t, 0.0)
    u = np.empty_like(y)
    at_turn = t == y_turn
    u[at_turn] = tau_turn
    ts, inv = np.unique(t[~at_turn], return_inverse=True)
    if ts.size:
        u[~at_turn] = profile_implicit(dist, s, ts).u_values[inv]
    speed = np.sqrt(np.maximum(s * s - 2.0 * dist.primitive(u), 0.0))
    side = np.sign(y - p) if sign > 0 else np.sign(p - y)
    return u, side * speed


def u_minus(dist: VorticityDistribution, s: float, y) -> np.ndarray:
    """``u_-(y; s)`` on ``0 <= y <= h_-(s)``."""
    H = h_minus(dist, s)
    y = np.asarray(y, dtype=float)
    return CauchySolution(padded(dist), -s, 0.0, max(H, float(np.max(y))))(y)


# -- asymptotic checks --------------------------------------------------------------


@dataclass
class LemmaReport:
    lemma: int
    samples: list
    estimate: float
    target: float
    order: float
    passed: bool
    notes: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {"lemma": self.lemma, "samples": self.samples, "estimate": self.estimate,
               "target": self.target, "order": self.order, "passed": self.passed}
        out.update(self.notes)
        return out


def _observed_order(errs, ratio):
    """Least-squares slope of log|err| against log(step), steps shrinking by ``ratio``."""
    e = np.abs(np.asarray(errs, dtype=float))
    ok = e > 0
    if ok.sum() < 2:
        return math.nan
    k = np.arange(len(e))[ok]
    return float(-np.polyfit(k, np.log(e[ok]), 1)[0] / math.log(ratio))


def richardson(values, ratio: float = 2.0):
    """Extrapolate ``v(s_k)`` to ``s -> 0`` for ``s_k = s_0 ratio^-k`` and integer orders."""
    table = [list(values)]
    for j in range(1, len(values)):
        prev = table[-1]
        f = ratio**j
        table.append([(f * prev[i + 1] - prev[i]) / (f - 1.0) for i in range(len(prev) - 1)])
    return table


def verify_lemma1(
    dist: VorticityDistribution,
    s_top: float = 0.1,
    levels: int = 6,
    compare: tuple[float, ...] | None = None,
    ny: int = 101,
) -> LemmaReport:
    """Slope of ``h_-`` at ``0+`` against ``-1/omega(0)`` plus the ordering of ``u_-`` in ``s``.

    Difference quotients ``(h_-(s_k) - h0)/s_k`` on ``s_k = s_top 2^-k`` are
    Richardson-extrapolated; a cubic least-squares fit is reported alongside.
    """
    _require(dist, "II")
    sup = s_upper(dist, "minus").s_bound
    if s_top >= sup - GUARD:
        raise FamilyError(f"s_top = {s_top!r} is not below s^> = {sup!r}")
    hz = h0(dist)
    target = -1.0 / dist.omega(0.0)
    ss = [s_top * 2.0**-k for k in range(levels)]
    hs = [h_minus(dist, s) for s in ss]
    quot = [(h - hz) / s for h, s in zip(hs, ss)]
    table = richardson(quot)
    estimate = table[-1][0]
    order = _observed_order(np.diff(quot), 2.0)
    sv = np.asarray(ss)
    lsq = float(np.linalg.lstsq(np.vstack([sv, sv**2, sv**3]).T, np.asarray(hs) - hz, rcond=None)[0][0])

    # u_-(y; s1) > u_-(y; s2) for s1 < s2 while h_- increases
    if compare is None:
        compare = (0.0, 0.25 * s_top, 0.5 * s_top, s_top)
    hc = [h_minus(dist, s) for s in compare]
    increasing = all(b > a for a, b in zip(hc, hc[1:]))
    cmp_margin = math.inf
    if increasing:
        for (s1, H1), s2 in zip(zip(compare, hc), compare[1:]):
            y = np.linspace(0.0, H1, ny)[1:]
            d = u_minus(dist, s1, y) - u_minus(dist, s2, y)
            cmp_margin = min(cmp_margin, float(np.min(d)))
    rel = abs(estimate - target) / abs(target)
    return LemmaReport(
        1,
        [{"s": s, "h_minus": h, "quotient": q} for s, h, q in zip(ss, hs, quot)],
        estimate,
        target,
        order,
        estimate > 0 and (not increasing or cmp_margin > 0),
        {"relative_error": rel, "lsq_slope": lsq, "h0": hz, "comparison_checked": increasing,
         "comparison_margin": cmp_margin, "comparison_s": list(compare)},
    )


def verify_lemma2(
    dist: VorticityDistribution,
    deltas: tuple[float, ...] = (1e-1, 1e-2, 1e-3, 1e-4),
) -> LemmaReport:
    """Ratio ``(h_+(s) - h0) omega(1) / sqrt(s^2 - s0^2)`` as ``s -> s0+``; must tend to 1.

    The coefficient form ``(s^2 - s0^2)/omega(1)`` is not checked: it cannot
    match the square-root behaviour established for ``y_+ - h`` and ``h0 - h``.
    """
    _require(dist, "III")
    if any(not d > 0 for d in deltas):
        raise FamilyError("s - s0 must be positive (the ratio is 0/0 at s0)")
    sz, hz, b = s0(dist), h0(dist), dist.omega(1.0)
    sup = s_upper(dist, "plus").s_bound
    rows = []
    usable = [d for d in deltas if sz + d < sup - GUARD]
    if not usable:
        raise FamilyError(f"every s0 + delta is at or above s^< = {sup!r}")
    deltas = tuple(usable)
    for d in deltas:
        s = sz + d
        hp = h_plus(dist, s)
        ratio = (hp - hz) * b / math.sqrt((s - sz) * (s + sz))
        rows.append({"s": s, "delta": d, "h_plus": hp, "ratio": ratio})
    ratios = [r["ratio"] for r in rows]
    steps = np.asarray(deltas)
    errs = np.abs(np.asarray(ratios) - 1.0)
    ok = errs > 0
    order = math.nan
    if ok.sum() >= 2:
        order = float(np.polyfit(np.log(steps[ok]), np.log(errs[ok]), 1)[0])
    return LemmaReport(
        2, rows, ratios[-1], 1.0, order, abs(ratios[-1] - 1.0) <= 1e-2,
        {"h0": hz, "s0": sz, "omega1": b, "coefficient_form": "unverifiable"},
    )
