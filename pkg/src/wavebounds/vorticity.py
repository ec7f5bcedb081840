"""Vorticity distributions as continuous piecewise polynomials.

A distribution is a list of segments ``[lo, hi]`` tiling a closed interval
that contains ``[0, 1]``; on each segment the vorticity is a polynomial in
the local variable ``tau - lo``.  This gives the primitive
``Omega(tau) = int_0^tau omega`` in closed form, an exact Lipschitz
constant, and exact isolation of the real roots that the stream-solution
machinery needs.

The two outermost segments may be unbounded (``lo = -inf`` or
``hi = +inf``) provided the polynomial there is a constant; this is how
the "omega = 0 farther out" tails of the extensions are represented.
"""

from __future__ import annotations

import bisect as _bisect
import functools
import math
import warnings
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import _poly
from .config import current

MAX_DEGREE = 5

LABELS = ("I", "II", "III")


class DistributionError(ValueError):
    """Invalid vorticity distribution or an operation it cannot support."""


@dataclass(frozen=True)
class Segment:
    lo: float
    hi: float
    coeffs: tuple[float, ...]
    # original decimal tokens (lo, hi, *coeffs) when parsed from JSON
    tokens: tuple[str, ...] | None = field(default=None, compare=False, repr=False)

    @property
    def degree(self) -> int:
        return len(_poly.trim(self.coeffs)) - 1

    def value(self, tau: float) -> float:
        if not math.isfinite(self.lo):
            return self.coeffs[0]
        return _poly.horner(self.coeffs, tau - self.lo)


def _as_segment(seg) -> Segment:
    if isinstance(seg, Segment):
        return seg
    if isinstance(seg, dict):
        lo, hi, coeffs = seg["from"], seg["to"], seg["coeffs"]
    else:
        lo, hi, coeffs = seg
    coeffs = tuple(float(c) for c in coeffs)
    if not coeffs:
        raise DistributionError("segment without coefficients")
    return Segment(float(lo), float(hi), coeffs)


@dataclass(frozen=True)
class VorticityDistribution:
    """Continuous piecewise-polynomial vorticity ``omega(tau)``.

    Build with :func:`build_distribution` (or the :func:`constant` /
    :func:`piecewise_linear` shortcuts); the constructor validates tiling,
    continuity and the requirement that the domain contains ``[0, 1]``.
    """

    segments: tuple[Segment, ...]
    extensions: tuple[tuple[str, float], ...] = ()
    comment: str | None = None

    lipschitz_bound: float = field(init=False, compare=False)
    _los: tuple[float, ...] = field(init=False, repr=False, compare=False)
    _anchor: tuple[float, ...] = field(init=False, repr=False, compare=False)
    _omega_anchor: tuple[float, ...] = field(init=False, repr=False, compare=False)
    _prims: tuple[tuple[float, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        segs = tuple(_as_segment(s) for s in self.segments)
        object.__setattr__(self, "segments", segs)
        _validate(segs)
        object.__setattr__(self, "_los", tuple(s.lo for s in segs))
        object.__setattr__(self, "_prims", tuple(_poly.antiderivative(s.coeffs) for s in segs))
        self._build_primitive()
        object.__setattr__(self, "lipschitz_bound", self._lipschitz())

    # -- construction helpers -------------------------------------------------

    def _build_primitive(self):
        segs = self.segments
        n = len(segs)
        k0 = self.segment_index(0.0)
        anchor = [0.0] * n
        val = [0.0] * n

        def set_anchor(k, omega_at_lo=None, omega_at_hi=None):
            s = segs[k]
            if math.isfinite(s.lo):
                anchor[k] = s.lo
                if omega_at_lo is None:
                    omega_at_lo = omega_at_hi - _poly.horner(self._prims[k], s.hi - s.lo)
                val[k] = omega_at_lo
            else:
                anchor[k] = s.hi
                val[k] = omega_at_hi

        s0 = segs[k0]
        if math.isfinite(s0.lo):
            set_anchor(k0, omega_at_lo=-_poly.horner(self._prims[k0], -s0.lo))
        else:
            set_anchor(k0, omega_at_hi=s0.coeffs[0] * s0.hi)
        for k in range(k0 + 1, n):
            prev = segs[k - 1]
            hi_val = self._seg_primitive(k - 1, prev.hi, anchor, val)
            set_anchor(k, omega_at_lo=hi_val)
        for k in range(k0 - 1, -1, -1):
            nxt_lo_val = val[k + 1] if anchor[k + 1] == segs[k + 1].lo else None
            if nxt_lo_val is None:  # pragma: no cover - only one unbounded segment per side
                raise DistributionError("unsupported segment layout")
            set_anchor(k, omega_at_hi=nxt_lo_val)
        object.__setattr__(self, "_anchor", tuple(anchor))
        object.__setattr__(self, "_omega_anchor", tuple(val))

    def _seg_primitive(self, k, tau, anchor=None, val=None):
        anchor = self._anchor if anchor is None else anchor
        val = self._omega_anchor if val is None else val
        s = self.segments[k]
        if math.isfinite(s.lo):
            return val[k] + _poly.horner(self._prims[k], tau - s.lo)
        return val[k] - s.coeffs[0] * (anchor[k] - tau)

    def _lipschitz(self) -> float:
        best = 0.0
        for s in self.segments:
            dc = _poly.derivative(s.coeffs)
            if len(_poly.trim(dc)) == 1 and dc[0] == 0.0:
                continue
            a, b = 0.0, s.hi - s.lo
            best = max(best, _poly.max_on(dc, a, b)[0], -_poly.min_on(dc, a, b)[0])
        return best

    # -- basic queries ----------------------------------------------------------

    @property
    def domain(self) -> tuple[float, float]:
        return self.segments[0].lo, self.segments[-1].hi

    def segment_index(self, tau: float) -> int:
        lo, hi = self.domain
        if not (lo <= tau <= hi):
            raise DistributionError(f"tau = {tau!r} outside domain [{lo!r}, {hi!r}]")
        k = _bisect.bisect_right(self._los, tau) - 1
        return max(0, min(k, len(self.segments) - 1))

    def omega(self, tau):
        """Vorticity at ``tau`` (scalar or array)."""
        if np.ndim(tau) == 0:
            return self.segments[self.segment_index(float(tau))].value(float(tau))
        return self._vectorized(np.asarray(tau, dtype=float), "omega")

    def omega_prime(self, tau):
        """Derivative of omega, right-sided at breakpoints (left-sided at the right end)."""
        if np.ndim(tau) == 0:
            t = float(tau)
            k = self.segment_index(t)
            s = self.segments[k]
            if t == s.lo and k == len(self.segments) - 1 and t == s.hi:  # pragma: no cover
                k -= 1
            if not math.isfinite(s.lo):
                return 0.0
            return _poly.horner(_poly.derivative(s.coeffs), t - s.lo)
        return self._vectorized(np.asarray(tau, dtype=float), "omega_prime")

    def primitive(self, tau):
        """``Omega(tau) = int_0^tau omega(t) dt``, exact up to rounding."""
        if np.ndim(tau) == 0:
            t = float(tau)
            if t == 0.0:
                return 0.0
            return self._seg_primitive(self.segment_index(t), t)
        return self._vectorized(np.asarray(tau, dtype=float), "primitive")

    def _vectorized(self, t: np.ndarray, what: str) -> np.ndarray:
        lo, hi = self.domain
        if np.any(t < lo) or np.any(t > hi):
            raise DistributionError("tau outside domain")
        idx = np.clip(np.searchsorted(self._los, t, side="right") - 1, 0, len(self.segments) - 1)
        out = np.empty_like(t)
        for k in np.unique(idx):
            m = idx == k
            s = self.segments[k]
            if what == "omega":
                out[m] = s.coeffs[0] if not math.isfinite(s.lo) else _poly.horner_vec(s.coeffs, t[m] - s.lo)
            elif what == "omega_prime":
                out[m] = 0.0 if not math.isfinite(s.lo) else _poly.horner_vec(_poly.derivative(s.coeffs), t[m] - s.lo)
            else:
                if math.isfinite(s.lo):
                    out[m] = self._omega_anchor[k] + _poly.horner_vec(self._prims[k], t[m] - s.lo)
                else:
                    out[m] = self._omega_anchor[k] - s.coeffs[0] * (self._anchor[k] - t[m])
        if what == "primitive":
            out[t == 0.0] = 0.0
        return out

    def local_coeffs(self, k: int, center: float) -> tuple[float, ...]:
        """Coefficients of omega on segment ``k`` in powers of ``tau - center``."""
        s = self.segments[k]
        if not math.isfinite(s.lo):
            return (s.coeffs[0],)
        return _poly.taylor_shift(s.coeffs, center - s.lo)

    # -- roots and extrema --------------------------------------------------------

    def _clip(self, a: float, b: float) -> tuple[float, float]:
        lo, hi = self.domain
        return max(a, lo), min(b, hi)

    def zeros(self, a: float, b: float) -> list[float]:
        """Zeros of omega on ``[a, b]`` (finite interval), sorted."""
        a, b = self._clip(a, b)
        out: list[float] = []
        for k, s in enumerate(self.segments):
            lo, hi = max(a, s.lo), min(b, s.hi)
            if lo > hi:
                continue
            if not (math.isfinite(s.lo) and math.isfinite(s.hi)):
                if s.coeffs[0] == 0.0:
                    out.extend(x for x in (lo, hi) if math.isfinite(x))
                continue
            out.extend(r + s.lo for r in _poly.real_roots(s.coeffs, lo - s.lo, hi - s.lo))
        return _dedupe(out)

    def level_crossings(self, level: float, a: float, b: float) -> list[float]:
        """Solutions of ``Omega(tau) = level`` on ``[a, b]``, sorted.

        Each is polished to near machine precision on its monotone piece.
        Tangential solutions (``omega = 0`` there) are included.
        """
        a, b = self._clip(a, b)
        out: list[float] = []
        for k, s in enumerate(self.segments):
            lo, hi = max(a, s.lo), min(b, s.hi)
            if lo > hi:
                continue
            if math.isfinite(s.lo) and math.isfinite(s.hi):
                c = list(self._prims[k])
                c[0] += self._omega_anchor[k] - level
                out.extend(r + s.lo for r in _poly.real_roots(c, lo - s.lo, hi - s.lo))
                continue
            # constant tail: Omega is linear, anchored at its finite end
            c0 = s.coeffs[0]
            base = self._omega_anchor[k] - level
            if c0 == 0.0:
                if base == 0.0:
                    out.extend(x for x in (lo, hi) if math.isfinite(x))
                continue
            r = self._anchor[k] - base / c0
            if lo <= r <= hi:
                out.append(r)
        return _dedupe(out)

    def max_primitive(self, a: float, b: float) -> tuple[float, float]:
        """Maximum of Omega over the finite interval ``[a, b]`` and its location."""
        a, b = self._clip(a, b)
        if not (math.isfinite(a) and math.isfinite(b)):
            raise DistributionError("max_primitive needs a finite interval")
        cand = {a, b}
        cand.update(self.zeros(a, b))
        cand.update(x for x in self._los if a < x < b)
        best = max(cand, key=lambda t: (self.primitive(t), -abs(t)))
        return self.primitive(best), best

    def sup_derivative(self, a: float = -math.inf, b: float = math.inf) -> float:
        """Essential supremum of omega' over ``[a, b]`` (default: the whole domain)."""
        a, b = self._clip(a, b)
        best = -math.inf
        for s in self.segments:
            lo, hi = max(s.lo, a), min(s.hi, b)
            if not lo < hi:
                continue
            if not math.isfinite(s.lo) or not math.isfinite(s.hi):
                best = max(best, 0.0)
                continue
            best = max(best, _poly.max_on(_poly.derivative(s.coeffs), lo - s.lo, hi - s.lo)[0])
        return best

    # -- structural edits -------------------------------------------------------------

    def restrict(self, lo: float, hi: float) -> "VorticityDistribution":
        """The same omega on ``[lo, hi]``; segments fully inside are reused as is."""
        dlo, dhi = self.domain
        if lo < dlo or hi > dhi or lo >= hi:
            raise DistributionError("restriction must lie inside the domain")
        segs = []
        for s in self.segments:
            a, b = max(lo, s.lo), min(hi, s.hi)
            if a >= b:
                continue
            if a == s.lo and b == s.hi:
                segs.append(s)
            elif not math.isfinite(s.lo):
                segs.append(Segment(a, b, (s.coeffs[0],)))
            elif a == s.lo:
                segs.append(Segment(a, b, s.coeffs))
            else:
                segs.append(Segment(a, b, _poly.taylor_shift(s.coeffs, a - s.lo)))
        return VorticityDistribution(tuple(segs), self.extensions, self.comment)

    def refined(self, parts: int = 2) -> "VorticityDistribution":
        """Split every bounded segment into ``parts`` equal pieces (same omega)."""
        segs = []
        for s in self.segments:
            if not (math.isfinite(s.lo) and math.isfinite(s.hi)):
                segs.append(s)
                continue
            knots = np.linspace(s.lo, s.hi, parts + 1)
            knots[0], knots[-1] = s.lo, s.hi
            for a, b in zip(knots[:-1], knots[1:]):
                segs.append(Segment(float(a), float(b), _poly.taylor_shift(s.coeffs, float(a) - s.lo)))
        return VorticityDistribution(tuple(segs), self.extensions, self.comment)


def _dedupe(xs: Iterable[float]) -> list[float]:
    out: list[float] = []
    for x in sorted(xs):
        if not out or x - out[-1] > 1e-13 * max(1.0, abs(x)):
            out.append(x)
    return out


def _validate(segs: Sequence[Segment]) -> None:
    if not segs:
        raise DistributionError("no segments")
    for i, s in enumerate(segs):
        if not s.lo < s.hi:
            raise DistributionError(f"segment {i}: empty or reversed interval [{s.lo!r}, {s.hi!r}]")
        if any(not math.isfinite(c) for c in s.coeffs):
            raise DistributionError(f"segment {i}: non-finite coefficient")
        if s.degree > MAX_DEGREE:
            raise DistributionError(f"segment {i}: degree {s.degree} exceeds {MAX_DEGREE}")
        unbounded = not (math.isfinite(s.lo) and math.isfinite(s.hi))
        if unbounded and s.degree > 0:
            raise DistributionError(f"segment {i}: unbounded segments must be constant")
        if not math.isfinite(s.lo) and i != 0 or not math.isfinite(s.hi) and i != len(segs) - 1:
            raise DistributionError(f"segment {i}: only the outermost segments may be unbounded")
    for i, (s, t) in enumerate(zip(segs[:-1], segs[1:])):
        if s.hi < t.lo:
            raise DistributionError(f"gap between segments {i} and {i + 1} at [{s.hi!r}, {t.lo!r}]")
        if s.hi > t.lo:
            raise DistributionError(f"segments {i} and {i + 1} overlap on [{t.lo!r}, {s.hi!r}]")
        left = s.value(s.hi)
        right = t.value(t.lo)
        if abs(left - right) > 1e-12 * max(1.0, abs(left), abs(right)):
            raise DistributionError(
                f"omega is discontinuous at tau = {s.hi!r}: {left!r} (left) vs {right!r} (right)"
            )
    if segs[0].lo > 0.0 or segs[-1].hi < 1.0:
        raise DistributionError("domain must contain [0, 1]")


# -- construction ---------------------------------------------------------------------


def build_distribution(segments, *, comment: str | None = None) -> VorticityDistribution:
    """Validated distribution from ``(lo, hi, coeffs)`` triples or JSON-style dicts.

    Coefficients multiply powers of ``tau - lo``.
    """
    return VorticityDistribution(tuple(_as_segment(s) for s in segments), comment=comment)


def constant(value: float, lo: float = 0.0, hi: float = 1.0) -> VorticityDistribution:
    return build_distribution([(lo, hi, (float(value),))])


def piecewise_linear(knots: Sequence[float], values: Sequence[float]) -> VorticityDistribution:
    """Continuous piecewise-linear omega interpolating ``values`` at ``knots``."""
    if len(knots) != len(values) or len(knots) < 2:
        raise DistributionError("need matching knots/values, at least two")
    segs = []
    for (a, b), (va, vb) in zip(zip(knots[:-1], knots[1:]), zip(values[:-1], values[1:])):
        segs.append((float(a), float(b), (float(va), (float(vb) - float(va)) / (float(b) - float(a)))))
    return build_distribution(segs)


def omega_primitive(dist: VorticityDistribution, tau: float) -> float:
    return dist.primitive(tau)


# -- classification -------------------------------------------------------------------


@dataclass(frozen=True)
class VorticityClass:
    """Label I, II or III with the data that decided it."""

    label: str
    witness: dict
    warning: str | None = None

    def __str__(self):
        return self.label


def classify(dist: VorticityDistribution) -> VorticityClass:
    """Assign one of the three disjoint classes from the behaviour of Omega on [0, 1].

    I   -- the maximum of Omega on [0, 1] is attained inside, or only at an
           end point where omega vanishes;
    II  -- Omega(tau) < Omega(0) = 0 on (0, 1] and omega(0) < 0;
    III -- Omega(tau) < Omega(1) on (0, 1) and omega(1) > 0, with omega(0) < 0
           also required when Omega(1) = 0.

    Sign decisions use ``config.current().sign`` as a zero threshold;
    near-ties fall back to class I and set ``warning``.
    """
    return _classify(dist, current().sign)


@functools.lru_cache(maxsize=1024)
def _classify(dist: VorticityDistribution, tol: float) -> VorticityClass:
    w0, w1 = dist.omega(0.0), dist.omega(1.0)
    om1 = dist.primitive(1.0)
    crit = [t for t in dist.zeros(0.0, 1.0) if 0.0 < t < 1.0]
    crit += [t for t in dist._los if 0.0 < t < 1.0]
    vals = [(dist.primitive(t), t) for t in crit]
    top = max([0.0, om1] + [v for v, _ in vals])
    inner = [(v, t) for v, t in vals if v >= top - tol]
    witness = {"omega0": w0, "omega1": w1, "Omega1": om1, "max_Omega": top}
    warn = []

    def tie(x):
        return x != 0.0 and abs(x) <= tol

    if inner:
        v, t = max(inner)
        witness.update(max_at=t, where="interior")
        if v < top:
            warn.append("interior critical value within tolerance of the endpoint maximum")
        return VorticityClass("I", witness, "; ".join(warn) or None)

    at0 = top <= tol
    at1 = om1 >= top - tol
    if tie(om1):
        warn.append("Omega(1) within tolerance of Omega(0)")
    if at0 and not at1:
        witness.update(max_at=0.0, where="left")
        if w0 < -tol:
            return VorticityClass("II", witness)
        if tie(w0):
            warn.append("omega(0) within tolerance of zero")
        return VorticityClass("I", witness, "; ".join(warn) or None)
    if at1 and not at0:
        witness.update(max_at=1.0, where="right")
        if w1 > tol:
            return VorticityClass("III", witness)
        if tie(w1):
            warn.append("omega(1) within tolerance of zero")
        return VorticityClass("I", witness, "; ".join(warn) or None)
    # maximum at both end points: Omega(1) = 0
    witness.update(max_at=(0.0, 1.0), where="both")
    if om1 != 0.0:
        return VorticityClass("I", witness, "; ".join(warn) or None)
    if w0 < -tol and w1 > tol:
        return VorticityClass("III", witness)
    if tie(w0) or tie(w1):
        warn.append("end-point vorticity within tolerance of zero")
    return VorticityClass("I", witness, "; ".join(warn) or None)


@functools.lru_cache(maxsize=1024)
def s0(dist: VorticityDistribution) -> float:
    """``max_{[0,1]} sqrt(2 Omega)``, zero when Omega <= 0 on [0, 1]."""
    top, _ = dist.max_primitive(0.0, 1.0)
    return math.sqrt(2.0 * top) if top > 0.0 else 0.0


# -- extensions -----------------------------------------------------------------------


def extend_right(
    dist: VorticityDistribution,
    s_target: float | None = None,
    *,
    width: float | None = None,
) -> VorticityDistribution:
    """Replace omega on ``tau > 1`` by a linear ramp down to zero, then zero.

    With ``s_target`` the ramp is kept short enough that
    ``s_target**2 > 2 max_{tau >= 0} Omega``.  The default width is a tenth
    of the largest admissible one (0.1 when any width works).
    """
    base = dist.restrict(dist.domain[0], 1.0) if dist.domain[1] > 1.0 else dist
    b = base.omega(1.0)
    om1 = base.primitive(1.0)
    top, _ = base.max_primitive(0.0, 1.0)
    slack = math.inf
    if s_target is not None:
        if not s_target**2 > 2.0 * top:
            raise DistributionError(
                f"s_target = {s_target!r} does not exceed s0 = {math.sqrt(max(2 * top, 0)):.17g}"
            )
        if b > 0.0:
            slack = (s_target**2 - 2.0 * om1) / b
    if width is None:
        width = 0.1 * slack if math.isfinite(slack) else 0.1
    if not width > 0.0:
        raise DistributionError("ramp width must be positive")
    if width >= slack:
        raise DistributionError(f"ramp width {width!r} violates s_target**2 > 2 max Omega (limit {slack!r})")
    segs = list(base.segments)
    segs.append(Segment(1.0, 1.0 + width, (b, -b / width)))
    segs.append(Segment(1.0 + width, math.inf, (0.0,)))
    ext = tuple(e for e in base.extensions if e[0] != "right") + (("right", width),)
    return VorticityDistribution(tuple(segs), ext, dist.comment)


def extend_left(
    dist: VorticityDistribution,
    s_target: float | None = None,
    *,
    width: float | None = None,
    half_bound: bool = False,
) -> VorticityDistribution:
    """Mirror image of :func:`extend_right` for ``tau < 0``.

    The ramp runs from zero at ``-width`` up to ``omega(0)``.  With
    ``s_target`` it enforces ``s_target**2 > 2 max_{tau <= 1} Omega``; with
    ``half_bound`` it also enforces ``s0**2 - 2 Omega(tau) > s0**2 / 2`` for
    ``tau <= 0``.
    """
    base = dist.restrict(0.0, dist.domain[1]) if dist.domain[0] < 0.0 else dist
    a = base.omega(0.0)
    top, _ = base.max_primitive(0.0, 1.0)
    # Omega on the ramp peaks at -width with value -a*width/2 (only matters for a < 0)
    limits = []
    if s_target is not None:
        if not s_target**2 > 2.0 * top:
            raise DistributionError(
                f"s_target = {s_target!r} does not exceed s0 = {math.sqrt(max(2 * top, 0)):.17g}"
            )
        if a < 0.0:
            limits.append(s_target**2 / -a)
    if half_bound:
        sz2 = 2.0 * top
        if a < 0.0:
            if sz2 <= 0.0:
                raise DistributionError("half_bound needs s0 > 0 when omega(0) < 0")
            limits.append(sz2 / (-2.0 * a))
    slack = min(limits) if limits else math.inf
    if width is None:
        width = 0.1 * slack if math.isfinite(slack) else 0.1
    if not width > 0.0:
        raise DistributionError("ramp width must be positive")
    if width >= slack:
        raise DistributionError(f"ramp width {width!r} violates the Omega bound (limit {slack!r})")
    segs = [Segment(-math.inf, -width, (0.0,)), Segment(-width, 0.0, (0.0, a / width))]
    segs.extend(base.segments)
    ext = tuple(e for e in base.extensions if e[0] != "left") + (("left", width),)
    return VorticityDistribution(tuple(segs), ext, dist.comment)


def padded(dist: VorticityDistribution) -> VorticityDistribution:
    """Add default ramps on any side where the domain stops at 0 or 1.

    Values on the original domain are unchanged; this only keeps ODE
    solutions that touch 0 or 1 from stepping off the domain.
    """
    lo, hi = dist.domain
    out = dist
    if hi <= 1.0:
        out = extend_right(out)
    if lo >= 0.0:
        out = extend_left(out)
    return out


@dataclass(frozen=True)
class BoundaryZero:
    y_zero: float
    s_bound: float
    domain_limited: bool = False


def boundary_zeros(dist: VorticityDistribution, side: str) -> BoundaryZero:
    """Nearest zero of omega below 0 (``side='below'``) or above 1 (``'above'``).

    ``s_bound = sqrt(2 Omega(y_zero))``.  Without a zero the position is the
    infinite sentinel; ``s_bound`` is then the largest value the domain can
    support (``domain_limited``) or infinity for an unbounded constant tail.
    """
    lo, hi = dist.domain
    if side == "below":
        if lo >= 0.0:
            raise DistributionError("distribution is not extended below 0")
        zs = [z for z in dist.zeros(max(lo, _finite_edge(dist, "below")), 0.0) if z < 0.0]
        if zs:
            z = zs[-1]
            return BoundaryZero(z, math.sqrt(max(2.0 * dist.primitive(z), 0.0)))
        return _no_zero(dist, lo, -math.inf)
    if side == "above":
        if hi <= 1.0:
            raise DistributionError("distribution is not extended above 1")
        zs = [z for z in dist.zeros(1.0, min(hi, _finite_edge(dist, "above"))) if z > 1.0]
        if zs:
            z = zs[0]
            return BoundaryZero(z, math.sqrt(max(2.0 * dist.primitive(z), 0.0)))
        return _no_zero(dist, hi, math.inf)
    raise ValueError("side must be 'below' or 'above'")


def _finite_edge(dist: VorticityDistribution, side: str) -> float:
    # an unbounded tail is constant: its zeros (if any) start at the finite end
    if side == "below":
        s = dist.segments[0]
        return s.hi if not math.isfinite(s.lo) else s.lo
    s = dist.segments[-1]
    return s.lo if not math.isfinite(s.hi) else s.hi


def _no_zero(dist, edge, sentinel) -> BoundaryZero:
    if math.isfinite(edge):
        return BoundaryZero(sentinel, math.sqrt(max(2.0 * dist.primitive(edge), 0.0)), True)
    tail = dist.segments[0] if sentinel < 0 else dist.segments[-1]
    c = tail.coeffs[0]
    grows = (c < 0) if sentinel < 0 else (c > 0)
    return BoundaryZero(sentinel, math.inf if grows else 0.0)


def warn_if(cls: VorticityClass) -> None:
    if cls.warning:
        warnings.warn(f"classification near a tie: {cls.warning}", stacklevel=2)
