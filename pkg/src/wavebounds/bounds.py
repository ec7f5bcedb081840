"""Inequality checks on candidate wave fields ``(psi, eta, r)``.

A field is given on a boundary-fitted grid: columns ``x_i``, surface
heights ``eta_i`` and normalised levels ``sigma_j`` with ``y = sigma eta``.
The checkers compare it with stream solutions computed by this package and
report signed margins (positive means the inequality holds strictly).

Grid values are exact, so a negative margin at a grid point is a genuine
violation.  A positive margin is only trusted where it exceeds half the
largest jump of the compared difference to a neighbouring point; anything
thinner is reported as ``unresolved``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import ndimage

from .bernoulli import (
    CurveError,
    bernoulli_R,
    conjugate_streams,
    critical,
    h_negative,
    negative_branch,
    r0,
)
from .counter_current import FamilyError, h_minus, h_plus, s_upper
from .stream import CauchySolution, StreamError, depth, depth_inverse, h0, turning_points
from .vorticity import DistributionError, VorticityDistribution, classify, extend_left, extend_right, padded, s0

BC_TOL = 1e-8
ATTAIN_TOL = 1e-10
EQUAL_TOL = 1e-8  # equality slack for stream fields (computed on both sides)
N_SEARCH = 64


class FieldError(ValueError):
    """Malformed wave field."""


@dataclass(frozen=True, eq=False)
class WaveField:
    x_grid: np.ndarray
    eta: np.ndarray
    sigma_grid: np.ndarray
    psi: np.ndarray
    r: float

    def __post_init__(self):
        for name in ("x_grid", "eta", "sigma_grid", "psi"):
            object.__setattr__(self, name, np.asarray(getattr(self, name), dtype=float))
        x, eta, sg, psi = self.x_grid, self.eta, self.sigma_grid, self.psi
        if x.ndim != 1 or x.size < 2 or np.any(np.diff(x) <= 0):
            raise FieldError("x must be a strictly increasing list of at least two values")
        if eta.shape != x.shape:
            raise FieldError("eta must have one value per x")
        if not np.all(np.isfinite(eta)) or np.any(eta <= 0):
            raise FieldError("eta must be finite and positive")
        if sg.ndim != 1 or sg.size < 3 or np.any(np.diff(sg) <= 0) or sg[0] != 0.0 or sg[-1] != 1.0:
            raise FieldError("sigma must increase strictly from 0 to 1")
        if psi.shape != (x.size, sg.size):
            raise FieldError(f"psi must have shape ({x.size}, {sg.size}), got {psi.shape}")
        if not np.all(np.isfinite(psi)):
            raise FieldError("psi must be finite")
        if np.max(np.abs(psi[:, 0])) > BC_TOL:
            raise FieldError("psi must vanish on the bottom")
        if np.max(np.abs(psi[:, -1] - 1.0)) > BC_TOL:
            raise FieldError("psi must equal 1 on the surface")
        if not math.isfinite(self.r):
            raise FieldError("r must be finite")

    @property
    def y(self) -> np.ndarray:
        return self.sigma_grid[None, :] * self.eta[:, None]

    @property
    def is_stream(self) -> bool:
        """x-independent field with a flat surface."""
        return bool(np.ptp(self.eta) == 0.0 and np.max(np.ptp(self.psi, axis=0)) <= 1e-12)


@dataclass(frozen=True)
class SurfaceExtrema:
    eta_check: float
    eta_hat: float
    x_check: float
    x_hat: float
    check_attained: bool
    hat_attained: bool


def surface_extrema(field: WaveField) -> SurfaceExtrema:
    """Grid infimum and supremum of ``eta``.

    An extremum counts as attained only at an interior column; at the ends
    of the window it may be approached outside it.
    """
    eta = field.eta
    i, k = int(np.argmin(eta)), int(np.argmax(eta))
    lo, hi = eta[i], eta[k]
    inner = eta[1:-1]
    return SurfaceExtrema(
        float(lo), float(hi), float(field.x_grid[i]), float(field.x_grid[k]),
        bool(inner.size and np.min(inner) <= lo + ATTAIN_TOL),
        bool(inner.size and np.max(inner) >= hi - ATTAIN_TOL),
    )


# -- report types --------------------------------------------------------------------


@dataclass
class Check:
    name: str
    margin: float
    strict: bool
    verdict: str
    witness: dict | None = None


@dataclass
class TheoremEntry:
    theorem: str
    applicable: bool
    verdict: str
    margin: float = math.nan
    witness: dict | None = None
    log: list = field(default_factory=list)
    checks: list = field(default_factory=list)
    data: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "theorem": self.theorem,
            "applicable": self.applicable,
            "verdict": self.verdict,
            "margin": self.margin,
            "witness": self.witness,
            "log": list(self.log),
            "checks": [c.__dict__ for c in self.checks],
            "data": dict(self.data),
        }


@dataclass
class BoundsReport:
    eta_check: float
    eta_hat: float
    stream: bool
    entries: list
    routes: dict

    @property
    def any_applicable(self) -> bool:
        return any(e.applicable for e in self.entries)

    def entry(self, theorem: str) -> TheoremEntry:
        return next(e for e in self.entries if e.theorem == theorem)

    def to_json(self) -> dict:
        return {
            "eta_check": self.eta_check,
            "eta_hat": self.eta_hat,
            "stream": self.stream,
            "routes": dict(self.routes),
            "entries": [e.to_json() for e in self.entries],
        }


def _inapplicable(theorem, *why, **data) -> TheoremEntry:
    return TheoremEntry(theorem, False, "inapplicable", log=list(why), data=data)


def _scalar_check(name, margin, strict, stream):
    """Verdict for ``margin >= 0`` (``> 0`` when strict); stream fields only need ``>= -EQUAL_TOL``."""
    if stream:
        strict = False
    if margin > 0 or (not strict and margin >= (-EQUAL_TOL if stream else 0.0)):
        v = "holds"
    else:
        v = "violated"
    return Check(name, float(margin), strict, v)


def _field_check(name, diff, mask, field_, strict=True, stream=False):
    """Check ``diff > 0`` at the masked grid points (``>= -EQUAL_TOL`` for stream fields)."""
    if not np.any(mask):
        return Check(name, math.inf, strict, "holds", None)
    d = np.where(mask, diff, np.inf)
    i, j = np.unravel_index(int(np.argmin(d)), d.shape)
    m = float(d[i, j])
    wit = {"x": float(field_.x_grid[i]), "y": float(field_.y[i, j])}
    if stream:
        return Check(name, m, False, "holds" if m >= -EQUAL_TOL else "violated", wit)
    if m <= 0.0:
        return Check(name, m, strict, "violated", wit)
    # local resolution guard: half the largest jump to a grid neighbour
    guard = np.zeros_like(diff)
    for ax in (0, 1):
        jump = np.abs(np.diff(diff, axis=ax))
        pad_lo = [(0, 0), (0, 0)]
        pad_hi = [(0, 0), (0, 0)]
        pad_lo[ax] = (1, 0)
        pad_hi[ax] = (0, 1)
        guard = np.maximum(guard, np.pad(jump, pad_lo), out=None)
        guard = np.maximum(guard, np.pad(jump, pad_hi))
    thin = mask & (diff <= 0.5 * guard)
    if np.any(thin):
        ti, tj = np.argwhere(thin)[0]
        return Check(name, m, strict, "unresolved",
                     {"x": float(field_.x_grid[ti]), "y": float(field_.y[ti, tj])})
    return Check(name, m, strict, "holds", wit)


def _finish(entry: TheoremEntry) -> TheoremEntry:
    if entry.checks:
        vs = [c.verdict for c in entry.checks]
        entry.verdict = "violated" if "violated" in vs else ("unresolved" if "unresolved" in vs else "holds")
        worst = min(entry.checks, key=lambda c: c.margin)
        entry.margin = worst.margin
        bad = [c for c in entry.checks if c.verdict == "violated"]
        entry.witness = (bad[0] if bad else worst).witness
    return entry


def _profile_values(dist, s, y, y_top):
    """``U(y; s)`` at the grid heights ``y`` via one dense Cauchy solve on ``[0, y_top]``."""
    sol = CauchySolution(padded(dist), s, 0.0, y_top)
    return sol(y.ravel()).reshape(y.shape)


def _extended(dist, left=False, right=False, log=None):
    lo, hi = dist.domain
    out = dist
    if right and hi <= 1.0:
        out = extend_right(out)
        if log is not None:
            log.append("omega extended above 1 by the default ramp")
    if left and lo >= 0.0:
        out = extend_left(out)
        if log is not None:
            log.append("omega extended below 0 by the default ramp")
    return out


def _conjugates_log(dist, r, log, extended=False):
    try:
        return conjugate_streams(dist, r, extended=extended)
    except CurveError as exc:
        log.append(str(exc))
        return None


# -- Theorems 1 and 2 --------------------------------------------------------------------


def check_theorem1(field_: WaveField, dist: VorticityDistribution) -> TheoremEntry:
    """Upper bound ``psi < U(y; s_check)`` below ``eta_check`` and relations (A)-(C)."""
    stream = field_.is_stream
    if np.max(field_.psi) > 1.0 + BC_TOL:
        return _inapplicable("1", "hypothesis psi <= 1 fails")
    ext = surface_extrema(field_)
    hz = h0(dist)
    ec = ext.eta_check
    entry = TheoremEntry("1", True, "holds")
    if stream:
        entry.log.append("stream field: the theorem concerns non-stream solutions; strictness waived")
    at_h0 = math.isfinite(hz) and abs(ec - hz) <= ATTAIN_TOL * max(1.0, hz)
    if ec > hz and not at_h0:
        return _inapplicable("1", f"eta_check = {ec!r} exceeds h0 = {hz!r}; see theorem 3", h0=hz)
    strict = ext.check_attained and not stream
    entry.data.update(h0=hz, eta_check=ec, attained=ext.check_attained)
    if not at_h0:
        s_chk = depth_inverse(dist, ec)
        entry.data["s_check"] = s_chk
        cmp_dist = _extended(dist, right=True, log=entry.log)
        y = field_.y
        mask = (y > 0.0) & (y < ec)
        mask[:, 0] = False
        u = _profile_values(cmp_dist, s_chk, np.where(mask, y, 0.0), ec)
        entry.checks.append(_field_check("psi < U_check", u - field_.psi, mask, field_, True, stream))
    else:
        entry.log.append("eta_check = h0: relations (A)-(C) only")
    sc, rc = critical(dist)
    entry.data.update(s_c=sc, r_c=rc)
    entry.checks.append(_scalar_check("A: r >= r_c", field_.r - rc, strict, stream))
    if field_.r >= rc:
        pair = _conjugates_log(dist, field_.r, entry.log)
        if pair is not None:
            entry.data.update(H_minus=pair.H_minus, H_plus=pair.H_plus)
            c = _scalar_check("B: H_- < eta", ec - pair.H_minus, True, stream)
            c.witness = {"x": ext.x_check, "y": ec}
            entry.checks.append(c)
            if field_.r <= r0(dist) and pair.H_plus is not None:
                c = _scalar_check("C: eta_check <= H_+", pair.H_plus - ec, strict, stream)
                c.witness = {"x": ext.x_check, "y": ec}
                entry.checks.append(c)
            else:
                entry.log.append("r > r0: relation (C) not asserted")
    else:
        entry.log.append("r < r_c: no conjugate depths, (B) and (C) skipped")
    return _finish(entry)


def check_theorem2(field_: WaveField, dist: VorticityDistribution) -> TheoremEntry:
    """Lower bound ``psi > U(y; s_hat)`` in the fluid and ``eta_hat >= H_+``."""
    stream = field_.is_stream
    if np.min(field_.psi) < -BC_TOL:
        return _inapplicable("2", "hypothesis psi >= 0 fails")
    ext = surface_extrema(field_)
    hz = h0(dist)
    eh = ext.eta_hat
    at_h0 = math.isfinite(hz) and abs(eh - hz) <= ATTAIN_TOL * max(1.0, hz)
    if eh > hz and not at_h0:
        return _inapplicable("2", f"eta_hat = {eh!r} exceeds h0 = {hz!r}; see theorem 4", h0=hz)
    entry = TheoremEntry("2", True, "holds")
    if stream:
        entry.log.append("stream field: the theorem concerns non-stream solutions; strictness waived")
    strict = ext.hat_attained and not stream
    entry.data.update(h0=hz, eta_hat=eh, attained=ext.hat_attained)
    if not at_h0:
        s_hat = depth_inverse(dist, eh)
        entry.data["s_hat"] = s_hat
        cmp_dist = _extended(dist, left=True, log=entry.log)
        y = field_.y
        mask = np.zeros(y.shape, dtype=bool)
        mask[:, 1:-1] = True
        u = _profile_values(cmp_dist, s_hat, y, eh)
        entry.checks.append(_field_check("psi > U_hat", field_.psi - u, mask, field_, True, stream))
    else:
        entry.log.append("eta_hat = h0: only eta_hat >= H_+ is asserted")
    if field_.r <= r0(dist):
        pair = _conjugates_log(dist, field_.r, entry.log)
        if pair is not None and pair.H_plus is not None:
            entry.data["H_plus"] = pair.H_plus
            c = _scalar_check("eta_hat >= H_+", eh - pair.H_plus, strict, stream)
            c.witness = {"x": ext.x_hat, "y": eh}
            entry.checks.append(c)
    else:
        entry.log.append("r > r0: eta_hat >= H_+ not asserted")
    return _finish(entry)


# -- Theorems 3 and 4: existence of a counter-current comparison ---------------------------


def _search(candidates, qualify):
    """Evaluate ``qualify`` on the grid and once more on 8 points inside each flip."""
    results = [(s, qualify(s)) for s in candidates]
    extra = []
    for (a, qa), (b, qb) in zip(results, results[1:]):
        if bool(qa[0]) != bool(qb[0]):
            extra.extend((t, qualify(t)) for t in np.linspace(a, b, 10)[1:-1])
    return sorted(results + extra, key=lambda p: p[0])


def check_theorem3(field_: WaveField, dist: VorticityDistribution) -> TheoremEntry:
    """Search small ``s > 0`` with ``h0 < h_-(s) < eta_check`` and ``psi < u_-(.; s)`` below ``h_-(s)``."""
    if classify(dist).label != "II":
        return _inapplicable("3", f"needs class II vorticity, got {classify(dist).label}")
    if np.max(field_.psi) > 1.0 + BC_TOL:
        return _inapplicable("3", "hypothesis psi <= 1 fails")
    ext = surface_extrema(field_)
    hz = h0(dist)
    ec = ext.eta_check
    if not hz < ec:
        return _inapplicable("3", f"needs h0 < eta_check, got h0 = {hz!r}, eta_check = {ec!r}; see theorem 1")
    entry = TheoremEntry("3", True, "holds")
    stream = field_.is_stream
    cmp_dist = _extended(dist, left=True, log=entry.log)
    sup = s_upper(cmp_dist, "minus").s_bound
    top = sup * (1.0 - 1e-6) if math.isfinite(sup) else 10.0
    y = field_.y

    def qualify(s):
        try:
            H = h_minus(cmp_dist, float(s))
        except (StreamError, DistributionError) as exc:
            return False, None, str(exc)
        if not hz < H < ec:
            return False, None, "h_- outside (h0, eta_check)"
        mask = (y > 0.0) & (y < H)
        try:
            u = _profile_values(cmp_dist, -float(s), np.where(mask, y, 0.0), H)
        except DistributionError as exc:
            return False, None, str(exc)
        c = _field_check("psi < u_-", u - field_.psi, mask, field_, True, stream)
        return c.verdict == "holds", c, H

    found = [(s, q) for s, q in _search(np.geomspace(top * 1e-6, top, N_SEARCH), qualify) if q[0]]
    entry.data.update(h0=hz, eta_check=ec, s_upper=sup, qualifying=[float(s) for s, _ in found])
    if not found:
        entry.verdict = "not verified at this resolution"
        entry.log.append(f"no qualifying s among {N_SEARCH} geometric values in (0, s^>)")
        return entry
    s_star, (_, chk, H) = found[0]
    tp = turning_points(cmp_dist, float(s_star))
    entry.checks.append(chk)
    entry.data.update(s_star=float(s_star), h_minus=H, counter_current_top=-tp.y_minus)
    return _finish(entry)


def check_theorem4(field_: WaveField, dist: VorticityDistribution) -> TheoremEntry:
    """Search ``s`` just above ``s0`` with ``h0 < h_+(s) < eta_check`` and ``psi > u_+(.; s)`` in the fluid."""
    if classify(dist).label != "III":
        return _inapplicable("4", f"needs class III vorticity, got {classify(dist).label}")
    if not dist.primitive(1.0) > 0.0:
        return _inapplicable("4", "hypothesis Omega(1) > 0 fails")
    if np.min(field_.psi) < -BC_TOL:
        return _inapplicable("4", "hypothesis psi >= 0 fails")
    ext = surface_extrema(field_)
    hz = h0(dist)
    ec = ext.eta_check
    if not hz < ec:
        return _inapplicable("4", f"needs h0 < eta_check, got h0 = {hz!r}, eta_check = {ec!r}")
    entry = TheoremEntry("4", True, "holds")
    stream = field_.is_stream
    cmp_dist = _extended(dist, left=True, right=True, log=entry.log)
    sz = s0(cmp_dist)
    sup = s_upper(cmp_dist, "plus").s_bound
    span = (sup - sz) * (1.0 - 1e-6) if math.isfinite(sup) else 10.0 * (1.0 + sz)
    y = field_.y
    mask = np.zeros(y.shape, dtype=bool)
    mask[:, 1:-1] = True
    y_top = float(np.max(y))

    def qualify(s):
        try:
            H = h_plus(cmp_dist, float(s))
        except (StreamError, DistributionError) as exc:
            return False, None, str(exc)
        if not hz < H < ec:
            return False, None, "h_+ outside (h0, eta_check)"
        try:
            u = _profile_values(cmp_dist, float(s), y, y_top)
        except DistributionError as exc:
            return False, None, str(exc)
        c = _field_check("psi > u_+", field_.psi - u, mask, field_, True, stream)
        return c.verdict == "holds", c, H

    grid = sz + np.geomspace(span * 1e-6, span, N_SEARCH)
    found = [(s, q) for s, q in _search(grid, qualify) if q[0]]
    entry.data.update(h0=hz, eta_check=ec, s0=sz, s_upper=sup, qualifying=[float(s) for s, _ in found])
    if not found:
        entry.verdict = "not verified at this resolution"
        entry.log.append(f"no qualifying s among {N_SEARCH} geometric values above s0")
        return entry
    s_star, (_, chk, H) = found[0]
    tp = turning_points(cmp_dist, float(s_star))
    entry.checks.append(chk)
    entry.data.update(s_star=float(s_star), h_plus=H, counter_current_bottom=tp.y_plus)
    return _finish(entry)


def check_proposition1(field_: WaveField, dist: VorticityDistribution) -> TheoremEntry:
    """``eta_check <= H_+`` with ``H_+`` from the negative branch when ``r0 <= r < r'``."""
    if classify(dist).label != "II":
        return _inapplicable("P1", f"needs class II vorticity, got {classify(dist).label}")
    if np.max(field_.psi) > 1.0 + BC_TOL:
        return _inapplicable("P1", "hypothesis psi <= 1 fails")
    stream = field_.is_stream
    log = []
    cmp_dist = _extended(dist, left=True, log=log)
    nb = negative_branch(cmp_dist)
    sc, rc = critical(cmp_dist)
    r = field_.r
    if not rc < r < nb.r_prime:
        return _inapplicable("P1", f"needs r in (r_c, r') = ({rc!r}, {nb.r_prime!r}), got {r!r}", *log)
    ext = surface_extrema(field_)
    h_sp = math.inf if nb.boundary and not math.isfinite(nb.r_prime) else h_negative(cmp_dist, nb.s_prime * (1 - 1e-12))
    if not ext.eta_check < h_sp:
        return _inapplicable("P1", f"needs eta_check < h(s') = {h_sp!r}", *log)
    pair = conjugate_streams(cmp_dist, r, extended=True, crit=(sc, rc))
    entry = TheoremEntry("P1", True, "holds", log=log)
    entry.data.update(s_prime=nb.s_prime, r_prime=nb.r_prime, s_plus=pair.s_plus, H_plus=pair.H_plus,
                      branch=pair.plus_branch)
    c = _scalar_check("eta_check <= H_+", pair.H_plus - ext.eta_check, ext.check_attained, stream)
    c.witness = {"x": ext.x_check, "y": ext.eta_check}
    entry.checks.append(c)
    return _finish(entry)


def _guarded(theorem, fn, field_, dist) -> TheoremEntry:
    try:
        return fn(field_, dist)
    except (StreamError, DistributionError, ArithmeticError) as exc:
        return TheoremEntry(theorem, False, "unresolved", log=[f"numerical failure: {exc}"])


def check_all(field_: WaveField, dist: VorticityDistribution) -> BoundsReport:
    """All checks in fixed order; the ``eta`` versus ``h0`` comparison routes 1/3 and 2/4."""
    ext = surface_extrema(field_)
    hz = h0(dist)
    at = lambda e: math.isfinite(hz) and abs(e - hz) <= ATTAIN_TOL * max(1.0, hz)  # noqa: E731
    routes = {
        "upper": "1" if (ext.eta_check <= hz or at(ext.eta_check)) else "3",
        "lower": "2" if (ext.eta_hat <= hz or at(ext.eta_hat)) else "4",
    }
    entries = []
    for th, fn in (("1", check_theorem1), ("2", check_theorem2), ("3", check_theorem3), ("4", check_theorem4)):
        routed = th in routes.values()
        if routed:
            entries.append(_guarded(th, fn, field_, dist))
        else:
            other = routes["upper"] if th in "13" else routes["lower"]
            entries.append(_inapplicable(th, f"routed to theorem {other} by eta versus h0 = {hz!r}"))
    if classify(dist).label == "II":
        entries.append(_guarded("P1", check_proposition1, field_, dist))
    else:
        entries.append(_inapplicable("P1", "needs class II vorticity"))
    return BoundsReport(ext.eta_check, ext.eta_hat, field_.is_stream, entries, routes)


# -- counter-currents -------------------------------------------------------------------------


@dataclass(frozen=True)
class CounterCurrentRegion:
    tag: str  # near-bottom | near-surface | interior
    x_range: tuple[float, float]
    y_range: tuple[float, float]
    reversal_level: float  # mean height where psi_y changes sign on the region's open side
    size: int


def detect_counter_current(field_: WaveField) -> list[CounterCurrentRegion]:
    """Connected grid regions with ``psi_y < 0``, tagged by whether they touch bottom or surface."""
    dpsi = np.gradient(field_.psi, field_.sigma_grid, axis=1, edge_order=2) / field_.eta[:, None]
    neg = dpsi < 0.0
    labels, n = ndimage.label(neg)
    y = field_.y
    out = []
    for k in range(1, n + 1):
        cells = labels == k
        ii, jj = np.nonzero(cells)
        bottom = bool(np.any(jj == 0))
        top = bool(np.any(jj == field_.sigma_grid.size - 1))
        tag = "near-bottom" if bottom and not top else "near-surface" if top and not bottom else (
            "interior" if not (top or bottom) else "full-depth")
        levels = []
        for i in np.unique(ii):
            col = dpsi[i]
            js = jj[ii == i]
            j = int(js.max()) if tag == "near-bottom" else int(js.min())
            nb = j + 1 if tag == "near-bottom" else j - 1
            if 0 <= nb < col.size and col[nb] >= 0.0:
                t = col[j] / (col[j] - col[nb])
                levels.append(y[i, j] + t * (y[i, nb] - y[i, j]))
        out.append(CounterCurrentRegion(
            tag,
            (float(field_.x_grid[ii.min()]), float(field_.x_grid[ii.max()])),
            (float(y[cells].min()), float(y[cells].max())),
            float(np.mean(levels)) if levels else math.nan,
            int(cells.sum()),
        ))
    return out


# -- synthetic fields ------------------------------------------------------------------------


def _stream_data(dist, s, kind):
    om1 = dist.primitive(1.0)
    if kind == "stream":
        H = depth(dist, s)
        slope = s
    elif kind == "minus":
        H = h_minus(dist, s)
        slope = -s
    elif kind == "plus":
        H = h_plus(dist, s)
        slope = s
    else:
        raise ValueError("kind must be 'stream', 'minus' or 'plus'")
    # u'(H)^2 = s^2 - 2 Omega(1) on every branch
    return H, slope, (s * s - 2.0 * om1 + 2.0 * H) / 3.0


def synth_stream_field(
    dist: VorticityDistribution,
    s: float,
    x_extent: tuple[float, float] = (0.0, 2.0 * math.pi),
    *,
    kind: str = "stream",
    nx: int = 33,
    nsigma: int = 129,
) -> WaveField:
    """x-independent field ``psi = U(sigma H)`` with ``eta = H`` and ``r`` from the Bernoulli identity.

    ``kind`` picks the monotone solution (``depth``), ``u_-`` or ``u_+``.
    """
    H, slope, r = _stream_data(dist, s, kind)
    x = np.linspace(x_extent[0], x_extent[1], nx)
    sg = np.linspace(0.0, 1.0, nsigma)
    col = CauchySolution(padded(dist), slope, 0.0, H)(sg * H)
    col[0], col[-1] = 0.0, 1.0
    psi = np.tile(col, (nx, 1))
    return WaveField(x, np.full(nx, H), sg, psi, r)


def synth_perturbed_field(
    dist: VorticityDistribution,
    s: float,
    amplitude: float,
    wavenumber: float,
    *,
    kind: str = "stream",
    x_extent: tuple[float, float] | None = None,
    nx: int = 33,
    nsigma: int = 129,
) -> WaveField:
    """The stream field with surface ``H + a cos(k x)`` and ``psi`` stretched to fit.

    ``psi`` keeps its values in ``sigma``, so both boundary conditions stay
    exact.  This is a test object, not a solution of the free-boundary problem.
    """
    if x_extent is None:
        x_extent = (0.0, 2.0 * math.pi / wavenumber)
    base = synth_stream_field(dist, s, x_extent, kind=kind, nx=nx, nsigma=nsigma)
    if amplitude == 0.0:
        return base
    H = float(base.eta[0])
    if abs(amplitude) >= H:
        raise FieldError(f"|amplitude| = {abs(amplitude)!r} must stay below the depth {H!r}")
    eta = H + amplitude * np.cos(wavenumber * base.x_grid)
    return WaveField(base.x_grid, eta, base.sigma_grid, base.psi.copy(), base.r)


__all__ = [
    "BoundsReport",
    "Check",
    "CounterCurrentRegion",
    "FieldError",
    "SurfaceExtrema",
    "TheoremEntry",
    "WaveField",
    "check_all",
    "check_proposition1",
    "check_theorem1",
    "check_theorem2",
    "check_theorem3",
    "check_theorem4",
    "detect_counter_current",
    "surface_extrema",
    "synth_perturbed_field",
    "synth_stream_field",
]
