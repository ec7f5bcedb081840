import math

import numpy as np
from hypothesis import assume, given
from hypothesis import strategies as st

from wavebounds.bernoulli import conjugate_streams, critical, disconjugacy, r0
from wavebounds.bounds import check_all, synth_perturbed_field, synth_stream_field
from wavebounds.stream import StreamError, depth, profile_cauchy, turning_points
from wavebounds.vorticity import classify, extend_left, extend_right, piecewise_linear, s0

values = st.floats(-3.0, 3.0, allow_nan=False)


@st.composite
def linear_dists(draw, min_knots=2, max_knots=6):
    n = draw(st.integers(min_knots, max_knots))
    gaps = draw(st.lists(st.floats(0.05, 1.0), min_size=n - 1, max_size=n - 1))
    knots = np.concatenate([[0.0], np.cumsum(gaps) / sum(gaps)])
    knots[-1] = 1.0
    vals = draw(st.lists(values, min_size=n, max_size=n))
    return piecewise_linear(list(knots), vals), list(knots), vals


def trapezoid_primitive(knots, vals, tau):
    total = 0.0
    for a, b, fa, fb in zip(knots, knots[1:], vals, vals[1:]):
        if tau <= a:
            break
        t = min(tau, b)
        ft = fa + (fb - fa) * (t - a) / (b - a)
        total += 0.5 * (fa + ft) * (t - a)
    return total


@given(linear_dists())
def test_exactly_one_class(sample):
    d, _, _ = sample
    assert classify(d).label in ("I", "II", "III")


@given(linear_dists(), st.integers(2, 5))
def test_class_survives_resegmentation(sample, parts):
    d, _, _ = sample
    assert classify(d.refined(parts)).label == classify(d).label
    assert math.isclose(s0(d.refined(parts)), s0(d), rel_tol=1e-12, abs_tol=1e-12)


@given(linear_dists(), st.floats(0.0, 1.0))
def test_primitive_matches_trapezoid(sample, tau):
    d, knots, vals = sample
    assert abs(d.primitive(tau) - trapezoid_primitive(knots, vals, tau)) <= 1e-12


@given(linear_dists(), st.floats(0.1, 2.0))
def test_extensions_are_conservative(sample, width):
    d, _, _ = sample
    grid = np.linspace(0.0, 1.0, 41)
    for e in (extend_right(d, width=width), extend_left(d, width=width)):
        assert np.array_equal([e.omega(t) for t in grid], [d.omega(t) for t in grid])
        assert classify(e).label == classify(d).label
        assert s0(e) == s0(d)


@given(linear_dists(), st.floats(0.05, 3.0))
def test_turning_point_residual(sample, extra):
    d, _, _ = sample
    e = extend_left(extend_right(d, width=0.5), width=0.5)
    s = s0(d) + extra
    tp = turning_points(e, s)
    for tau in (tp.tau_plus, tp.tau_minus):
        if math.isfinite(tau):
            assert abs(2.0 * e.primitive(tau) - s * s) <= 1e-12 * max(1.0, s * s)
    assert tp.tau_minus <= 0.0 <= tp.tau_plus


@given(linear_dists(), st.floats(0.01, 3.0), st.floats(0.01, 1.0))
def test_depth_strictly_decreasing(sample, a, gap):
    d, _, _ = sample
    sz = s0(d)
    assert depth(d, sz + a) > depth(d, sz + a + gap)


@given(linear_dists(), st.floats(0.05, 3.0))
def test_energy_identity(sample, extra):
    d, _, _ = sample
    s = s0(d) + extra
    p = profile_cauchy(d, s, (0.0, depth(d, s)), 65)
    assert np.max(p.energy_residual(d)) <= 1e-8
    assert p.u_values[0] == 0.0 and abs(p.u_values[-1] - 1.0) <= 1e-8


@given(linear_dists(), st.floats(0.05, 0.95))
def test_conjugate_ordering(sample, frac):
    d, _, _ = sample
    sc, rc = critical(d)
    top = r0(d)
    r_hi = top if math.isfinite(top) else rc + 2.0
    assume(r_hi - rc > 1e-6)
    r = rc + frac * (r_hi - rc)
    pair = conjugate_streams(d, r)
    assume(pair.plus_exists)
    assert s0(d) < pair.s_plus < sc < pair.s_minus
    assert pair.H_minus < pair.H_plus


@given(linear_dists(), st.floats(0.05, 3.0))
def test_disconjugacy_implication(sample, extra):
    d, _, _ = sample
    res = disconjugacy(d, s0(d) + extra)
    if res.sufficient_mu_bound:
        assert res.positive


@given(linear_dists(), st.floats(0.05, 2.0), st.floats(0.0, 0.05), st.floats(0.5, 4.0))
def test_synthetic_fields_keep_boundary_values(sample, extra, amp, k):
    d, _, _ = sample
    s = s0(d) + extra
    f = synth_perturbed_field(d, s, amp, k, nx=9, nsigma=33)
    assert np.max(np.abs(f.psi[:, 0])) <= 1e-12
    assert np.max(np.abs(f.psi[:, -1] - 1.0)) <= 1e-12


@given(linear_dists(), st.floats(0.1, 2.0))
def test_router_is_total(sample, extra):
    d, _, _ = sample
    try:
        f = synth_stream_field(d, s0(d) + extra, nx=5, nsigma=33)
    except StreamError:
        assume(False)
    rep = check_all(f, d)
    assert [e.theorem for e in rep.entries] == ["1", "2", "3", "4", "P1"]
    for e in rep.entries:
        assert isinstance(e.verdict, str) and e.verdict
        if not e.applicable:
            assert e.log
    assert set(rep.routes) == {"upper", "lower"}
