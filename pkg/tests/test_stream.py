import math

import numpy as np
import pytest

from wavebounds.config import tolerances
from wavebounds.stream import (
    CauchySolution,
    StreamError,
    classify_profile,
    depth,
    depth_derivative,
    depth_inverse,
    depth_with_error,
    h0,
    profile_cauchy,
    profile_implicit,
    turning_points,
)
from wavebounds.testing import random_piecewise_linear, with_tails
from wavebounds.vorticity import DistributionError, constant, s0

SQ5 = math.sqrt(5.0)


def test_turning_points_positive_vorticity(pos2_wide):
    tp = turning_points(pos2_wide, 3.0)
    assert tp.tau_plus == pytest.approx(2.25, abs=1e-14)
    assert tp.y_plus == pytest.approx(1.5, abs=1e-12)
    assert 2.0 * pos2_wide.primitive(tp.tau_plus) == pytest.approx(9.0, abs=1e-12)


def test_turning_points_negative_vorticity(neg2_wide):
    tp = turning_points(neg2_wide, 1.0)
    assert tp.tau_minus == pytest.approx(-0.25, abs=1e-14)
    assert tp.y_minus == pytest.approx(-0.5, abs=1e-12)
    assert tp.tau_minus <= 0.0 <= tp.tau_plus


def test_turning_points_none_for_zero():
    d = constant(0.0, -math.inf, math.inf)
    tp = turning_points(d, 1.0)
    assert tp.tau_plus == math.inf and tp.tau_minus == -math.inf
    assert not tp.truncated_plus and not tp.truncated_minus
    assert classify_profile(tp) == ("monotone", None)


def test_turning_points_zero_slope_convention(neg2):
    tp = turning_points(constant(-2.0, -1.0, 1.0), 0.0)
    assert tp.tau_minus == 0.0 and tp.y_minus == 0.0


def test_classify_profile_shapes(pos2_wide, neg2_wide):
    kind, _ = classify_profile(turning_points(pos2_wide, 3.0))
    assert kind == "single_max"
    kind, _ = classify_profile(turning_points(neg2_wide, 1.0))
    assert kind == "single_min"


def test_periodic_profile_period():
    # omega = tau (linear restoring force): U'' = -U has period 2 pi
    d = constant(0.0, -10.0, 10.0)
    d = type(d)(((-10.0, 10.0, (-10.0, 1.0)),))
    kind, period = classify_profile(turning_points(d, 1.0))
    assert kind == "periodic"
    assert period == pytest.approx(2.0 * math.pi, rel=1e-10)


@pytest.mark.parametrize(
    "value,s,expected",
    [(0.0, 2.0, 0.5), (-2.0, 1.0, (SQ5 - 1.0) / 2.0), (2.0, 3.0, (3.0 - SQ5) / 2.0)],
)
def test_depth_closed_forms(value, s, expected):
    assert depth(constant(value), s) == pytest.approx(expected, rel=1e-10)


def test_depth_below_s0(pos2):
    with pytest.raises(StreamError):
        depth(pos2, 1.9)


def test_depth_at_s0_class_one(zero):
    with pytest.raises(StreamError):
        depth(zero, 0.0)


@pytest.mark.parametrize("value,expected", [(-2.0, 1.0), (2.0, 1.0), (0.0, math.inf)])
def test_h0_constants(value, expected):
    assert h0(constant(value)) == pytest.approx(expected, rel=1e-12) if math.isfinite(expected) \
        else h0(constant(value)) == math.inf


def test_depth_strictly_decreasing(rng):
    for _ in range(10):
        d = random_piecewise_linear(rng)
        sz = s0(d)
        ss = sz + np.geomspace(1e-3, 5.0, 30)
        hs = [depth(d, s) for s in ss]
        assert np.all(np.diff(hs) < 0)


def test_quadrature_refinement_within_estimate(rng):
    d = random_piecewise_linear(rng)
    s = s0(d) + 0.3
    h1, e1 = depth_with_error(d, s)
    with tolerances(quad_rel=5e-13):
        h2, _ = depth_with_error(d, s)
    assert abs(h1 - h2) <= max(e1, 1e-15)


def test_depth_derivative_against_difference(rng):
    d = random_piecewise_linear(rng)
    s = s0(d) + 0.7
    k = 1e-5
    fd = (depth(d, s + k) - depth(d, s - k)) / (2 * k)
    assert depth_derivative(d, s) == pytest.approx(fd, rel=1e-6)


def test_depth_inverse_roundtrip(rng):
    d = random_piecewise_linear(rng)
    s = s0(d) + 0.4
    assert depth_inverse(d, depth(d, s)) == pytest.approx(s, rel=1e-11)


def test_cauchy_negative_constant(neg2_wide):
    p = profile_cauchy(neg2_wide, 1.0, (-2.0, 1.0), 301)
    assert np.max(np.abs(p.u_values - (p.y_grid**2 + p.y_grid))) <= 1e-8
    assert p.kind == "single_min"


def test_cauchy_positive_constant(pos2_wide):
    p = profile_cauchy(pos2_wide, 3.0, (-0.5, 3.5), 301)
    assert np.max(np.abs(p.u_values - (-p.y_grid**2 + 3.0 * p.y_grid))) <= 1e-8
    assert p.kind == "single_max"


def test_cauchy_irrotational_line():
    p = profile_cauchy(constant(0.0, -5.0, 5.0), 1.0, (0.0, 2.0), 11)
    assert np.allclose(p.u_values, p.y_grid, atol=1e-12)
    assert p.kind == "monotone"


def test_cauchy_initial_data(rng):
    d = with_tails(random_piecewise_linear(rng))
    p = profile_cauchy(d, 1.2, (0.0, 0.5), 21)
    assert abs(p.u_values[0]) <= 1e-10 and abs(p.u_prime[0] - 1.2) <= 1e-10


def test_cauchy_leaves_domain(pos2):
    with pytest.raises(DistributionError):
        CauchySolution(pos2, 3.0, 0.0, 2.0)


def test_implicit_examples(neg2, zero, pos2_wide):
    h = depth(neg2, 1.0)
    assert profile_implicit(neg2, 1.0, [0.0, h]).u_values[-1] == pytest.approx(1.0, abs=1e-12)
    assert profile_implicit(zero, 2.0, [0.0, 0.25]).u_values[-1] == pytest.approx(0.5, abs=1e-12)
    assert profile_implicit(pos2_wide, 3.0, [0.0, 1.0]).u_values[-1] == pytest.approx(2.0, abs=1e-12)


def test_implicit_outside_monotone_interval(pos2_wide):
    with pytest.raises(StreamError):
        profile_implicit(pos2_wide, 3.0, [0.0, 1.6])


def test_symmetry_about_stationary_point(rng):
    d = with_tails(random_piecewise_linear(rng, ends=(1.0, 2.0)), width=2.0)
    s = 1.0
    tp = turning_points(d, s)
    if not math.isfinite(tp.y_plus):
        pytest.skip("sample has no maximum")
    y0 = tp.y_plus
    t = np.linspace(0.0, 0.9 * y0, 21)
    sol = CauchySolution(d, s, 0.0, 2.0 * y0)
    assert np.max(np.abs(sol(y0 + t) - sol(y0 - t))) <= 1e-8


def test_energy_identity_cauchy(rng):
    for _ in range(5):
        d = with_tails(random_piecewise_linear(rng))
        s = s0(d) + 0.5
        p = profile_cauchy(d, s, (-0.5, 1.5), 101)
        assert np.max(np.abs(p.energy_residual(d))) <= 1e-8
