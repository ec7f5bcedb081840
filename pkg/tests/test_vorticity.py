import math
import warnings

import numpy as np
import pytest
from scipy import integrate

from wavebounds.testing import random_piecewise_linear
from wavebounds.vorticity import (
    DistributionError,
    boundary_zeros,
    build_distribution,
    classify,
    constant,
    extend_left,
    extend_right,
    omega_primitive,
    piecewise_linear,
    s0,
    warn_if,
)


def test_constant_segments_are_valid(neg2, zero):
    assert neg2.lipschitz_bound == 0.0
    assert zero.omega(0.3) == 0.0
    assert neg2.domain == (0.0, 1.0)


def test_mismatched_breakpoint_rejected():
    with pytest.raises(DistributionError):
        build_distribution([(0.0, 0.5, [1.0]), (0.5, 1.0, [2.0])])


def test_gap_and_short_domain_rejected():
    with pytest.raises(DistributionError):
        build_distribution([(0.0, 0.4, [1.0]), (0.5, 1.0, [1.0])])
    with pytest.raises(DistributionError):
        build_distribution([(0.0, 0.9, [1.0])])


def test_degree_limit():
    with pytest.raises(DistributionError):
        build_distribution([(0.0, 1.0, [0, 0, 0, 0, 0, 0, 1.0])])


def test_lipschitz_bound_of_quadratic():
    # omega = 1 - 3 t + t^2 on [0, 1]; |omega'| = |2t - 3| <= 3
    d = build_distribution([(0.0, 1.0, [1.0, -3.0, 1.0])])
    assert d.lipschitz_bound == pytest.approx(3.0, abs=1e-14)


@pytest.mark.parametrize("value,tau,expected", [(-2.0, 0.5, -1.0), (2.0, 1.0, 2.0), (0.7, 0.0, 0.0)])
def test_primitive_closed_forms(value, tau, expected):
    assert omega_primitive(constant(value), tau) == pytest.approx(expected, abs=1e-15)


def test_primitive_outside_domain(neg2):
    with pytest.raises(DistributionError):
        neg2.primitive(1.5)


@pytest.mark.filterwarnings("ignore::scipy.integrate.IntegrationWarning")
def test_primitive_against_quad(rng):
    for _ in range(100):
        d = random_piecewise_linear(rng)
        knots = [s.lo for s in d.segments[1:]]
        for tau in rng.uniform(0.0, 1.0, 3):
            ref = integrate.quad(d.omega, 0.0, tau, points=[k for k in knots if k < tau] or None,
                                 epsabs=1e-14, epsrel=1e-13, limit=200)[0]
            assert abs(d.primitive(tau) - ref) <= 1e-12


def test_primitive_anchor_when_zero_is_interior():
    d = build_distribution([(-1.0, 0.5, [1.0, 2.0]), (0.5, 2.0, [4.0, -1.0])])
    # omega = 3 + 2 t on the first piece once re-centred at 0
    assert d.primitive(0.0) == 0.0
    assert d.primitive(-0.5) == pytest.approx(-(3 * 0.5 - 0.25), abs=1e-15)


@pytest.mark.parametrize("value,label", [(-2.0, "II"), (2.0, "III"), (0.0, "I")])
def test_classify_constants(value, label):
    assert classify(constant(value)).label == label


def test_classify_interior_maximum_is_class_one():
    # omega > 0 then < 0: Omega peaks inside (0, 1)
    d = piecewise_linear([0.0, 1.0], [1.0, -1.0])
    c = classify(d)
    assert c.label == "I" and c.witness["where"] == "interior"


def test_classify_zero_slope_at_zero_is_class_one():
    # omega(0) = 0 with Omega < 0 on (0, 1]: verbatim reading gives class I
    d = piecewise_linear([0.0, 1.0], [0.0, -1.0])
    assert classify(d).label == "I"


def test_classify_omega1_zero_both_ends():
    # Omega(1) = 0 with omega(0) < 0 < omega(1): class III by its second clause
    d = piecewise_linear([0.0, 1.0], [-1.0, 1.0])
    assert classify(d).label == "III"


def test_near_tie_warns():
    d = piecewise_linear([0.0, 1.0], [-1e-13, -1.0])
    c = classify(d)
    assert c.label == "I" and c.warning
    with pytest.warns(UserWarning):
        warn_if(c)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        warn_if(classify(constant(-2.0)))


def test_class_two_witness_breakpoints(rng):
    for _ in range(30):
        d = random_piecewise_linear(rng, ends=(-1.0, rng.uniform(-3, 3)))
        if classify(d).label != "II":
            continue
        for seg in d.segments:
            for t in (seg.lo, seg.hi):
                if 0.0 < t <= 1.0:
                    assert d.primitive(t) < 0.0


@pytest.mark.parametrize("value,expected", [(2.0, 2.0), (-2.0, 0.0), (0.0, 0.0)])
def test_s0_constants(value, expected):
    assert s0(constant(value)) == pytest.approx(expected, abs=1e-15)


def test_extend_right_keeps_original_segments(pos2):
    e = extend_right(pos2, 3.0, width=0.1)
    assert e.segments[: len(pos2.segments)] == pos2.segments
    assert e.omega(1.05) == pytest.approx(1.0)
    assert e.omega(1.1) == 0.0 and e.omega(50.0) == 0.0
    # max Omega on the extension: 2 + 0.1
    assert e.primitive(2.0) == pytest.approx(2.1)
    assert 9.0 > 2.0 * e.primitive(2.0)


def test_extend_right_rejects_small_target(pos2):
    with pytest.raises(DistributionError):
        extend_right(pos2, 2.0)
    with pytest.raises(DistributionError):
        extend_right(pos2, 3.0, width=3.0)


def test_extend_right_class_two_any_width(neg2):
    e = extend_right(neg2, 1.0)
    assert e.primitive(5.0) <= 0.0


def test_extend_left_class_three(pos2):
    e = extend_left(pos2, 3.0)
    assert e.segments[-len(pos2.segments):] == pos2.segments
    assert all(e.primitive(t) < 0.0 for t in (-0.01, -0.05, -1.0, -10.0))


def test_extend_left_zero_is_noop_in_values(zero):
    e = extend_left(zero)
    assert e.omega(-3.0) == 0.0 and e.omega(-0.01) == 0.0


def test_extend_left_half_bound():
    d = piecewise_linear([0.0, 1.0], [-0.5, 3.0])
    assert classify(d).label == "III" and d.primitive(1.0) > 0
    e = extend_left(d, half_bound=True)
    sz2 = s0(d) ** 2
    for t in np.linspace(-3.0, 0.0, 61):
        assert sz2 - 2.0 * e.primitive(t) > sz2 / 2.0


def test_extend_left_zero_target_rejected(neg2):
    with pytest.raises(DistributionError):
        extend_left(neg2, 0.0)


def test_boundary_zero_below_ramp(neg2):
    w = 0.25
    e = extend_left(neg2, width=w)
    bz = boundary_zeros(e, "below")
    assert bz.y_zero == pytest.approx(-w)
    # Omega(-w) = w (average of -2 and 0 over the ramp, sign flipped)
    assert bz.s_bound == pytest.approx(math.sqrt(2.0 * e.primitive(-w)))
    assert bz.s_bound == pytest.approx(math.sqrt(2.0 * w))


def test_boundary_zero_above_ramp(pos2):
    e = extend_right(pos2, width=0.3)
    bz = boundary_zeros(e, "above")
    assert bz.y_zero == pytest.approx(1.3)


def test_boundary_zero_positive_left_extension():
    d = constant(2.0, -3.0, 1.0)
    bz = boundary_zeros(d, "below")
    assert bz.y_zero == -math.inf


def test_boundary_zero_needs_extension(neg2):
    with pytest.raises(DistributionError):
        boundary_zeros(neg2, "below")


def test_refined_segmentation_same_values(rng):
    d = random_piecewise_linear(rng)
    r = d.refined(3)
    ts = np.linspace(0.0, 1.0, 41)
    assert np.allclose(r.omega(ts), d.omega(ts), atol=1e-14)
    assert np.allclose(r.primitive(ts), d.primitive(ts), atol=1e-14)
