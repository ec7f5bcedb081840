import math

import numpy as np
import pytest

from wavebounds.counter_current import (
    FamilyError,
    family_minus,
    family_plus,
    h_minus,
    h_plus,
    richardson,
    u_minus,
    verify_lemma1,
    verify_lemma2,
)
from wavebounds.stream import h0
from wavebounds.testing import random_of_class
from wavebounds.vorticity import constant, extend_left, extend_right

from conftest import GOLDEN


def h_minus_closed(s):
    return (s + math.sqrt(s * s + 4.0)) / 2.0


def h_plus_closed(s):
    return (s + math.sqrt(s * s - 4.0)) / 2.0


def test_h_minus_golden_ratio(neg2_wide):
    assert h_minus(neg2_wide, 1.0) == pytest.approx(GOLDEN, abs=1e-9)


def test_h_plus_at_three(pos2_wide):
    assert h_plus(pos2_wide, 3.0) == pytest.approx((3.0 + math.sqrt(5.0)) / 2.0, abs=1e-9)


def test_h_minus_at_zero_is_h0(neg2_wide):
    assert h_minus(neg2_wide, 0.0) == pytest.approx(1.0, abs=1e-12)


def test_h_plus_at_s0_is_h0(pos2_wide):
    assert h_plus(pos2_wide, 2.0) == pytest.approx(1.0, abs=1e-9)


@pytest.mark.parametrize("s", [0.1, 0.5, 1.5, 3.0])
def test_h_minus_closed_form(neg2_wide, s):
    assert h_minus(neg2_wide, s) == pytest.approx(h_minus_closed(s), rel=1e-11)


@pytest.mark.parametrize("s", [2.01, 2.5, 3.5])
def test_h_plus_closed_form(pos2_wide, s):
    assert h_plus(pos2_wide, s) == pytest.approx(h_plus_closed(s), rel=1e-11)


def test_family_minus_profile(neg2_wide):
    fam = family_minus(neg2_wide, 1.0, 201)
    y = fam.profile.y_grid
    assert np.max(np.abs(fam.profile.u_values - (y * y - y))) <= 1e-9
    assert fam.stationary_point == pytest.approx(0.5, abs=1e-12)
    assert fam.extreme_value == pytest.approx(-0.25, abs=1e-14)
    assert fam.profile.kind == "single_min"


def test_family_plus_profile(pos2_wide):
    fam = family_plus(pos2_wide, 3.0, 201)
    y = fam.profile.y_grid
    assert np.max(np.abs(fam.profile.u_values - (-y * y + 3.0 * y))) <= 1e-9
    assert fam.stationary_point == pytest.approx(1.5, abs=1e-12)
    assert fam.profile.kind == "single_max"


def test_family_class_mismatch(pos2_wide, neg2_wide):
    with pytest.raises(FamilyError):
        family_minus(pos2_wide, 1.0)
    with pytest.raises(FamilyError):
        family_plus(neg2_wide, 3.0)


def test_family_minus_guard_at_upper_bound():
    e = extend_left(constant(-2.0), width=0.5)
    # s^> = sqrt(2 Omega(-0.5)) = 1
    with pytest.raises(FamilyError):
        family_minus(e, 1.0 - 1e-10)
    family_minus(e, 0.9)


def test_family_plus_below_s0(pos2_wide):
    with pytest.raises(FamilyError):
        family_plus(pos2_wide, 1.9)


def _sign_changes(a):
    sg = np.sign(a)
    sg = sg[sg != 0]
    return np.nonzero(np.diff(sg))[0].size, sg


def test_family_signatures_random(rng):
    for _ in range(5):
        d = extend_left(random_of_class(rng, "II"), width=1.0)
        fam = family_minus(d, 0.05, 301)
        p = fam.profile
        assert abs(p.u_values[0]) <= 1e-9 and abs(p.u_values[-1] - 1.0) <= 1e-9
        n, sg = _sign_changes(p.u_prime)
        assert n == 1 and sg[0] < 0
        assert fam.depth > h0(d)
    for _ in range(5):
        d = extend_right(random_of_class(rng, "III"), width=1.0)
        fam = family_plus(d, 1.0001 * (math.sqrt(2 * d.primitive(1.0))), 301)
        p = fam.profile
        assert abs(p.u_values[0]) <= 1e-9 and abs(p.u_values[-1] - 1.0) <= 1e-9
        n, sg = _sign_changes(p.u_prime)
        assert n == 1 and sg[0] > 0
        assert fam.depth > h0(d)


def test_u_minus_comparison_example(neg2_wide):
    y = np.linspace(0.0, 1.0, 51)[1:]
    assert np.all(u_minus(neg2_wide, 0.0, y) > u_minus(neg2_wide, 0.5, y))
    assert np.allclose(u_minus(neg2_wide, 0.5, y), y * y - 0.5 * y, atol=1e-10)


def test_richardson_removes_linear_term():
    vals = [2.0 + 3.0 * 0.1 * 2.0**-k + 5.0 * (0.1 * 2.0**-k) ** 2 for k in range(4)]
    assert richardson(vals)[-1][0] == pytest.approx(2.0, abs=1e-12)


def test_lemma1_closed_form(neg2_wide):
    rep = verify_lemma1(neg2_wide)
    assert rep.target == 0.5
    assert abs(rep.estimate - 0.5) / 0.5 <= 1e-4
    assert rep.passed and rep.notes["comparison_checked"]
    js = rep.to_json()
    assert {"samples", "estimate", "target", "order"} <= set(js)


def test_lemma1_wrong_class(pos2_wide):
    with pytest.raises(FamilyError):
        verify_lemma1(pos2_wide)


def test_lemma2_closed_form(pos2_wide):
    rep = verify_lemma2(pos2_wide)
    assert abs(rep.estimate - 1.0) <= 1e-2
    assert rep.notes["coefficient_form"] == "unverifiable"
    # s = 2.0001: within 2 percent
    row = [r for r in rep.samples if r["delta"] == 1e-4][0]
    assert abs(row["ratio"] - 1.0) <= 0.02


def test_lemma2_ratio_closed_form_oracle():
    # (h_+(s) - 1) * 2 / sqrt(s^2 - 4) with the closed form, evaluated independently
    s = 2.0001
    ratio = (h_plus_closed(s) - 1.0) * 2.0 / math.sqrt(s * s - 4.0)
    assert abs(ratio - 1.0) < 0.02
    assert h_plus(constant(2.0, -5.0, 5.0), s) == pytest.approx(h_plus_closed(s), rel=1e-10)


def test_lemma2_rejects_degenerate(pos2_wide):
    with pytest.raises(FamilyError):
        verify_lemma2(pos2_wide, deltas=(0.0,))


def test_lemma1_comparison_random(rng):
    for _ in range(20):
        d = extend_left(random_of_class(rng, "II"), width=1.0)
        rep = verify_lemma1(d, levels=3, ny=201)
        assert rep.estimate > 0
        if rep.notes["comparison_checked"]:
            assert rep.notes["comparison_margin"] > 0
