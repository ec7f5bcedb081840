"""End-to-end acceptance checks, one test per criterion.

Each test writes a ``PASS``/``FAIL`` line with its wall time; the lines are
repeated in the terminal summary.  The suite-runtime limit is judged in
``conftest.py`` once the whole session has finished.
"""

import contextlib
import json
import math
import time

import numpy as np
import pytest

from wavebounds import io
from wavebounds.bernoulli import (
    bernoulli_R,
    conjugate_streams,
    critical,
    default_grid,
    disconjugacy,
    h_minus_derivative,
    h_negative,
    is_unimodal,
    monotone_in_s,
    negative_branch,
    r0,
    sample_curve,
)
from wavebounds.bounds import detect_counter_current, synth_stream_field
from wavebounds.cli import main
from wavebounds.counter_current import h_minus, h_plus, verify_lemma1, verify_lemma2
from wavebounds.stream import depth, profile_cauchy, profile_implicit
from wavebounds.testing import random_of_class, random_piecewise_linear
from wavebounds.vorticity import build_distribution, classify, constant, extend_left, extend_right, s0

RESULTS: list[str] = []
SEED = 20261019


@pytest.fixture
def criterion(request):
    reporter = request.config.pluginmanager.get_plugin("terminalreporter")

    @contextlib.contextmanager
    def run(n, title):
        note = {}
        t0 = time.perf_counter()
        ok = False
        try:
            yield note
            ok = True
        finally:
            extra = f" [{note['detail']}]" if "detail" in note else ""
            line = f"{'PASS' if ok else 'FAIL'} criterion {n:>2}: {title} ({time.perf_counter() - t0:.2f} s){extra}"
            RESULTS.append(line)
            if reporter is not None:
                reporter.write_line("")
                reporter.write_line(line)

    return run


def cubic_depths(r):
    # conjugate depths for omega = 0: 2 h^3 - 3 r h^2 + 1 = 0
    roots = np.roots([2.0, -3.0 * r, 0.0, 1.0])
    return sorted(float(z.real) for z in roots if abs(z.imag) < 1e-12 and z.real > 0)


def test_c01_family_closed_forms(criterion):
    with criterion(1, "h_-(1) = (1+sqrt5)/2 and h_+(3) = (3+sqrt5)/2") as note:
        neg, pos = constant(-2.0, -5.0, 5.0), constant(2.0, -5.0, 5.0)
        times = []
        for dist, fn, s, want in ((neg, h_minus, 1.0, (1 + math.sqrt(5)) / 2), (pos, h_plus, 3.0, (3 + math.sqrt(5)) / 2)):
            t0 = time.perf_counter()
            got = fn(dist, s)
            times.append(time.perf_counter() - t0)
            assert abs(got - want) <= 1e-9
        note["detail"] = "times " + ", ".join(f"{t * 1e3:.1f} ms" for t in times)
        assert max(times) < 0.1


def test_c02_profile_closed_forms(criterion):
    with criterion(2, "U(y;1) = y^2+y for omega=-2, U(y;3) = -y^2+3y for omega=2") as note:
        p = profile_cauchy(constant(-2.0, -5.0, 5.0), 1.0, (-2.0, 1.0), 601)
        e1 = np.max(np.abs(p.u_values - (p.y_grid**2 + p.y_grid)))
        q = profile_cauchy(constant(2.0, -5.0, 5.0), 3.0, (-0.5, 3.5), 801)
        e2 = np.max(np.abs(q.u_values - (-q.y_grid**2 + 3.0 * q.y_grid)))
        note["detail"] = f"sup errors {e1:.1e}, {e2:.1e}"
        assert e1 <= 1e-8 and e2 <= 1e-8


def test_c03_irrotational_criticality(criterion):
    with criterion(3, "omega=0: s_c = r_c = 1; conjugate depths at r=1.05 match the cubic") as note:
        z = constant(0.0)
        sc, rc = critical(z)
        # (s^2 + 2/s)/3 has derivative 2(s^3 - 1)/(3 s^2): minimum at s = 1, value 1
        assert abs(sc - 1.0) <= 1e-8 and abs(rc - 1.0) <= 1e-8
        pair = conjugate_streams(z, 1.05)
        lo, hi = cubic_depths(1.05)
        note["detail"] = f"H- err {abs(pair.H_minus - lo):.1e}, H+ err {abs(pair.H_plus - hi):.1e}"
        assert abs(pair.H_minus - lo) <= 1e-8 and abs(pair.H_plus - hi) <= 1e-8


def test_c04_cross_method(criterion):
    with criterion(4, "implicit vs Cauchy on 50 random distributions x 5 slopes") as note:
        rng = np.random.default_rng(SEED)
        worst = worst_energy = 0.0
        t0 = time.perf_counter()
        for _ in range(50):
            d = random_piecewise_linear(rng)
            sz = s0(d)
            for extra in np.sort(rng.uniform(0.02, 3.0, 5)):
                s = sz + float(extra)
                grid = np.linspace(0.0, depth(d, s), 101)
                a = profile_implicit(d, s, grid)
                b = profile_cauchy(d, s, (grid[0], grid[-1]), grid.size)
                worst = max(worst, float(np.max(np.abs(a.u_values - b.u_values))))
                worst_energy = max(worst_energy, float(np.max(np.abs(a.energy_residual(d)))),
                                   float(np.max(np.abs(b.energy_residual(d)))))
        elapsed = time.perf_counter() - t0
        note["detail"] = f"sup diff {worst:.1e}, energy {worst_energy:.1e}"
        assert worst <= 1e-8 and worst_energy <= 1e-8 and elapsed < 30.0


def test_c05_lemma1(criterion):
    with criterion(5, "slope of h_- at 0+ equals -1/omega(0)") as note:
        rep = verify_lemma1(constant(-2.0, -5.0, 5.0))
        errs = [abs(rep.estimate - rep.target) / rep.target]
        assert errs[0] <= 1e-4 and rep.estimate > 0
        rng = np.random.default_rng(SEED + 5)
        for _ in range(10):
            d = extend_left(random_of_class(rng, "II"), width=1.0)
            rep = verify_lemma1(d)
            errs.append(abs(rep.estimate - rep.target) / rep.target)
            assert rep.estimate > 0
            assert errs[-1] <= 1e-3
        note["detail"] = f"closed form {errs[0]:.1e}, random worst {max(errs[1:]):.1e}"


def test_c06_lemma2(criterion):
    with criterion(6, "(h_+ - h0) omega(1)/sqrt(s^2 - s0^2) -> 1 at s - s0 = 1e-4") as note:
        rep = verify_lemma2(constant(2.0, -5.0, 5.0), deltas=(1e-4,))
        ratios = [rep.samples[-1]["ratio"]]
        rng = np.random.default_rng(SEED + 6)
        for _ in range(10):
            d = extend_right(random_of_class(rng, "III"))
            ratios.append(verify_lemma2(d, deltas=(1e-4,)).samples[-1]["ratio"])
        errs = [abs(r - 1.0) for r in ratios]
        note["detail"] = f"closed form {errs[0]:.1e}, random worst {max(errs[1:]):.1e}"
        assert max(errs) <= 1e-2


def test_c07_partition(criterion):
    with criterion(7, "1000 random distributions: one class each, stable under re-segmentation") as note:
        rng = np.random.default_rng(SEED + 7)
        counts = {"I": 0, "II": 0, "III": 0}
        for _ in range(1000):
            d = random_piecewise_linear(rng)
            label = classify(d).label
            counts[label] += 1
            assert classify(d.refined(int(rng.integers(2, 5)))).label == label
        note["detail"] = ", ".join(f"{k}: {v}" for k, v in counts.items())
        assert sum(counts.values()) == 1000


def test_c08_shape(criterion):
    with criterion(8, "h decreasing, R unimodal with r_c > 0, conjugate ordering") as note:
        rng = np.random.default_rng(SEED + 8)
        dists = [constant(0.0), random_of_class(rng, "I"), random_of_class(rng, "II"), random_of_class(rng, "III")]
        for i, d in enumerate(dists):
            n = 10_000 if i < 3 else 2_000
            pts = sample_curve(d, default_grid(d, n)).samples
            h = np.array([p[1] for p in pts])
            R = np.array([p[2] for p in pts])
            assert np.all(np.diff(h) < 0)
            assert is_unimodal(R)
            assert critical(d)[1] > 0
        orderings = 0
        for _ in range(20):
            d = random_piecewise_linear(rng)
            sc, rc = critical(d)
            top = r0(d)
            r_hi = top if math.isfinite(top) else rc + 2.0
            r = rc + float(rng.uniform(0.02, 0.98)) * (r_hi - rc)
            pair = conjugate_streams(d, r)
            assert s0(d) + 1e-12 < pair.s_plus < sc - 1e-12 and sc + 1e-12 < pair.s_minus
            assert pair.H_minus + 1e-12 < pair.H_plus
            orderings += 1
        note["detail"] = f"{len(dists)} curves, {orderings} conjugate pairs"


def test_c09_negative_branch(criterion):
    with criterion(9, "negative branch glues at s = 0; U increases with s on (s', inf)") as note:
        rng = np.random.default_rng(SEED + 9)
        dists = [extend_left(constant(-2.0), width=1.0)] + [extend_left(random_of_class(rng, "II"), width=1.0) for _ in range(4)]
        jumps, checks = [], 0
        for d in dists:
            hz = depth(d, 0.0)
            jumps.append(abs(h_negative(d, -1e-12) - hz))
            assert jumps[-1] <= 1e-9
            for sigma in (1e-6, 1e-4, 1e-2):
                assert -h_minus_derivative(d, sigma) < 0  # dh/ds at s = -sigma
            nb = negative_branch(d)
            lo = max(nb.s_prime, -2.0) if math.isfinite(nb.s_prime) else -2.0
            for _ in range(6):
                s1, s2 = np.sort(rng.uniform(lo * 0.95, 1.0, 2))
                H = min(h_negative(d, s) if s < 0 else depth(d, s) for s in (s1, s2))
                y = float(rng.uniform(0.05, 0.95)) * H
                assert monotone_in_s(d, y, float(s1), float(s2)).holds
                checks += 1
        note["detail"] = f"max jump {max(jumps):.1e}, {checks} monotonicity samples"


def test_c10_disconjugacy(criterion):
    with criterion(10, "mu bound implies positivity; supercritical potential has its conjugate point") as note:
        rng = np.random.default_rng(SEED + 10)
        implied = 0
        for _ in range(50):
            d = random_piecewise_linear(rng)
            res = disconjugacy(d, s0(d) + float(rng.uniform(0.05, 2.0)))
            if res.sufficient_mu_bound:
                assert res.positive
                implied += 1
        kappa = 3.0
        # omega(tau) = kappa (tau - 20) so that omega' = kappa everywhere
        d = build_distribution([(-20.0, 20.0, [-20.0 * kappa, kappa])])
        res = disconjugacy(d, 2.0, depth_=4.0)
        err = abs(res.conjugate_point - math.pi / math.sqrt(kappa))
        note["detail"] = f"{implied}/50 samples under the mu bound, conjugate point error {err:.1e}"
        assert not res.positive and err <= 1e-6


def _check_cli(tmp_path, name, dist_path, field):
    fpath = tmp_path / f"{name}.json"
    fpath.write_text(io.dumps(io.field_to_json(field)))
    out = tmp_path / f"{name}.report.json"
    code = main(["check", "--dist", str(dist_path), "--field", str(fpath), "--out", str(out)])
    return code, json.loads(out.read_text())


def test_c11_bounds_end_to_end(criterion, tmp_path):
    with criterion(11, "bounds checker routes, margins and counter-current location") as note:
        z = constant(0.0)
        paths = {}
        for name, dist in (("zero", z), ("neg", constant(-2.0)), ("pos", constant(2.0))):
            paths[name] = tmp_path / f"{name}.dist.json"
            paths[name].write_text(io.dumps_distribution(dist))

        pair = conjugate_streams(z, 1.05)
        code, rep = _check_cli(tmp_path, "f0", paths["zero"], synth_stream_field(z, pair.s_plus))
        assert code == 0 and rep["routes"] == {"upper": "1", "lower": "2"}
        t1 = next(e for e in rep["entries"] if e["theorem"] == "1")
        a = next(c for c in t1["checks"] if c["name"].startswith("A"))
        assert t1["applicable"] and t1["verdict"] == "holds" and abs(a["margin"] - 0.05) <= 1e-8

        f_minus = synth_stream_field(constant(-2.0, -5.0, 5.0), 0.5, kind="minus")
        code, rep = _check_cli(tmp_path, "fm", paths["neg"], f_minus)
        t3 = next(e for e in rep["entries"] if e["theorem"] == "3")
        assert code == 0 and rep["routes"]["upper"] == "3" and t3["verdict"] == "holds"
        [reg] = detect_counter_current(f_minus)
        cell = f_minus.eta[0] / (f_minus.sigma_grid.size - 1)
        assert reg.tag == "near-bottom" and abs(reg.reversal_level - 0.25) <= cell

        f_plus = synth_stream_field(constant(2.0, -5.0, 5.0), 2.1, kind="plus")
        code, rep = _check_cli(tmp_path, "fp", paths["pos"], f_plus)
        t4 = next(e for e in rep["entries"] if e["theorem"] == "4")
        assert code == 0 and rep["routes"]["lower"] == "4" and t4["verdict"] == "holds"
        [reg2] = detect_counter_current(f_plus)
        cell = f_plus.eta[0] / (f_plus.sigma_grid.size - 1)
        assert reg2.tag == "near-surface" and abs(reg2.reversal_level - 1.05) <= cell
        note["detail"] = f"(A) margin {a['margin']:.10f}, reversal levels {reg.reversal_level:.4f}, {reg2.reversal_level:.4f}"
