"""Random vorticity distributions for property tests and demos."""

from __future__ import annotations

import numpy as np

from .vorticity import VorticityDistribution, classify, extend_left, extend_right, piecewise_linear


def random_piecewise_linear(rng: np.random.Generator, n_knots: int | None = None, amp: float = 3.0,
                            ends: tuple[float, float] | None = None) -> VorticityDistribution:
    """Continuous piecewise-linear omega on [0, 1] with random interior knots.

    ``ends`` pins ``omega(0)`` and ``omega(1)``.
    """
    n = int(rng.integers(2, 7)) if n_knots is None else n_knots
    inner = np.sort(rng.uniform(0.05, 0.95, n - 2))
    knots = np.concatenate([[0.0], inner, [1.0]])
    # keep knots apart so segments are not degenerate
    if np.any(np.diff(knots) < 1e-3):
        knots = np.linspace(0.0, 1.0, n)
    vals = rng.uniform(-amp, amp, n)
    if ends is not None:
        vals[0], vals[-1] = ends
    return piecewise_linear(list(knots), list(vals))


def random_of_class(rng: np.random.Generator, label: str, *, max_tries: int = 10000, **kw) -> VorticityDistribution:
    """Rejection-sample a distribution of the given class.

    End values are drawn away from zero so that the class is decided with
    room to spare: ``omega(0) <= -0.5`` for II, ``omega(1) >= 0.5`` and
    ``Omega(1) >= 0.1`` for III.
    """
    for _ in range(max_tries):
        if label == "II":
            d = random_piecewise_linear(rng, ends=(rng.uniform(-3.0, -0.5), rng.uniform(-3.0, 3.0)), **kw)
            if classify(d).label == "II" and classify(d).warning is None:
                return d
        elif label == "III":
            d = random_piecewise_linear(rng, ends=(rng.uniform(-3.0, 3.0), rng.uniform(0.5, 3.0)), **kw)
            c = classify(d)
            if c.label == "III" and c.warning is None and d.primitive(1.0) >= 0.1:
                return d
        else:
            d = random_piecewise_linear(rng, **kw)
            if classify(d).label == label:
                return d
    raise RuntimeError(f"no class {label} sample in {max_tries} tries")


def with_tails(dist: VorticityDistribution, width: float = 0.5) -> VorticityDistribution:
    """Ramps to zero on both sides, then zero: the domain becomes the whole line."""
    return extend_left(extend_right(dist, width=width), width=width)
