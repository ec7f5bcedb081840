"""
The Bernoulli curve
===================

Each stream solution carries a Bernoulli constant R(s).  The curve has a
single minimum r_c; any r above it is shared by two solutions, one
shallower and one deeper.
"""

import numpy as np

from wavebounds.bernoulli import conjugate_streams, critical, default_grid, is_unimodal, sample_curve
from wavebounds.vorticity import constant, piecewise_linear

z = constant(0.0)
print("irrotational: (s_c, r_c) =", critical(z))
pair = conjugate_streams(z, 1.05)
print(f"r = 1.05: H- = {pair.H_minus:.10f}, H+ = {pair.H_plus:.10f}")
roots = np.roots([2.0, -3.0 * 1.05, 0.0, 1.0])
print("positive cubic roots:", sorted(r.real for r in roots if r.real > 0))

dist = piecewise_linear([0.0, 0.5, 1.0], [0.5, 2.0, -1.0])
curve = sample_curve(dist, default_grid(dist, 200))
R = [p[2] for p in curve.samples]
print("constants:", curve.constants())
print("unimodal:", is_unimodal(R))
