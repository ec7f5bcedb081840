"""
Stream profiles two ways
========================

U(y; s) solves U'' + omega(U) = 0 with U(0) = 0 and U'(0) = s.  On the
monotone branch it can also be read off the inverse map
y(U) = int_0^U dt / sqrt(s^2 - 2 Omega(t)).  The two routes agree.
"""

import numpy as np

from wavebounds.stream import depth, profile_cauchy, profile_implicit
from wavebounds.vorticity import constant, piecewise_linear

# omega = -2: U(y; 1) = y^2 + y in closed form
p = profile_cauchy(constant(-2.0, -5.0, 5.0), 1.0, (-2.0, 1.0), 7)
for y, u in zip(p.y_grid, p.u_values):
    print(f"y = {y:+.2f}  U = {u:+.12f}  y^2 + y = {y * y + y:+.12f}")

dist = piecewise_linear([0.0, 0.4, 1.0], [1.0, -1.5, 0.5])
s = 2.0
grid = np.linspace(0.0, depth(dist, s), 41)
a = profile_implicit(dist, s, grid)
b = profile_cauchy(dist, s, (0.0, grid[-1]), grid.size)
print("kind:", a.kind)
print("largest difference between the two methods:", np.max(np.abs(a.u_values - b.u_values)))
print("largest energy residual:", np.max(np.abs(b.energy_residual(dist))))
