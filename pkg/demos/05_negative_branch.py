"""
Continuing the curve below s = 0
================================

For omega(0) < 0 the near-bed family extends the Bernoulli curve to
negative slopes.  The join at s = 0 is smooth, and profiles keep growing
with s.  A Sturm test reports whether the linearised problem has a
conjugate point.
"""

import math

from wavebounds.bernoulli import disconjugacy, h_negative, monotone_in_s, negative_branch
from wavebounds.stream import depth
from wavebounds.vorticity import build_distribution, constant, extend_left

dist = extend_left(constant(-2.0), width=1.0)
print("h(0) =", depth(dist, 0.0), " h(-1e-9) =", h_negative(dist, -1e-9))
nb = negative_branch(dist)
print("negative branch ends at s' =", nb.s_prime, " r' =", nb.r_prime)
print(monotone_in_s(dist, 0.4, -0.3, 0.2))

kappa = 3.0
stiff = build_distribution([(-20.0, 20.0, [-20.0 * kappa, kappa])])
res = disconjugacy(stiff, 2.0, depth_=4.0)
print("positive:", res.positive, " conjugate point", res.conjugate_point, " pi/sqrt(kappa)", math.pi / math.sqrt(kappa))
