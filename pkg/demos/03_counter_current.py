"""
Flows with a reversed layer
===========================

Past the monotone range the stream solution turns around.  Reflecting it
about the turning level gives families with a counter-current: near the
bed when omega(0) < 0, under the surface when omega(1) > 0.
"""

import math

from wavebounds.counter_current import family_minus, family_plus, verify_lemma1, verify_lemma2
from wavebounds.vorticity import constant

neg = constant(-2.0, -5.0, 5.0)
fam = family_minus(neg, 1.0, 11)
print("near-bed family, s = 1:  depth", fam.depth, " golden ratio", (1 + math.sqrt(5)) / 2)
print("  velocity reverses at y =", fam.stationary_point)
for y, u in zip(fam.profile.y_grid, fam.profile.u_values):
    print(f"    y = {y:.4f}  u = {u:+.6f}")

pos = constant(2.0, -5.0, 5.0)
fam = family_plus(pos, 3.0, 5)
print("near-surface family, s = 3:  depth", fam.depth, " expected", (3 + math.sqrt(5)) / 2)

# depths approach h0 from above, linearly on one side and like a square root on the other
print(verify_lemma1(neg).to_json()["estimate"], "vs -1/omega(0) = 0.5")
for row in verify_lemma2(pos).samples:
    print(f"  s - s0 = {row['delta']:.0e}  ratio = {row['ratio']:.6f}")
