"""
Checking surface bounds on a wave field
=======================================

A field is a stream function sampled on (x, sigma) with sigma = y / eta(x).
The checker compares the surface extremes with h0 and runs the matching
bounds.  Stream solutions land exactly on the bounds; a large
perturbation breaks them.
"""

from wavebounds.bernoulli import conjugate_streams
from wavebounds.bounds import check_all, detect_counter_current, synth_perturbed_field, synth_stream_field
from wavebounds.vorticity import constant

z = constant(0.0)
pair = conjugate_streams(z, 1.05)
rep = check_all(synth_stream_field(z, pair.s_plus), z)
print("routes:", rep.routes)
for e in rep.entries:
    print(f"  {e.theorem:3s} applicable={e.applicable!s:5s} {e.verdict:12s} margin={e.margin:.3e}")

field = synth_stream_field(constant(-2.0, -5.0, 5.0), 0.5, kind="minus")
for region in detect_counter_current(field):
    print("counter-current:", region.tag, "reversal near y =", round(region.reversal_level, 4))

bad = synth_perturbed_field(z, 2.0, 0.2, 1.0)
print("perturbed field, bound above:", check_all(bad, z).entry("1").verdict)
