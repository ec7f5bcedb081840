"""
Classifying a vorticity distribution
====================================

A distribution is read from JSON, sorted into one of the three classes,
and its monotone stream solutions are tabulated: depth h(s) for slopes
above the threshold s0.
"""

from pathlib import Path

import numpy as np

from wavebounds import io
from wavebounds.stream import depth, h0
from wavebounds.vorticity import classify, s0

DATA = Path(__file__).parent / "data"

for name in ("irrotational", "unit_negative", "unit_positive", "layered"):
    dist = io.load_distribution(DATA / f"{name}.json")
    c = classify(dist)
    print(f"{name:14s} class {c.label:3s} s0 = {s0(dist):.6f}  h0 = {h0(dist):.6f}")

# the depth falls monotonically as the bottom slope grows
dist = io.load_distribution(DATA / "layered.json")
for s in np.linspace(0.25, 3.0, 6):
    print(f"  s = {s:.2f}  h = {depth(dist, s):.10f}")
