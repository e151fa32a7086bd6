"""Hyperbolic and elliptic capacity of compact sets in the unit disk.

caph(E) is the inner radius of the annulus image of the disk minus E;
cape(E) is sqrt(q) for the ring between E and its antipodal set
{-1/conj(a)}.  The two agree exactly when E = -E and otherwise
cape < caph.
"""

import numpy as np

from ringcap import amoeba, circle, ellipse, rectangle, samples_curve
from ringcap.capacity import cape, cape_interval, caph, caph_interval
from ringcap.specfun import mu

print("disk of radius r: both capacities equal r")
for r in (0.2, 0.5, 0.8):
    q = caph(circle(0, r), n=512, alpha=(1 + r) / 2, z2=0.0)
    e = cape(circle(0, r), n=512)
    print(f"  r={r}: caph = {q:.14f}, cape = {e:.14f}")

print()
print("square [-r,r]^2 is symmetric, so the capacities coincide:")
sq = rectangle(-0.5, 0.5, -0.5, 0.5)
print(f"  caph = {caph(sq, n=1024, z2=0.0):.10f}")
print(f"  cape = {cape(sq, n=1024):.10f}")

print()
print("the amoeba region is not symmetric, and cape < caph strictly:")
q = caph(amoeba(), n=1024, alpha=0.0, z2=0.25 + 0.5j)
e = cape(amoeba(), n=1024, z1=0.25 + 0.5j)
print(f"  caph = {q:.15f}")
print(f"  cape = {e:.15f}")

print()
print("interval [0, r]: exact values exp(-mu(r)) and exp(-mu(tau)/2)")
for r in (0.2, 0.5, 0.8):
    tau = r * r / (2 + r * r + 2 * np.sqrt(1 + r * r))
    q = caph_interval(r, n=1024)
    e = cape_interval(r, n=1024)
    print(f"  r={r}: caph err {abs(q - np.exp(-mu(r))):.1e}, cape err {abs(e - np.exp(-0.5 * mu(tau))):.1e}")

print()
print("random star-shaped sets: cape <= caph every time")
rng = np.random.default_rng(5)
t = 2 * np.pi * np.arange(256) / 256
for k in range(5):
    radius = 0.3 + 0.08 * np.cos(3 * t + rng.random()) + 0.05 * np.sin(5 * t + rng.random())
    curve = samples_curve(radius * np.exp(1j * t) + 0.1 * (rng.random() - 0.5))
    q, e = caph(curve, n=256), cape(curve, n=256)
    print(f"  set {k}: caph = {q:.6f}, cape = {e:.6f}, caph - cape = {q - e:.2e}")
