"""Condensers with a straight slit as one plate.

A slit is not a Jordan curve, so the solver cannot see it directly; the
inverse Joukowski-type map opens the segment [0,1] into the unit circle and
carries the rest of the geometry inside the disk.  Exact values exist for
the slit-and-circle and slit-and-ellipse pairs, which brackets the
slit-and-polygon family.
"""

import numpy as np

from ringcap import joukowski, joukowski_inverse
from ringcap.capacity import cap_family, exact_oracle

# the slit-opening map in action
z = np.array([2.0 + 1j, -1.5 + 0.2j, 0.5 + 2j])
zeta = joukowski_inverse(z)
print("slit-opening map: z -> zeta with |zeta| < 1, round trip error:")
for zz, zt in zip(z, zeta):
    print(f"  z={zz:+.3f}  zeta={zt:+.5f}  |zeta|={abs(zt):.4f}  |round trip|={abs(joukowski(zt) - zz):.1e}")

print()
print("segment [0,1] and circle |z-a| = r:")
for r, a in ((0.1, 1.2), (1.0, 2.1), (5.0, 6.1)):
    rep = cap_family("segment_circle", {"a": a, "r": r}, n=2048, compare_oracle=True)
    print(f"  r={r}, a={a}: cap = {rep.value:.14f}  rel err {rep.rel_error:.1e}")

print()
print("segment [0,1] and the ellipse around [c,d], growing from slit to disk:")
c, d = 1.5, 3.5
b = (d - c) / 2
print(f"  r -> 0 limit (two segments): {exact_oracle('two_segments', {'c': c, 'd': d}):.12f}")
for r in (0.2, 0.5, 0.8, 1.0):
    rep = cap_family("segment_ellipse", {"c": c, "d": d, "r": r}, n=1024, compare_oracle=True)
    print(f"  r={r}: cap = {rep.value:.12f}  rel err {rep.rel_error:.1e}")
print(f"  r = b gives the circle case: {exact_oracle('segment_circle', {'a': (c + d) / 2, 'r': b}):.12f}")

print()
print("segment and regular polygon (capacity grows toward the circle value):")
for m in (3, 8, 16):
    rep = cap_family("segment_polygon", {"a": 2.1, "r": 1.0, "m": m}, n=m * 256, tol=1e-12)
    print(f"  m={m:2d}: cap = {rep.value:.10f}")
print(f"  circle:  cap = {exact_oracle('segment_circle', {'a': 2.1, 'r': 1.0}):.10f}")
