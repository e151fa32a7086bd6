"""Corner domains: graded versus equidistant meshes.

The density of the integral equation has power singularities at corners, so
the plain trapezoidal rule converges slowly.  Grading the mesh (a polynomial
substitution whose derivatives vanish at the corners) restores fast
convergence.  The square-in-square condenser has a closed form through the
ring function mu, which makes the comparison quantitative.
"""

import time

import numpy as np

from ringcap import annq
from ringcap.capacity import FAMILIES, cap_family, exact_oracle

a = 0.5
want = exact_oracle("square_in_square", {"a": a})
dom = FAMILIES["square_in_square"].builder({"a": a})
print(f"square in square, a = {a}; exact capacity {want:.13f}")
print(f"{'n':>6} {'equidistant':>14} {'graded p=4':>14}")
for n in (512, 1024, 2048):
    m_eq = annq(dom, n=n, graded=False, tol=1e-12)
    m_gr = annq(dom, n=n, grading_order=4, tol=1e-12)
    print(f"{n:6d} {abs(m_eq.capacity - want) / want:14.2e} {abs(m_gr.capacity - want) / want:14.2e}")

print()
print("whole sweep at n = 4096 (graded):")
for aa in (0.1, 0.3, 0.5, 0.7, 0.9):
    t0 = time.time()
    rep = cap_family("square_in_square", {"a": aa}, n=4096, tol=1e-12, compare_oracle=True)
    print(f"  a={aa}: cap = {rep.value:.12f}  rel err {rep.rel_error:.1e}  ({time.time() - t0:.1f}s)")

print()
print("polygon in polygon (inner vertices at half the radius):")
print("capacity decreases toward the annulus value 2 pi / log 2 = 9.064720283654 as m grows")
for m in (3, 4, 5, 9, 15, 30):
    rep = cap_family("polygon_in_polygon", {"m": m}, tol=1e-12)
    print(f"  m={m:2d}: cap = {rep.value:.10f}")
