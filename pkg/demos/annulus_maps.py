"""Ring domains with known moduli, and what the annulus map looks like.

Three classical configurations whose capacity has a closed form: concentric
circles, two disjoint circles (via the cross-ratio), and confocal ellipses
(via the Joukowski map).  We solve each one numerically and print the error
against the closed form, then evaluate the conformal map itself.
"""

import numpy as np

from ringcap import RingDomain, annq, circle, confocal_ellipse, phi_boundary, phi_eval
from ringcap.capacity import exact_oracle

# --- concentric annulus: the map is the identity -------------------------
dom = RingDomain(
    gamma1=circle(0, 1.0),
    gamma2=circle(0, 0.5).reversed(),
    kind="bounded",
    alpha=0.75,
    z2=0.0,
)
m = annq(dom, n=256)
print("concentric annulus 0.5 < |z| < 1")
print(f"  q = {m.q:.16f}   (exact 0.5)")
print(f"  cap = {m.capacity:.15f} (exact {2 * np.pi / np.log(2):.15f})")
pts = np.array([0.7, 0.55 + 0.3j, -0.8j])
print(f"  map distortion |Phi(z) - z| at 3 points: {np.max(np.abs(phi_eval(m, pts) - pts)):.2e}")

# --- two circles: modulus from the cross-ratio ---------------------------
for a, r in ((4.0, 1.0), (2.5, 1.0), (6.0, 2.0)):
    dom = RingDomain(
        gamma1=circle(0, 1.0).reversed(),
        gamma2=circle(a, r).reversed(),
        kind="unbounded",
        z1=0.0,
        z2=complex(a),
    )
    m = annq(dom, n=1024)
    want = exact_oracle("two_circles", {"a": a, "r": r})
    print(f"two circles |z|=1, |z-{a}|={r}: cap = {m.capacity:.14f}, rel err {abs(m.capacity - want) / want:.1e}")

# --- confocal ellipses ----------------------------------------------------
r1, r2 = 4.0, 2.0
dom = RingDomain(
    gamma1=confocal_ellipse(r1),
    gamma2=confocal_ellipse(r2).reversed(),
    kind="bounded",
    alpha=((r1 + 1 / r1) + (r2 + 1 / r2)) / 4,
    z2=0.0,
)
m = annq(dom, n=1024)
print(f"confocal ellipses r1={r1}, r2={r2}: cap = {m.capacity:.15f}")
print(f"  exact 2 pi / log(r1/r2) = {2 * np.pi / np.log(r1 / r2):.15f}")

# boundary correspondence: |Phi| is 1 on the outer and q on the inner curve
vals = np.abs(phi_boundary(m))
n = m.n
print(f"  boundary correspondence: max| |Phi|-1 | = {np.max(np.abs(vals[:n] - 1)):.1e}, "
      f"max| |Phi|-q | = {np.max(np.abs(vals[n:] - m.q)):.1e}")
