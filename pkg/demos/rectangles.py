"""Thin-rectangle condensers in the plane, the half-plane and the strip.

As the half-thickness d shrinks, each family tends to a slit condenser
whose capacity has a closed form; the two-rectangle slit limit needs a
root solve over complete and incomplete elliptic integrals.  A reflection
symmetry ties the horizontal half-plane rectangle to the two-rectangle
configuration.
"""

from ringcap.capacity import cap_family, exact_oracle

print("rectangle [0,1] x [-d,d] in the strip |Im z| < pi/2:")
print(f"  slit limit (d=0): {exact_oracle('rect_strip', {'d': 0.0}):.14f}")
for d in (0.4, 0.2, 0.1, 0.05, 0.005):
    rep = cap_family("rect_strip", {"d": d}, n=2048, tol=1e-12)
    print(f"  d={d}: cap = {rep.value:.12f}")

print()
print("two rectangles mirrored across the real axis:")
print(f"  slit limit (d=0): {exact_oracle('rect_pair', {'d': 0.0}):.16f}")
for d in (0.4, 0.2, 0.1, 0.01):
    rep = cap_family("rect_pair", {"d": d}, n=2048, tol=1e-12)
    print(f"  d={d}: cap = {rep.value:.12f}")

print()
print("vertical rectangle in the upper half-plane:")
print(f"  slit limit (d=0): {exact_oracle('rect_halfplane_vertical', {'d': 0.0}):.14f}")
for d in (0.4, 0.1, 0.01):
    rep = cap_family("rect_halfplane_vertical", {"d": d}, n=2048, tol=1e-12)
    print(f"  d={d}: cap = {rep.value:.12f}")

print()
print("horizontal rectangle in the half-plane = 2 x the two-rectangle value:")
for d in (0.2, 0.1):
    horiz = cap_family("rect_halfplane_horizontal", {"d": d}, n=4096, tol=1e-12).value
    pair = cap_family("rect_pair", {"d": d}, n=4096, tol=1e-12).value
    print(f"  d={d}: half of horizontal = {horiz / 2:.10f}, pair = {pair:.10f}, "
          f"rel diff {abs(horiz / 2 - pair) / pair:.1e}")
