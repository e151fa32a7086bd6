"""The elliptic-integral layer underneath the exact oracles.

K and E come from the arithmetic-geometric mean; the ring function
mu(r) = (pi/2) K'(r)/K(r) and its theta-series inverse tie slit-condenser
capacities to closed forms.
"""

import numpy as np

from ringcap.specfun import complete_E, complete_K, incomplete_E, incomplete_F, mu, mu_inv

print("complete elliptic integrals:")
for r in (0.1, 0.5, 1 / np.sqrt(2), 0.9):
    print(f"  r={r:.4f}: K = {complete_K(r):.15f}, E = {complete_E(r):.15f}")

print()
print("the ring function and its inverse:")
print(f"  mu(1/sqrt 2) = {mu(1 / np.sqrt(2)):.16f}  (pi/2 = {np.pi / 2:.16f})")
for r in (0.1, 0.3, 0.7):
    y = mu(r)
    print(f"  mu({r}) = {y:.14f}, mu_inv round trip error {abs(mu_inv(y) - r):.1e}")

print()
print("functional equations (doubling / reciprocal):")
r = 0.37
print(f"  mu(r) - 2 mu(2 sqrt(r)/(1+r)) = {mu(r) - 2 * mu(2 * np.sqrt(r) / (1 + r)):.2e}")
rp = np.sqrt(1 - r * r)
print(f"  mu(r) mu(r') - pi^2/4        = {mu(r) * mu(rp) - np.pi**2 / 4:.2e}")

print()
print("incomplete integrals reach the complete ones at z = 1:")
for k in (0.3, 0.8):
    print(f"  k={k}: F(1,k) - K(k) = {incomplete_F(1.0, k) - complete_K(k):.2e}, "
          f"E(1,k) - E(k) = {incomplete_E(1.0, k) - complete_E(k):.2e}")
