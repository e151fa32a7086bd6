"""Complete and incomplete elliptic integrals and the ring function mu.

The complete integrals K and E are evaluated by the arithmetic-geometric
mean iteration, which converges quadratically and is uniformly accurate on
(0,1).  The decreasing homeomorphism mu(r) = (pi/2) K(r')/K(r) and its
inverse (theta-series seed plus a short Newton polish) connect slit-domain
capacities to elliptic integrals.
"""

from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from .errors import DomainError

__all__ = [
    "EllipticArg",
    "complete_K",
    "complete_E",
    "mu",
    "mu_inv",
    "incomplete_F",
    "incomplete_E",
]

# Switch to the Landen-type descent formulas close to the endpoints, where
# forming r' = sqrt(1 - r^2) directly would shed digits.
_MU_LO = 1e-3
_MU_HI = 1.0 - 1e-3

# Theta series terms below this threshold no longer move a double.
_THETA_CUTOFF = 1e-17

# Below this argument the inverse is computed through the reflection
# mu(r) mu(r') = pi^2/4; the nome exp(-2y) is then comfortably small again.
_MU_INV_REFLECT = 0.3


@dataclass(frozen=True)
class EllipticArg:
    """A modulus r in (0,1) together with its complementary modulus."""

    r: float
    rprime: float

    @classmethod
    def from_modulus(cls, r: float) -> "EllipticArg":
        r = float(r)
        if not 0.0 < r < 1.0:
            raise DomainError(f"modulus must lie in (0,1), got {r}")
        # (1-r)(1+r) keeps full precision for r near 1
        return cls(r, np.sqrt((1.0 - r) * (1.0 + r)))


def _agm_sums(r: float, rprime: float):
    """AGM iteration; returns (common limit a, sum of 2^(n-1) c_n^2).

    Terminates when c reaches the rounding floor of a (further steps cannot
    move a double); the iteration cap only guards against stagnation.
    """
    a, b, c = 1.0, rprime, r
    s = 0.5 * c * c
    pw = 0.5
    for _ in range(64):
        if abs(c) <= 4e-17 * a:
            break
        a, b, c = 0.5 * (a + b), np.sqrt(a * b), 0.5 * (a - b)
        pw *= 2.0
        s += pw * c * c
    return a, s


def complete_K(r: float) -> float:
    """Complete elliptic integral of the first kind, modulus convention.

    Parameters
    ----------
    r : float
        Modulus in the open interval (0,1).

    Returns
    -------
    float
        K(r), strictly increasing in r, relative accuracy ~1e-15.
    """
    arg = EllipticArg.from_modulus(r)
    a, _ = _agm_sums(arg.r, arg.rprime)
    return float(np.pi / (2.0 * a))


def complete_E(r: float) -> float:
    """Complete elliptic integral of the second kind (modulus convention)."""
    arg = EllipticArg.from_modulus(r)
    a, s = _agm_sums(arg.r, arg.rprime)
    k_val = np.pi / (2.0 * a)
    return float(k_val * (1.0 - s))


def _mu_core(r: float) -> float:
    arg = EllipticArg.from_modulus(r)
    a_k, _ = _agm_sums(arg.r, arg.rprime)
    a_kp, _ = _agm_sums(arg.rprime, arg.r)
    # mu = (pi/2) K(r')/K(r) = (pi/2) a_k / a_kp
    return float(0.5 * np.pi * a_k / a_kp)


def mu(r: float) -> float:
    """The decreasing homeomorphism (pi/2) K(r')/K(r) of (0,1) onto (0,inf).

    Near the endpoints the argument is first moved inward with the
    doubling/halving identities, so the result stays accurate for r down
    to the underflow threshold and up to 1 - 1e-16.
    """
    r = float(r)
    if not 0.0 < r < 1.0:
        raise DomainError(f"mu requires r in (0,1), got {r}")
    if r < _MU_LO:
        return 2.0 * _mu_core(2.0 * np.sqrt(r) / (1.0 + r))
    if r > _MU_HI:
        rp = np.sqrt((1.0 - r) * (1.0 + r))
        return 0.5 * _mu_core((1.0 - rp) / (1.0 + rp))
    return _mu_core(r)


def _mu_prime(r: float) -> float:
    """d mu / d r = -pi^2 / (4 r (1-r^2) K(r)^2)."""
    kr = complete_K(r)
    return -np.pi**2 / (4.0 * r * (1.0 - r * r) * kr * kr)


def _theta_ratio_squared(q: float) -> float:
    """(theta2(0,q)/theta3(0,q))^2 with series truncated below 1e-17."""
    th2 = 0.0
    n = 0
    while True:
        term = q ** ((n + 0.5) ** 2)
        th2 += term
        if term < _THETA_CUTOFF:
            break
        n += 1
    th2 *= 2.0
    th3 = 1.0
    n = 1
    while True:
        term = q ** (n * n)
        th3 += 2.0 * term
        if term < _THETA_CUTOFF:
            break
        n += 1
    return (th2 / th3) ** 2


def mu_inv(y: float) -> float:
    """Inverse of mu: the r in (0,1) with mu(r) = y.

    The seed comes from the theta-function representation with nome
    q = exp(-2y); up to five Newton corrections against mu polish it to
    |mu(r) - y| <= 1e-13 max(1, y).  Small arguments are routed through
    the reflection mu(r) mu(r') = pi^2/4 so the nome stays small.
    """
    y = float(y)
    if not y > 0.0:
        raise DomainError(f"mu_inv requires y > 0, got {y}")
    if y < _MU_INV_REFLECT:
        u = mu_inv(np.pi**2 / (4.0 * y))
        return float(np.sqrt((1.0 - u) * (1.0 + u)))
    q = np.exp(-2.0 * y)
    r = _theta_ratio_squared(q)
    for _ in range(5):
        if not 0.0 < r < 1.0:
            break
        step = (mu(r) - y) / _mu_prime(r)
        r_new = r - step
        if not 0.0 < r_new < 1.0:
            r_new = 0.5 * (r + (0.0 if step > 0 else 1.0))
        r = r_new
        if abs(step) <= 1e-16 * max(r, 1e-300):
            break
    return float(r)


def _check_incomplete_args(z: float, k: float):
    if not 0.0 <= z <= 1.0:
        raise DomainError(f"incomplete integral requires z in [0,1], got {z}")
    if not 0.0 < k < 1.0:
        raise DomainError(f"incomplete integral requires k in (0,1), got {k}")


def incomplete_F(z: float, k: float) -> float:
    """Legendre incomplete integral of the first kind F(z, k).

    Defined as the integral of 1/sqrt((1-w^2)(1-k^2 w^2)) from 0 to z.
    The substitution w = sin(phi) removes the endpoint singularity and the
    smooth integrand is handled by adaptive quadrature.
    """
    _check_incomplete_args(z, k)
    if z == 0.0:
        return 0.0
    phi1 = np.arcsin(z)
    k2 = k * k
    val, _ = quad(
        lambda phi: 1.0 / np.sqrt(1.0 - k2 * np.sin(phi) ** 2),
        0.0,
        phi1,
        epsabs=1e-14,
        epsrel=1e-13,
        limit=200,
    )
    return float(val)


def incomplete_E(z: float, k: float) -> float:
    """Legendre incomplete integral of the second kind E(z, k)."""
    _check_incomplete_args(z, k)
    if z == 0.0:
        return 0.0
    phi1 = np.arcsin(z)
    k2 = k * k
    val, _ = quad(
        lambda phi: np.sqrt(1.0 - k2 * np.sin(phi) ** 2),
        0.0,
        phi1,
        epsabs=1e-14,
        epsrel=1e-13,
        limit=200,
    )
    return float(val)
