"""Conformal map of a ring domain onto an annulus q < |w| < 1.

The modulus comes out of the integral-equation solution as q = exp(h2 - h1)
and the capacity is 2 pi / log(1/q).  The map itself is assembled from the
boundary values of an auxiliary analytic function, evaluated inside the
domain with a normalized-ratio Cauchy integral that stays usable close to
the boundary.
"""

from dataclasses import dataclass

import numpy as np

from . import bie
from .bie import BieSolution, KernelContext
from .boundary import RingDomain, winding_number
from .errors import ArgumentError, EvaluationError, GeometryError, SingularityError

__all__ = ["AnnulusMap", "annq", "phi_eval", "phi_boundary", "cauchy_eval", "auto_alpha"]

_THETA_ANNULUS = (0.5 * np.pi, 0.5 * np.pi)


@dataclass(frozen=True)
class AnnulusMap:
    """Solved annulus map: modulus, capacity and boundary data."""

    domain: RingDomain
    context: KernelContext
    solution: BieSolution
    q: float
    capacity: float
    modulus: float
    f_boundary: np.ndarray

    @property
    def n(self) -> int:
        return self.context.n


def _gamma_annulus(domain: RingDomain, eta: np.ndarray) -> np.ndarray:
    if domain.kind == "bounded":
        return -np.log(np.abs((eta - domain.z2) / (domain.alpha - domain.z2)))
    return -np.log(np.abs((eta - domain.z2) / (eta - domain.z1)))


def annq(
    domain: RingDomain,
    n: int = 1024,
    tol: float = 1e-14,
    maxit: int = 100,
    graded: bool = True,
    grading_order: int = 3,
) -> AnnulusMap:
    """Map a ring domain onto an annulus and return modulus and capacity.

    Bounded domains use gamma = -log|(eta - z2)/(alpha - z2)|, unbounded
    ones gamma = -log|(eta - z2)/(eta - z1)|, both with theta1 = theta2 =
    pi/2.  Convergence failures of the linear solver propagate; geometric
    defects (touching components, modulus outside (0,1)) raise
    GeometryError.
    """
    try:
        ctx = bie.build_context(domain, n, theta=_THETA_ANNULUS, graded=graded, grading_order=grading_order)
    except SingularityError as exc:
        raise GeometryError(f"invalid ring domain: {exc}") from exc
    gamma = _gamma_annulus(domain, ctx.eta)
    if not np.all(np.isfinite(gamma)):
        raise GeometryError("auxiliary point lies on a boundary component")
    sol = bie.solve(ctx, gamma, tol=tol, maxit=maxit)
    q = float(np.exp(sol.h2 - sol.h1))
    if not 0.0 < q < 1.0:
        raise GeometryError(f"computed modulus q = {q} outside (0,1); check the geometry")
    capacity = float(2.0 * np.pi / np.log(1.0 / q))
    f_boundary = (gamma + sol.h + 1j * sol.rho) / ctx.avals
    amap = AnnulusMap(
        domain=domain,
        context=ctx,
        solution=sol,
        q=q,
        capacity=capacity,
        modulus=float(np.log(1.0 / q)),
        f_boundary=f_boundary,
    )
    assert abs(amap.capacity * amap.modulus - 2.0 * np.pi) <= 1e-12 * 2.0 * np.pi
    return amap


def cauchy_eval(ctx: KernelContext, boundary_values, points, value_at_infinity=None):
    """Evaluate an analytic function from its boundary values.

    Uses the normalized-ratio form of the discretized Cauchy integral,
    which reproduces constants exactly and cancels the dominant quadrature
    error near the boundary (accuracy still degrades within a few mesh
    spacings of it).  For unbounded domains the value at infinity must be
    supplied; for bounded domains it must be omitted.
    """
    fvals = np.asarray(boundary_values, dtype=complex)
    z = np.atleast_1d(np.asarray(points, dtype=complex))
    unbounded = ctx.domain.kind == "unbounded"
    if unbounded and value_at_infinity is None:
        raise ArgumentError("unbounded domains need value_at_infinity")
    if not unbounded and value_at_infinity is not None:
        raise ArgumentError("value_at_infinity only applies to unbounded domains")

    wetap = ctx.weights * ctx.etap
    diff = ctx.eta[None, :] - z[:, None]
    if np.any(diff == 0):
        raise EvaluationError("evaluation point coincides with a boundary node")
    den = (wetap[None, :] / diff).sum(axis=1)
    num = ((wetap * fvals)[None, :] / diff).sum(axis=1)
    if unbounded:
        finf = complex(value_at_infinity)
        out = finf + (num - finf * den) / (2j * np.pi - den)
    else:
        out = num / den
    if not np.all(np.isfinite(out)):
        raise EvaluationError("Cauchy evaluation produced non-finite values")
    if np.ndim(points) == 0:
        return complex(out[0])
    return out


def _require_interior(ctx: KernelContext, z: np.ndarray):
    """Winding-number screen: points must lie in the open domain."""
    wetap = ctx.weights * ctx.etap
    diff = ctx.eta[None, :] - z[:, None]
    if np.any(diff == 0):
        raise EvaluationError("evaluation point coincides with a boundary node")
    den = (wetap / diff).sum(axis=1) / (2j * np.pi)
    target = 1.0 if ctx.domain.kind == "bounded" else 0.0
    if np.any(np.abs(den - target) > 0.4):
        raise EvaluationError("point outside the domain (or too close to the boundary)")


def phi_boundary(amap: AnnulusMap) -> np.ndarray:
    """Boundary values of the annulus map at the mesh nodes."""
    ctx = amap.context
    dom = amap.domain
    eta = ctx.eta
    e_h1 = np.exp(-amap.solution.h1)
    if dom.kind == "bounded":
        return e_h1 * (eta - dom.z2) / (dom.alpha - dom.z2) * np.exp((eta - dom.alpha) * amap.f_boundary)
    return e_h1 * (eta - dom.z2) / (eta - dom.z1) * np.exp(amap.f_boundary)


def phi_eval(amap: AnnulusMap, points):
    """Evaluate the annulus map at interior points.

    |Phi| lies in (q, 1) inside the domain; Phi(alpha) > 0 for bounded
    domains and Phi(infinity) > 0 for unbounded ones.
    """
    ctx = amap.context
    dom = amap.domain
    z = np.atleast_1d(np.asarray(points, dtype=complex))
    _require_interior(ctx, z)
    if dom.kind == "bounded":
        f = cauchy_eval(ctx, amap.f_boundary, z)
        out = np.exp(-amap.solution.h1) * (z - dom.z2) / (dom.alpha - dom.z2) * np.exp((z - dom.alpha) * f)
    else:
        f = cauchy_eval(ctx, amap.f_boundary, z, value_at_infinity=0.0)
        out = np.exp(-amap.solution.h1) * (z - dom.z2) / (z - dom.z1) * np.exp(f)
    if np.ndim(points) == 0:
        return complex(out[0])
    return out


def auto_alpha(domain: RingDomain, n_grid: int = 14, n_wind: int = 512) -> complex:
    """Deterministic pick of an interior point of a bounded ring domain.

    Scans a grid over gamma1's bounding box, keeps points with winding
    number +1 about gamma1 and 0 about gamma2, and returns the one farthest
    from both boundaries.
    """
    if domain.kind != "bounded":
        raise ArgumentError("auto_alpha applies to bounded domains")
    t = 2.0 * np.pi * (np.arange(n_wind) + 0.5) / n_wind
    s1 = domain.gamma1.eval(t)
    s2 = domain.gamma2.eval(t)
    xs = np.linspace(s1.real.min(), s1.real.max(), n_grid + 2)[1:-1]
    ys = np.linspace(s1.imag.min(), s1.imag.max(), n_grid + 2)[1:-1]
    best, best_score = None, -np.inf
    for x in xs:
        for y in ys:
            c = complex(x, y)
            d = min(np.min(np.abs(s1 - c)), np.min(np.abs(s2 - c)))
            if d <= 0 or d <= best_score:
                continue
            if winding_number(domain.gamma1, c, n=n_wind) != 1:
                continue
            if winding_number(domain.gamma2, c, n=n_wind) != 0:
                continue
            best, best_score = c, d
    if best is None:
        raise GeometryError("could not locate an interior point of the ring domain")
    return best
