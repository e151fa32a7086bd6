"""Auxiliary conformal maps for slit, half-plane and strip geometries.

Slit-type condensers are first carried onto ring domains bordered by
Jordan curves: the slit [0,1] opens up into the unit circle through an
inverse Joukowski-type map, half-planes and strips become the unit disk
through a Moebius map and tanh(z/2).  For a strip with an interior slit no
explicit map exists; a fixed-point iteration replaces the slit by a thin
ellipse and adjusts its center and axis until the canonical image of the
ellipse matches the requested slit.
"""

from dataclasses import dataclass, field

import numpy as np

from . import bie
from .annmap import auto_alpha, cauchy_eval
from .boundary import BoundaryCurve, RingDomain, circle, ellipse, similarity_curve, transform_curve
from .errors import ArgumentError, BranchError, ConvergenceError, GeometryError

__all__ = [
    "SlitSpec",
    "PreimageState",
    "StripMap",
    "joukowski",
    "joukowski_inverse",
    "joukowski_inverse_maps",
    "halfplane_to_disk",
    "halfplane_to_disk_maps",
    "strip_to_disk",
    "strip_to_disk_maps",
    "mobius",
    "strip_canonical_map",
    "strip_slit_preimage",
]

HALF_PI = 0.5 * np.pi


@dataclass(frozen=True)
class SlitSpec:
    """A straight slit [a, b] with derived center, length and angle."""

    a: complex
    b: complex

    def __post_init__(self):
        if self.a == self.b:
            raise ArgumentError("slit endpoints must differ")

    @property
    def center(self) -> complex:
        return 0.5 * (self.a + self.b)

    @property
    def length(self) -> float:
        return abs(self.b - self.a)

    @property
    def angle(self) -> float:
        """Inclination against the positive real axis, normalized to [0, pi)."""
        return float(np.angle(self.b - self.a) % np.pi)


# ---------------------------------------------------------------------------
# elementary maps
# ---------------------------------------------------------------------------

def joukowski(zeta):
    """(zeta + 1/zeta)/4 + 1/2: unit disk (and its exterior) onto ext [0,1]."""
    zeta = np.asarray(zeta, dtype=complex)
    return 0.25 * (zeta + 1.0 / zeta) + 0.5

def _slit_distance(z):
    z = np.asarray(z, dtype=complex)
    x, y = z.real, z.imag
    inside = (x >= 0.0) & (x <= 1.0)
    return np.where(inside, np.abs(y), np.minimum(np.abs(z), np.abs(z - 1.0)))


def joukowski_inverse(z):
    """Inverse of the slit-opening map, branch with |zeta| < 1 and sqrt(1)=1.

    The principal square root puts the only branch cut exactly on the
    segment [0,1]; arguments within 1e-14 of it raise BranchError.
    """
    z = np.asarray(z, dtype=complex)
    if np.any(_slit_distance(z) < 1e-14):
        raise BranchError("argument lies on the slit [0,1]")
    w = 2.0 * z - 1.0
    s = np.sqrt(1.0 - 1.0 / (w * w))
    return 1.0 / (w * (1.0 + s))


def joukowski_inverse_maps():
    """(f, f', f'') triple of the inverse slit map for curve transport."""
    f = joukowski_inverse

    def df(z):
        zeta = f(z)
        return 4.0 * zeta**2 / (zeta**2 - 1.0)

    def d2f(z):
        zeta = f(z)
        return -32.0 * zeta**3 / (zeta**2 - 1.0) ** 3

    return f, df, d2f


def halfplane_to_disk(z):
    """(i z + 1)/(z + i): upper half-plane onto the unit disk."""
    z = np.asarray(z, dtype=complex)
    with np.errstate(divide="ignore", invalid="ignore"):
        return (1j * z + 1.0) / (z + 1j)


def halfplane_to_disk_maps():
    f = halfplane_to_disk
    df = lambda z: -2.0 / (np.asarray(z, dtype=complex) + 1j) ** 2
    d2f = lambda z: 4.0 / (np.asarray(z, dtype=complex) + 1j) ** 3
    return f, df, d2f


def strip_to_disk(z):
    """tanh(z/2): strip |Im z| < pi/2 onto the unit disk."""
    return np.tanh(0.5 * np.asarray(z, dtype=complex))


def strip_to_disk_maps():
    f = strip_to_disk

    def df(z):
        w = f(z)
        return 0.5 * (1.0 - w * w)

    def d2f(z):
        w = f(z)
        return -0.5 * w * (1.0 - w * w)

    return f, df, d2f


def mobius(z, coeffs):
    """(a z + b)/(c z + d); poles map to the infinity sentinel."""
    a, b, c, d = (complex(v) for v in coeffs)
    z = np.asarray(z, dtype=complex)
    with np.errstate(divide="ignore", invalid="ignore"):
        return (a * z + b) / (c * z + d)


# ---------------------------------------------------------------------------
# trigonometric interpolation utilities (equidistant periodic samples)
# ---------------------------------------------------------------------------

def _trig_coeffs(vals):
    n = len(vals)
    c = np.fft.fft(vals) / n
    k = np.fft.fftfreq(n, d=1.0 / n)
    nyq = n // 2
    c_nyq = c[nyq]
    c = c.copy()
    c[nyq] = 0.0
    return c, k, nyq, c_nyq


def _trig_eval(coeffs, t, order=0):
    c, k, nyq, c_nyq = coeffs
    t = np.atleast_1d(np.asarray(t, dtype=float))
    out = np.exp(1j * np.outer(t, k)) @ (c * (1j * k) ** order)
    if order == 0:
        out = out + c_nyq * np.cos(nyq * t)
    elif order == 1:
        out = out - c_nyq * nyq * np.sin(nyq * t)
    elif order == 2:
        out = out - c_nyq * nyq**2 * np.cos(nyq * t)
    return out


def _refine_extremum(coeffs, t0, h):
    """Newton on the interpolant's derivative, clamped to one mesh cell."""
    t = float(t0)
    for _ in range(50):
        d1 = float(np.real(_trig_eval(coeffs, t, order=1)[0]))
        d2 = float(np.real(_trig_eval(coeffs, t, order=2)[0]))
        if d2 == 0.0:
            break
        step = -d1 / d2
        step = float(np.clip(step, -h, h))
        t += step
        if abs(step) < 1e-15:
            break
    return t


# ---------------------------------------------------------------------------
# strip-with-slit canonical map
# ---------------------------------------------------------------------------

def _psi_strip(zeta):
    """log((1+zeta)/(1-zeta)): unit disk onto the strip |Im| < pi/2."""
    zeta = np.asarray(zeta, dtype=complex)
    return np.log((1.0 + zeta) / (1.0 - zeta))


@dataclass(frozen=True)
class StripMap:
    """Canonical map of a circle/Jordan-curve ring onto the slit strip."""

    context: object
    solution: object
    f_boundary: np.ndarray
    c0: complex
    theta2: float
    slit: SlitSpec
    straightness: float
    phi1: np.ndarray
    phi2: np.ndarray

    def phi(self, points):
        """Evaluate the canonical map at interior points."""
        z = np.atleast_1d(np.asarray(points, dtype=complex))
        f = cauchy_eval(self.context, self.f_boundary, z)
        alpha = self.context.domain.alpha
        out = self.c0 + (z - alpha) * f + _psi_strip(z)
        if np.ndim(points) == 0:
            return complex(out[0])
        return out


def strip_canonical_map(
    domain: RingDomain,
    theta2: float,
    n: int = 2048,
    tol: float = 1e-14,
    maxit: int = 100,
    straightness_factor: float = 1e3,
) -> StripMap:
    """Map a ring inside the unit circle onto the strip with one slit.

    gamma1 must be the unit circle; gamma2 a smooth Jordan curve strictly
    inside avoiding +-1.  The image of gamma1 is the pair of lines
    Im = +-pi/2 (fixing Phi(1) = +inf, Phi(i) = i pi/2, Phi(-1) = -inf);
    gamma2 goes onto a straight slit of inclination theta2 whose center and
    length are read off from the extremal projections of the image.
    """
    if domain.kind != "bounded":
        raise ArgumentError("the strip map needs a bounded ring domain")
    if n % 4:
        raise ArgumentError("n must be a multiple of 4 so the node t = pi/2 exists")
    probe = domain.gamma1.eval(np.array([0.3, 1.7, 4.1]))
    if np.max(np.abs(np.abs(probe) - 1.0)) > 1e-12:
        raise ArgumentError("gamma1 must be the unit circle")

    ctx = bie.build_context(domain, n, theta=(0.0, float(theta2)), graded=False)
    gamma = np.concatenate(
        [
            np.zeros(n),
            np.imag(np.exp(-1j * theta2) * _psi_strip(ctx.eta[n:])),
        ]
    )
    sol = bie.solve(ctx, gamma, tol=tol, maxit=maxit)
    f_b = (gamma + sol.h + 1j * sol.rho) / ctx.avals

    alpha = domain.alpha
    f_i = f_b[n // 4]  # boundary node t = pi/2 on the circle, i.e. zeta = i
    c0 = -(1j - alpha) * f_i

    eta2 = ctx.eta[n:]
    phi2 = c0 + (eta2 - alpha) * f_b[n:] + _psi_strip(eta2)
    with np.errstate(divide="ignore", invalid="ignore"):
        phi1 = c0 + (ctx.eta[:n] - alpha) * f_b[:n] + _psi_strip(ctx.eta[:n])

    rot = np.exp(-1j * theta2)
    line_offsets = np.imag(rot * phi2)
    straightness = float(np.max(np.abs(line_offsets - np.median(line_offsets))))
    if straightness > straightness_factor * tol * max(1.0, float(np.max(np.abs(phi2)))):
        raise GeometryError(
            f"slit image is not straight (residual {straightness:.3e}); "
            "auxiliary-function convention or resolution is off"
        )

    proj = np.real(rot * phi2)
    h = 2.0 * np.pi / n
    coeffs = _trig_coeffs(proj)
    t_hi = _refine_extremum(coeffs, ctx.mesh2.nodes[int(np.argmax(proj))], h)
    t_lo = _refine_extremum(coeffs, ctx.mesh2.nodes[int(np.argmin(proj))], h)
    phi_coeffs = _trig_coeffs(phi2)
    e_hi = complex(_trig_eval(phi_coeffs, t_hi)[0])
    e_lo = complex(_trig_eval(phi_coeffs, t_lo)[0])
    slit = SlitSpec(a=e_lo, b=e_hi)

    return StripMap(
        context=ctx,
        solution=sol,
        f_boundary=f_b,
        c0=c0,
        theta2=float(theta2),
        slit=slit,
        straightness=straightness,
        phi1=phi1,
        phi2=phi2,
    )


# ---------------------------------------------------------------------------
# preimage iteration
# ---------------------------------------------------------------------------

@dataclass
class PreimageState:
    """Progress record of the slit-to-ellipse preimage iteration."""

    iteration: int
    center: complex
    axis: float
    aspect: float
    converged: bool
    error: float
    history: list = field(default_factory=list)


def _hat_ellipse(center: complex, axis: float, aspect: float, theta2: float) -> BoundaryCurve:
    """Thin ellipse around the slit line, clockwise, in strip coordinates."""
    base = ellipse(0.0, 0.5 * axis, 0.5 * axis * aspect).reversed()
    return similarity_curve(base, np.exp(1j * theta2), center)


def _strip_domain_for(center, axis, aspect, theta2, alpha=None):
    f, df, d2f = strip_to_disk_maps()
    hat = _hat_ellipse(center, axis, aspect, theta2)
    tmax = np.max(np.abs(hat.eval(2.0 * np.pi * np.arange(720) / 720).imag))
    if tmax >= HALF_PI:
        raise GeometryError("ellipse iterate exits the strip |Im z| < pi/2")
    gamma2 = transform_curve(hat, f, df, d2f)
    dom = RingDomain(
        gamma1=circle(0.0, 1.0),
        gamma2=gamma2,
        kind="bounded",
        alpha=alpha if alpha is not None else 0.0,
        z2=complex(strip_to_disk(center)),
    )
    if alpha is None:
        dom = RingDomain(
            gamma1=dom.gamma1,
            gamma2=dom.gamma2,
            kind="bounded",
            alpha=auto_alpha(dom),
            z2=dom.z2,
        )
    return dom


def strip_slit_preimage(
    target: SlitSpec,
    aspect: float = 0.3,
    n: int = 2048,
    eps: float = 1e-14,
    max_iter: int = 100,
    tol: float = 1e-14,
    maxit: int = 100,
):
    """Find a Jordan-curve ring conformally equivalent to the slit strip.

    The slit is replaced by a thin ellipse (minor/major ratio ``aspect``)
    whose tanh(z/2)-image borders a ring inside the unit circle; the
    canonical map of that ring produces a slit whose center and length are
    compared with the target, and the ellipse parameters are corrected
    until the combined mismatch drops below ``eps``.

    Returns (domain, state); raises ConvergenceError with the recorded
    history if ``max_iter`` is exhausted.
    """
    if not isinstance(target, SlitSpec):
        target = SlitSpec(*target)
    if max(abs(target.a.imag), abs(target.b.imag)) >= HALF_PI:
        raise GeometryError("slit endpoints must lie strictly inside the strip")
    if not 0.0 < aspect <= 1.0:
        raise ArgumentError("aspect ratio must lie in (0, 1]")

    theta2 = target.angle
    center = target.center
    length = target.length
    z_hat = center
    axis = (1.0 - 0.5 * aspect) * length
    alpha = None
    history = []
    err = np.inf

    for k in range(1, max_iter + 1):
        dom = _strip_domain_for(z_hat, axis, aspect, theta2, alpha=alpha)
        alpha = dom.alpha
        smap = strip_canonical_map(dom, theta2, n=n, tol=tol, maxit=maxit)
        c_k = smap.slit.center
        l_k = smap.slit.length
        history.append((c_k, l_k))
        err = abs(c_k - center) + abs(l_k - length)
        if err < eps:
            return dom, PreimageState(
                iteration=k,
                center=z_hat,
                axis=axis,
                aspect=aspect,
                converged=True,
                error=err,
                history=history,
            )
        z_hat = z_hat - (c_k - center)
        axis = axis - (1.0 - 0.5 * aspect) * (l_k - length)
        if axis <= 0.0:
            raise GeometryError("ellipse axis collapsed during the iteration")

    raise ConvergenceError(
        f"preimage iteration did not reach {eps} in {max_iter} steps (error {err:.3e})",
        residual=err,
        history=history,
    )
