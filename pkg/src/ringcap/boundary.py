"""Parametrized boundary curves, meshes, and the shape catalog.

A curve is a triple of vectorized callables (position, first and second
derivative) on [0, 2pi], plus corner markers.  Curves are immutable;
geometric operations (reversal, conformal transformation, corner grading)
return new curves, so any node count can be meshed without re-specifying
geometry.
"""

from dataclasses import dataclass, replace
from typing import Callable, Optional

import numpy as np

from .errors import ArgumentError, GeometryError

__all__ = [
    "BoundaryCurve",
    "RingDomain",
    "Mesh",
    "mesh_equidistant",
    "mesh_graded",
    "grade_curve",
    "shape",
    "circle",
    "ellipse",
    "confocal_ellipse",
    "polygon",
    "regular_polygon",
    "rectangle",
    "amoeba",
    "samples_curve",
    "transform_curve",
    "winding_number",
    "domain_from_dict",
]

TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class BoundaryCurve:
    """A 2pi-periodic Jordan curve with analytic derivatives.

    Fields
    ------
    eval, deriv, deriv2 : callables mapping parameter arrays to complex
        position, velocity and acceleration.
    corners : sorted parameter values where the velocity jumps (empty for
        smooth curves).  Corner angles must exclude cusps.
    orientation : "outer" for counterclockwise traversal of the enclosed
        region, "inner" for clockwise.
    """

    eval: Callable[[np.ndarray], np.ndarray]
    deriv: Callable[[np.ndarray], np.ndarray]
    deriv2: Callable[[np.ndarray], np.ndarray]
    corners: tuple = ()
    orientation: str = "outer"
    graded: bool = False

    def reversed(self) -> "BoundaryCurve":
        """Same point set traversed in the opposite direction."""
        ev, dv, dv2 = self.eval, self.deriv, self.deriv2
        corners = tuple(sorted((TWO_PI - c) % TWO_PI for c in self.corners))
        flip = "inner" if self.orientation == "outer" else "outer"
        return BoundaryCurve(
            eval=lambda t: ev(TWO_PI - np.asarray(t, dtype=float)),
            deriv=lambda t: -dv(TWO_PI - np.asarray(t, dtype=float)),
            deriv2=lambda t: dv2(TWO_PI - np.asarray(t, dtype=float)),
            corners=corners,
            orientation=flip,
            graded=self.graded,
        )

    def oriented(self, orientation: str) -> "BoundaryCurve":
        return self if self.orientation == orientation else self.reversed()


def transform_curve(curve: BoundaryCurve, f, df, d2f) -> BoundaryCurve:
    """Push a curve through a conformal map with known derivatives.

    eta -> f(eta), with chain-rule velocity f'(eta) eta' and acceleration
    f''(eta) eta'^2 + f'(eta) eta''.  Corners are preserved (conformal maps
    keep angles).
    """
    ev, dv, dv2 = curve.eval, curve.deriv, curve.deriv2

    def new_eval(t):
        return f(ev(t))

    def new_deriv(t):
        return df(ev(t)) * dv(t)

    def new_deriv2(t):
        z = ev(t)
        zp = dv(t)
        return d2f(z) * zp * zp + df(z) * dv2(t)

    return replace(curve, eval=new_eval, deriv=new_deriv, deriv2=new_deriv2)


def similarity_curve(curve: BoundaryCurve, a: complex, b: complex) -> BoundaryCurve:
    """The image of a curve under z -> a z + b."""
    return transform_curve(
        curve,
        lambda z: a * z + b,
        lambda z: a * np.ones_like(z),
        lambda z: np.zeros_like(z),
    )


@dataclass(frozen=True)
class RingDomain:
    """A doubly connected domain bounded by two Jordan curves.

    For a bounded domain gamma2 lies inside gamma1, ``alpha`` is a point of
    the domain and ``z2`` a point enclosed by gamma2.  For an unbounded
    domain both complementary components are bounded and ``z1``/``z2`` are
    points inside them.  Orientation convention: the domain lies on the
    left of each oriented component.
    """

    gamma1: BoundaryCurve
    gamma2: BoundaryCurve
    kind: str
    alpha: Optional[complex] = None
    z1: Optional[complex] = None
    z2: Optional[complex] = None

    def __post_init__(self):
        if self.kind not in ("bounded", "unbounded"):
            raise ArgumentError(f"kind must be 'bounded' or 'unbounded', got {self.kind!r}")
        if self.kind == "bounded":
            if self.alpha is None or self.z2 is None:
                raise ArgumentError("bounded ring domains require alpha and z2")
        else:
            if self.z1 is None or self.z2 is None:
                raise ArgumentError("unbounded ring domains require z1 and z2")

    def transformed(self, f, df, d2f, kind: Optional[str] = None) -> "RingDomain":
        fz = lambda z: complex(f(np.asarray(z, dtype=complex)))
        return RingDomain(
            gamma1=transform_curve(self.gamma1, f, df, d2f),
            gamma2=transform_curve(self.gamma2, f, df, d2f),
            kind=kind or self.kind,
            alpha=None if self.alpha is None else fz(self.alpha),
            z1=None if self.z1 is None else fz(self.z1),
            z2=None if self.z2 is None else fz(self.z2),
        )

    def similar(self, a: complex, b: complex) -> "RingDomain":
        """Apply the similarity z -> a z + b to all geometry and points."""
        mv = lambda z: None if z is None else a * z + b
        return RingDomain(
            gamma1=similarity_curve(self.gamma1, a, b),
            gamma2=similarity_curve(self.gamma2, a, b),
            kind=self.kind,
            alpha=mv(self.alpha),
            z1=mv(self.z1),
            z2=mv(self.z2),
        )


# ---------------------------------------------------------------------------
# meshes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Mesh:
    """Quadrature nodes and weights for one parameter interval [0, 2pi]."""

    n: int
    nodes: np.ndarray
    weights: np.ndarray
    kind: str

    def __post_init__(self):
        if self.n % 2:
            raise ArgumentError(f"node count must be even, got {self.n}")


def mesh_equidistant(n: int) -> Mesh:
    """Uniform nodes t_j = 2 pi j / n with the trapezoidal weights 2 pi / n."""
    if n % 2 or n < 8:
        raise ArgumentError(f"need an even node count >= 8, got {n}")
    t = TWO_PI * np.arange(n) / n
    w = np.full(n, TWO_PI / n)
    return Mesh(n=n, nodes=t, weights=w, kind="equidistant")


def mesh_offset_uniform(n: int) -> Mesh:
    """Uniform midpoint nodes t_j = (j + 1/2) 2 pi / n (never hit corners)."""
    if n % 2 or n < 8:
        raise ArgumentError(f"need an even node count >= 8, got {n}")
    t = TWO_PI * (np.arange(n) + 0.5) / n
    w = np.full(n, TWO_PI / n)
    return Mesh(n=n, nodes=t, weights=w, kind="equidistant")


def _grading_w(theta, p):
    """Substitution w(theta) = theta^p / (theta^p + (1-theta)^p) on [0,1]."""
    theta = np.asarray(theta, dtype=float)
    u = theta**p
    v = (1.0 - theta) ** p
    return u / (u + v)


def _grading_wp(theta, p):
    theta = np.asarray(theta, dtype=float)
    u = theta**p
    v = (1.0 - theta) ** p
    return p * theta ** (p - 1) * (1.0 - theta) ** (p - 1) / (u + v) ** 2


def _grading_wpp(theta, p):
    theta = np.asarray(theta, dtype=float)
    u = theta**p
    v = (1.0 - theta) ** p
    d = u + v
    a = p * (p - 1) * theta ** (p - 2) * (1.0 - theta) ** (p - 2) * (1.0 - 2.0 * theta) / d**2
    b = (
        2.0
        * p**2
        * theta ** (p - 1)
        * (1.0 - theta) ** (p - 1)
        * (p * theta ** (p - 1) - p * (1.0 - theta) ** (p - 1))
        / d**3
    )
    return a - b


def _corner_arcs(corners):
    """Consecutive corner-to-corner parameter arcs, last one wrapping."""
    c = np.asarray(sorted(corners), dtype=float)
    starts = c
    ends = np.append(c[1:], c[0] + TWO_PI)
    return starts, ends


def _grading_maps(corners, p):
    """Global reparametrization sigma -> t clustering nodes at corners.

    Each of the m corner arcs occupies an equal sigma-interval of length
    2 pi / m; inside an arc the substitution _grading_w is applied, so the
    first p-1 derivatives of t(sigma) vanish at every corner.
    """
    starts, ends = _corner_arcs(corners)
    m = len(starts)
    span = TWO_PI / m

    def g(sigma):
        sigma = np.mod(np.asarray(sigma, dtype=float), TWO_PI)
        idx = np.minimum((sigma / span).astype(int), m - 1)
        theta = sigma / span - idx
        return starts[idx] + (ends[idx] - starts[idx]) * _grading_w(theta, p)

    def gp(sigma):
        sigma = np.mod(np.asarray(sigma, dtype=float), TWO_PI)
        idx = np.minimum((sigma / span).astype(int), m - 1)
        theta = sigma / span - idx
        return (ends[idx] - starts[idx]) * _grading_wp(theta, p) / span

    def gpp(sigma):
        sigma = np.mod(np.asarray(sigma, dtype=float), TWO_PI)
        idx = np.minimum((sigma / span).astype(int), m - 1)
        theta = sigma / span - idx
        return (ends[idx] - starts[idx]) * _grading_wpp(theta, p) / span**2

    return g, gp, gpp


def grade_curve(curve: BoundaryCurve, p: int = 3) -> BoundaryCurve:
    """Reparametrize a cornered curve so derivative jumps are suppressed.

    The returned curve traverses the same point set; its velocity vanishes
    to order p-1 at the (former) corner parameters, so uniform-grid
    machinery applies.  Mesh it with midpoint-offset nodes to avoid the
    zero-velocity points.
    """
    if not curve.corners:
        raise ArgumentError("grade_curve requires a curve with corners")
    g, gp, gpp = _grading_maps(curve.corners, p)
    ev, dv, dv2 = curve.eval, curve.deriv, curve.deriv2
    m = len(curve.corners)
    sigma_corners = tuple(TWO_PI * k / m for k in range(m))

    def new_eval(s):
        return ev(g(s))

    def new_deriv(s):
        return dv(g(s)) * gp(s)

    def new_deriv2(s):
        t = g(s)
        return dv2(t) * gp(s) ** 2 + dv(t) * gpp(s)

    return BoundaryCurve(
        eval=new_eval,
        deriv=new_deriv,
        deriv2=new_deriv2,
        corners=sigma_corners,
        orientation=curve.orientation,
        graded=True,
    )


def mesh_graded(curve: BoundaryCurve, n: int, p: int = 3) -> Mesh:
    """Corner-graded nodes with the substitution Jacobian as weights.

    On each corner-to-corner arc the nodes are images of midpoint-equidistant
    points under the order-p grading substitution; weights carry the
    Jacobian, so plain weighted sums approximate integrals dt.
    """
    if not curve.corners:
        raise ArgumentError("mesh_graded requires a curve with corners")
    m = len(curve.corners)
    if n % m:
        raise ArgumentError(f"n = {n} must be a multiple of the corner count {m}")
    if n % 2 or n < 8:
        raise ArgumentError(f"need an even node count >= 8, got {n}")
    g, gp, _ = _grading_maps(curve.corners, p)
    sigma = TWO_PI * (np.arange(n) + 0.5) / n
    h = TWO_PI / n
    return Mesh(n=n, nodes=g(sigma), weights=h * gp(sigma), kind="graded")


# ---------------------------------------------------------------------------
# shape catalog
# ---------------------------------------------------------------------------

def circle(center: complex = 0.0, radius: float = 1.0) -> BoundaryCurve:
    """Counterclockwise circle."""
    if radius <= 0:
        raise ArgumentError(f"radius must be positive, got {radius}")
    c = complex(center)

    return BoundaryCurve(
        eval=lambda t: c + radius * np.exp(1j * np.asarray(t, dtype=float)),
        deriv=lambda t: 1j * radius * np.exp(1j * np.asarray(t, dtype=float)),
        deriv2=lambda t: -radius * np.exp(1j * np.asarray(t, dtype=float)),
    )


def ellipse(center: complex = 0.0, semi_x: float = 1.0, semi_y: float = 1.0) -> BoundaryCurve:
    """Counterclockwise axis-aligned ellipse center + a cos t + i b sin t."""
    if semi_x <= 0 or semi_y <= 0:
        raise ArgumentError("ellipse semi-axes must be positive")
    c = complex(center)
    a, b = float(semi_x), float(semi_y)

    def ev(t):
        t = np.asarray(t, dtype=float)
        return c + a * np.cos(t) + 1j * b * np.sin(t)

    def dv(t):
        t = np.asarray(t, dtype=float)
        return -a * np.sin(t) + 1j * b * np.cos(t)

    def dv2(t):
        t = np.asarray(t, dtype=float)
        return -a * np.cos(t) - 1j * b * np.sin(t)

    return BoundaryCurve(eval=ev, deriv=dv, deriv2=dv2)


def confocal_ellipse(r: float) -> BoundaryCurve:
    """Image of the circle |zeta| = r under (zeta + 1/zeta)/2, r > 1, ccw."""
    if r <= 1.0:
        raise ArgumentError(f"confocal ellipse needs r > 1, got {r}")

    def ev(t):
        e = np.exp(1j * np.asarray(t, dtype=float))
        return 0.5 * (r * e + 1.0 / (r * e))

    def dv(t):
        e = np.exp(1j * np.asarray(t, dtype=float))
        return 0.5j * (r * e - 1.0 / (r * e))

    def dv2(t):
        e = np.exp(1j * np.asarray(t, dtype=float))
        return -0.5 * (r * e + 1.0 / (r * e))

    return BoundaryCurve(eval=ev, deriv=dv, deriv2=dv2)


def polygon(vertices) -> BoundaryCurve:
    """Closed polyline through the given complex vertices (as ordered).

    Each side occupies an equal parameter span, so the corners sit at the
    exact rational multiples 2 pi k / m.
    """
    v = np.asarray(vertices, dtype=complex)
    m = len(v)
    if m < 3:
        raise ArgumentError("a polygon needs at least 3 vertices")
    vn = np.roll(v, -1)
    span = TWO_PI / m

    def side_index(t):
        t = np.mod(np.asarray(t, dtype=float), TWO_PI)
        return np.minimum((t / span).astype(int), m - 1), t

    def ev(t):
        idx, t = side_index(t)
        theta = t / span - idx
        return v[idx] + theta * (vn[idx] - v[idx])

    def dv(t):
        idx, _ = side_index(t)
        return (vn[idx] - v[idx]) / span

    def dv2(t):
        idx, _ = side_index(t)
        return np.zeros_like(v[idx])

    corners = tuple(TWO_PI * k / m for k in range(m))
    return BoundaryCurve(eval=ev, deriv=dv, deriv2=dv2, corners=corners)


def regular_polygon(m: int, scale: float = 1.0, center: complex = 0.0) -> BoundaryCurve:
    """Regular m-gon with vertices scale * exp(2 pi i k / m) + center (ccw)."""
    if m < 3:
        raise ArgumentError(f"polygon needs m >= 3 vertices, got {m}")
    if scale <= 0:
        raise ArgumentError("scale must be positive")
    verts = center + scale * np.exp(2j * np.pi * np.arange(m) / m)
    return polygon(verts)


def rectangle(x0: float, x1: float, y0: float, y1: float) -> BoundaryCurve:
    """Axis-aligned rectangle [x0,x1] x [y0,y1], counterclockwise."""
    if not (x1 > x0 and y1 > y0):
        raise ArgumentError("rectangle needs x1 > x0 and y1 > y0")
    return polygon([x0 + 1j * y0, x1 + 1j * y0, x1 + 1j * y1, x0 + 1j * y1])


def amoeba() -> BoundaryCurve:
    """The amoeba-shaped curve 0.1+0.6i + 0.2 g(t) e^{-it} (clockwise).

    g(t) = e^{cos t} cos^2 2t + e^{sin t} sin^2 2t.
    """
    z0 = 0.1 + 0.6j

    def parts(t):
        t = np.asarray(t, dtype=float)
        ec, es = np.exp(np.cos(t)), np.exp(np.sin(t))
        c2, s2 = np.cos(2 * t) ** 2, np.sin(2 * t) ** 2
        s4 = np.sin(4 * t)
        return t, ec, es, c2, s2, s4

    def ev(t):
        t, ec, es, c2, s2, _ = parts(t)
        return z0 + 0.2 * (ec * c2 + es * s2) * np.exp(-1j * t)

    def dv(t):
        t, ec, es, c2, s2, s4 = parts(t)
        g = ec * c2 + es * s2
        gp = ec * (-np.sin(t) * c2 - 2 * s4) + es * (np.cos(t) * s2 + 2 * s4)
        return 0.2 * (gp - 1j * g) * np.exp(-1j * t)

    def dv2(t):
        t, ec, es, c2, s2, s4 = parts(t)
        c4 = np.cos(4 * t)
        g = ec * c2 + es * s2
        gp = ec * (-np.sin(t) * c2 - 2 * s4) + es * (np.cos(t) * s2 + 2 * s4)
        gpp = ec * ((np.sin(t) ** 2 - np.cos(t)) * c2 + 4 * np.sin(t) * s4 - 8 * c4) + es * (
            (np.cos(t) ** 2 - np.sin(t)) * s2 + 4 * np.cos(t) * s4 + 8 * c4
        )
        return 0.2 * (gpp - 2j * gp - g) * np.exp(-1j * t)

    return BoundaryCurve(eval=ev, deriv=dv, deriv2=dv2, orientation="inner")


def samples_curve(points) -> BoundaryCurve:
    """Curve through equidistant samples, derivatives by trigonometric interpolation.

    ``points`` are complex positions at t_k = 2 pi k / N; N must be even.
    Exact for trigonometric polynomials of degree < N/2.
    """
    f = np.asarray(points, dtype=complex)
    n = len(f)
    if n < 8 or n % 2:
        raise ArgumentError("samples_curve needs an even number >= 8 of samples")
    coef = np.fft.fft(f) / n
    freq = np.fft.fftfreq(n, d=1.0 / n)  # 0, 1, ..., n/2-1, -n/2, ...
    # symmetric Nyquist: represent the +-n/2 bin as cos((n/2) t)
    nyq = n // 2
    c_nyq = coef[nyq]
    coef = coef.copy()
    coef[nyq] = 0.0

    def _eval_series(t, order):
        t = np.atleast_1d(np.asarray(t, dtype=float))
        phases = np.exp(1j * np.outer(t, freq))
        fac = (1j * freq) ** order
        vals = phases @ (coef * fac)
        if order == 0:
            vals = vals + c_nyq * np.cos(nyq * t)
        elif order == 1:
            vals = vals - c_nyq * nyq * np.sin(nyq * t)
        else:
            vals = vals - c_nyq * nyq**2 * np.cos(nyq * t)
        return vals

    return BoundaryCurve(
        eval=lambda t: _eval_series(t, 0),
        deriv=lambda t: _eval_series(t, 1),
        deriv2=lambda t: _eval_series(t, 2),
    )


_SHAPE_BUILDERS = {
    "circle": lambda p: circle(_cplx(p.get("center", 0.0)), p["radius"]),
    "ellipse": lambda p: ellipse(_cplx(p.get("center", 0.0)), p["semi_x"], p["semi_y"]),
    "polygon": lambda p: (
        polygon([_cplx(v) for v in p["vertices"]])
        if "vertices" in p
        else regular_polygon(p["m"], p.get("scale", 1.0), _cplx(p.get("center", 0.0)))
    ),
    "rectangle": lambda p: rectangle(p["x"][0], p["x"][1], p["y"][0], p["y"][1]),
    "amoeba": lambda p: amoeba(),
    "samples": lambda p: samples_curve([_cplx(v) for v in p["points"]]),
}


def _cplx(v) -> complex:
    """Accept [x, y] pairs or plain numbers."""
    if isinstance(v, (list, tuple)):
        return complex(v[0], v[1])
    return complex(v)


def shape(kind: str, **params) -> BoundaryCurve:
    """Catalog constructor dispatching on the shape kind."""
    try:
        builder = _SHAPE_BUILDERS[kind]
    except KeyError:
        raise ArgumentError(f"unknown shape kind {kind!r}") from None
    return builder(params)


# ---------------------------------------------------------------------------
# orientation and geometry input
# ---------------------------------------------------------------------------

def winding_number(curve: BoundaryCurve, z: complex, n: int = 2048) -> int:
    """Winding number about z by the discretized argument principle."""
    t = TWO_PI * (np.arange(n) + 0.5) / n
    vals = curve.deriv(t) / (curve.eval(t) - z)
    w = np.sum(vals) * (TWO_PI / n) / (2j * np.pi)
    wr = float(np.real(w))
    if not np.isfinite(wr):
        raise GeometryError("winding-number quadrature hit the curve")
    return int(np.rint(wr))


def _interior_probe(curve: BoundaryCurve, n: int = 512) -> complex:
    """A point enclosed by the curve (vertex centroid; fine for catalog shapes)."""
    t = TWO_PI * (np.arange(n) + 0.5) / n
    return complex(np.mean(curve.eval(t)))


def domain_from_dict(data: dict) -> RingDomain:
    """Build a RingDomain from the geometry JSON schema.

    Expects ``{"kind": ..., "gamma1": {...}, "gamma2": {...}}`` plus the
    auxiliary points required by the kind.  Component orientation is fixed
    automatically: the domain must lie on the left of each curve.
    """
    kind = data["kind"]
    if kind not in ("bounded", "unbounded"):
        raise ArgumentError(f"geometry kind must be bounded|unbounded, got {kind!r}")
    curves = []
    for key in ("gamma1", "gamma2"):
        spec_ = dict(data[key])
        curves.append(shape(spec_.pop("type"), **spec_))
    g1, g2 = curves

    def orient(curve, want_ccw):
        probe = _interior_probe(curve)
        w = winding_number(curve, probe)
        if w == 0:
            raise GeometryError("cannot determine component orientation")
        ccw = w > 0
        fixed = curve if ccw == want_ccw else curve.reversed()
        return replace(fixed, orientation="outer" if want_ccw else "inner")

    if kind == "bounded":
        g1 = orient(g1, True)
        g2 = orient(g2, False)
    else:
        g1 = orient(g1, False)
        g2 = orient(g2, False)

    def opt(key):
        return _cplx(data[key]) if key in data else None

    return RingDomain(gamma1=g1, gamma2=g2, kind=kind, alpha=opt("alpha"), z1=opt("z1"), z2=opt("z2"))
