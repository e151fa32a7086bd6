"""Nystrom discretization and solution of (I - N) rho = -M gamma.

The integral equation couples two kernels built from the boundary
parametrization and an auxiliary function A: a continuous one (N, taken
with Im) and a singular one (M, taken with Re) whose singular part is the
periodic cotangent.  The discrete operators are applied matrix-free: kernel
entries are recomputed on the fly row by row, so memory stays O(n).

On smooth components the cotangent convolution is applied spectrally.  On
corner-graded components the parametrization speed vanishes at corners, so
the cotangent is split off in the original (regular) parameter instead and
regularized by value subtraction; the two pieces combine into one fused
per-pair term.

Row loops are compiled with numba and parallelized over rows; the inner
summation is sequential left-to-right, so results do not depend on the
thread count.
"""

from dataclasses import dataclass

import numpy as np
from numba import njit, prange
from scipy.spatial import cKDTree

from .boundary import (
    Mesh,
    RingDomain,
    _grading_maps,
    mesh_equidistant,
    mesh_offset_uniform,
)
from .errors import ArgumentError, ConvergenceError, SingularityError

__all__ = [
    "KernelContext",
    "BieSolution",
    "build_context",
    "kernel_N",
    "apply_N",
    "apply_M",
    "assemble_dense_N",
    "solve",
    "gmres",
]

_INV_PI = 1.0 / np.pi
_TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class KernelContext:
    """Precomputed node data for the discretized operators on 2n nodes."""

    domain: RingDomain
    n: int
    theta: tuple
    mesh1: Mesh
    mesh2: Mesh
    nodes: np.ndarray       # (2n,) solver parameter values (uniform per component)
    tvals: np.ndarray       # (2n,) original curve parameters (= nodes when ungraded)
    weights: np.ndarray     # (2n,) quadrature weights in the solver parameter
    wt: np.ndarray          # (2n,) weights transported to the original parameter
    eta: np.ndarray         # (2n,) complex positions
    etap: np.ndarray        # (2n,) complex velocities (solver parameter)
    etapp: np.ndarray       # (2n,) complex accelerations (solver parameter)
    avals: np.ndarray       # (2n,) complex A(t)
    col: np.ndarray         # (2n,) complex (1/pi) w eta' / A  (column factors)
    diag_n: np.ndarray      # (2n,) diagonal limit of N
    diag_wm: np.ndarray     # (2n,) weighted diagonal of the smooth part of M
    cot_table: np.ndarray   # (n,) weighted cotangent window (uniform grids)
    graded: tuple           # (bool, bool) per component
    floor2: float           # squared node-collision floor for kernel sums
    uniform: bool = True


def _component_data(curve, n, graded, p):
    """Nodes, original parameters and grading Jacobians for one component."""
    if curve.corners and graded:
        if n % len(curve.corners):
            raise ArgumentError(
                f"n = {n} must be a multiple of the corner count {len(curve.corners)}"
            )
        mesh = mesh_offset_uniform(n)
        g, gp, gpp = _grading_maps(curve.corners, p)
        sigma = mesh.nodes
        t = g(sigma)
        return mesh, t, gp(sigma), gpp(sigma), True
    mesh = mesh_equidistant(n)
    t = mesh.nodes
    return mesh, t, np.ones(n), np.zeros(n), False


def build_context(
    domain: RingDomain,
    n: int,
    theta=(0.5 * np.pi, 0.5 * np.pi),
    graded: bool = True,
    grading_order: int = 3,
) -> KernelContext:
    """Discretize a ring domain on n nodes per boundary component.

    Cornered components are corner-graded (order ``grading_order``) unless
    ``graded`` is False, in which case the plain equidistant rule is used.
    """
    comps = []
    for curve in (domain.gamma1, domain.gamma2):
        mesh, t, gp, gpp, is_graded = _component_data(curve, n, graded, grading_order)
        eta = curve.eval(t)
        etap_t = curve.deriv(t)
        etapp_t = curve.deriv2(t)
        # velocities in the solver parameter carry the grading Jacobian
        etap = etap_t * gp
        etapp = etapp_t * gp**2 + etap_t * gpp
        comps.append((mesh, t, gp, gpp, eta, etap, etapp, is_graded))

    mesh1, mesh2 = comps[0][0], comps[1][0]
    nodes = np.concatenate([mesh1.nodes, mesh2.nodes])
    tvals = np.concatenate([comps[0][1], comps[1][1]])
    gp_all = np.concatenate([comps[0][2], comps[1][2]])
    gpp_all = np.concatenate([comps[0][3], comps[1][3]])
    eta = np.concatenate([comps[0][4], comps[1][4]])
    etap = np.concatenate([comps[0][5], comps[1][5]])
    etapp = np.concatenate([comps[0][6], comps[1][6]])
    graded_flags = (comps[0][7], comps[1][7])
    weights = np.concatenate([mesh1.weights, mesh2.weights])
    wt = weights * gp_all

    th1, th2 = theta
    pref = np.concatenate(
        [
            np.full(n, np.exp(1j * (0.5 * np.pi - th1))),
            np.full(n, np.exp(1j * (0.5 * np.pi - th2))),
        ]
    )
    if domain.kind == "bounded":
        avals = pref * (eta - domain.alpha)
        a_log_deriv = etap / (eta - domain.alpha)
    else:
        avals = pref
        a_log_deriv = np.zeros_like(etap)

    ratio = etapp / (2.0 * etap) - a_log_deriv
    diag_n = _INV_PI * np.imag(ratio)
    # weighted M1 diagonal; on graded components the original-parameter
    # diagonal differs by the (real) reparametrization term G''/(2 G')
    diag_wm = weights * _INV_PI * (np.real(ratio) - gpp_all / (2.0 * gp_all))
    col = _INV_PI * weights * etap / avals

    for name, arr in (("A", avals), ("eta'", etap)):
        if not np.all(np.isfinite(arr)) or np.any(arr == 0):
            raise SingularityError(f"non-finite or vanishing {name} at a node")
    if not (np.all(np.isfinite(diag_n)) and np.all(np.isfinite(diag_wm))):
        raise SingularityError("non-finite kernel diagonal")

    pts2 = np.column_stack([eta[n:].real, eta[n:].imag])
    dist, _ = cKDTree(pts2).query(np.column_stack([eta[:n].real, eta[:n].imag]), k=1)
    scale = float(np.max(np.abs(eta)))
    if np.min(dist) <= 1e-12 * max(scale, 1.0):
        raise SingularityError("boundary components touch or intersect")

    h = _TWO_PI / n
    d = np.arange(n, dtype=float)
    with np.errstate(divide="ignore"):
        cot_table = (h / _TWO_PI) / np.tan(0.5 * d * h)
    cot_table[0] = 0.0  # the j == i term is excluded from the window

    return KernelContext(
        domain=domain,
        n=n,
        theta=(float(th1), float(th2)),
        mesh1=mesh1,
        mesh2=mesh2,
        nodes=nodes,
        tvals=tvals,
        weights=weights,
        wt=wt,
        eta=eta,
        etap=etap,
        etapp=etapp,
        avals=avals,
        col=col,
        diag_n=diag_n,
        diag_wm=diag_wm,
        cot_table=cot_table,
        graded=graded_flags,
        floor2=(1e-13 * max(scale, 1.0)) ** 2,
    )


def kernel_N(ctx: KernelContext, s_index: int, t_index: int) -> float:
    """One entry of the continuous kernel (diagonal = Taylor limit)."""
    if s_index == t_index:
        return float(ctx.diag_n[s_index])
    num = ctx.avals[s_index] / ctx.avals[t_index] * ctx.etap[t_index]
    return float(_INV_PI * np.imag(num / (ctx.eta[t_index] - ctx.eta[s_index])))


@njit(cache=True, parallel=True)
def _rows_neumann(eta_re, eta_im, a_re, a_im, c_re, c_im, diag_w, rho, floor2):
    m = eta_re.shape[0]
    out = np.empty(m)
    for i in prange(m):
        xre = eta_re[i]
        xim = eta_im[i]
        are = a_re[i]
        aim = a_im[i]
        acc = 0.0
        for j in range(m):
            if j == i:
                continue
            dre = eta_re[j] - xre
            dim = eta_im[j] - xim
            den = dre * dre + dim * dim
            if den < floor2:
                continue  # colliding graded nodes: true contribution negligible
            rec = 1.0 / den
            qre = (c_re[j] * dre + c_im[j] * dim) * rec
            qim = (c_im[j] * dre - c_re[j] * dim) * rec
            acc += (are * qim + aim * qre) * rho[j]
        out[i] = acc + diag_w[i] * rho[i]
    return out


@njit(cache=True, parallel=True)
def _rows_m(eta_re, eta_im, a_re, a_im, c_re, c_im, diag_w, rho, ct, n,
            graded1, graded2, tvals, wt, floor2):
    m = eta_re.shape[0]
    inv2pi = 1.0 / (2.0 * np.pi)
    out = np.empty(m)
    for i in prange(m):
        xre = eta_re[i]
        xim = eta_im[i]
        are = a_re[i]
        aim = a_im[i]
        in1 = i < n
        graded_i = graded1 if in1 else graded2
        ti = tvals[i]
        acc = 0.0
        csub = 0.0
        for j in range(m):
            if j == i:
                continue
            dre = eta_re[j] - xre
            dim = eta_im[j] - xim
            den = dre * dre + dim * dim
            if den < floor2:
                continue  # colliding graded nodes: paired contribution negligible
            rec = 1.0 / den
            qre = (c_re[j] * dre + c_im[j] * dim) * rec
            qim = (c_im[j] * dre - c_re[j] * dim) * rec
            acc += (are * qre - aim * qim) * rho[j]
            if graded_i and ((j < n) == in1):
                csub += wt[j] * inv2pi / np.tan(0.5 * (tvals[j] - ti))
        if graded_i:
            acc -= rho[i] * csub
        else:
            # smooth rows subtract the discrete cotangent window; the exact
            # spectral convolution is added back by the caller
            base = 0 if in1 else n
            ii = i - base
            c = 0.0
            for l in range(n - ii):
                c += ct[l] * rho[base + ii + l]
            for l in range(n - ii, n):
                c += ct[l] * rho[base + ii + l - n]
            acc -= c
        out[i] = acc + diag_w[i] * rho[i]
    return out


def apply_N(ctx: KernelContext, density: np.ndarray) -> np.ndarray:
    """Matrix-free Nystrom application of the continuous kernel operator.

    (N rho)(s_i) = sum_j w_j N(s_i, t_j) rho(t_j); the 1/pi Im factor is
    folded into precomputed row/column factors, entries are recomputed on
    the fly and never stored.
    """
    rho = np.asarray(density, dtype=float)
    if rho.shape != (2 * ctx.n,):
        raise ArgumentError(f"density must have length {2 * ctx.n}")
    diag_w = ctx.weights * ctx.diag_n
    return _rows_neumann(
        np.ascontiguousarray(ctx.eta.real),
        np.ascontiguousarray(ctx.eta.imag),
        np.ascontiguousarray(ctx.avals.real),
        np.ascontiguousarray(ctx.avals.imag),
        np.ascontiguousarray(ctx.col.real),
        np.ascontiguousarray(ctx.col.imag),
        diag_w,
        rho,
        ctx.floor2,
    )


def _conjugation(values: np.ndarray) -> np.ndarray:
    """Spectral application of (1/2pi) PV int cot((t-s)/2) f(t) dt.

    Acts per uniform grid; exp(i k t) maps to i sgn(k) exp(i k s) and the
    Nyquist mode is annihilated.
    """
    n = len(values)
    fh = np.fft.fft(values)
    k = np.fft.fftfreq(n, d=1.0 / n)
    sym = 1j * np.sign(k)
    sym[n // 2] = 0.0
    return np.real(np.fft.ifft(sym * fh))


def _spectral_derivative(values: np.ndarray) -> np.ndarray:
    """d/dt of the trigonometric interpolant on a uniform periodic grid."""
    n = len(values)
    fh = np.fft.fft(values)
    k = np.fft.fftfreq(n, d=1.0 / n)
    k[n // 2] = 0.0
    return np.real(np.fft.ifft(1j * k * fh))


def apply_M(ctx: KernelContext, density: np.ndarray) -> np.ndarray:
    """Apply the singular kernel operator M.

    Smooth components: cotangent convolution applied spectrally, smooth
    remainder by the trapezoidal rule.  Graded components: cotangent split
    in the original parameter with value subtraction, fused per pair.
    """
    rho = np.asarray(density, dtype=float)
    if rho.shape != (2 * ctx.n,):
        raise ArgumentError(f"density must have length {2 * ctx.n}")
    n = ctx.n
    out = _rows_m(
        np.ascontiguousarray(ctx.eta.real),
        np.ascontiguousarray(ctx.eta.imag),
        np.ascontiguousarray(ctx.avals.real),
        np.ascontiguousarray(ctx.avals.imag),
        np.ascontiguousarray(ctx.col.real),
        np.ascontiguousarray(ctx.col.imag),
        ctx.diag_wm,
        rho,
        ctx.cot_table,
        n,
        ctx.graded[0],
        ctx.graded[1],
        ctx.tvals,
        ctx.wt,
        ctx.floor2,
    )
    h = _TWO_PI / n
    if ctx.graded[0]:
        # restore the punctured node of the value-subtracted cotangent sum,
        # whose integrand tends to rho'(sigma_i)/pi at the singular point
        out[:n] += (h / np.pi) * _spectral_derivative(rho[:n])
    else:
        out[:n] += _conjugation(rho[:n])
    if ctx.graded[1]:
        out[n:] += (h / np.pi) * _spectral_derivative(rho[n:])
    else:
        out[n:] += _conjugation(rho[n:])
    return out


def assemble_dense_N(ctx: KernelContext) -> np.ndarray:
    """Dense matrix of weighted kernel entries w_j N(s_i, t_j).

    O(n^2) memory; intended for small-n verification against the
    matrix-free path, not for production solves.
    """
    delta = ctx.eta[None, :] - ctx.eta[:, None]
    np.fill_diagonal(delta, 1.0)
    mat = np.imag(ctx.avals[:, None] * (ctx.col[None, :] / delta))
    np.fill_diagonal(mat, ctx.weights * ctx.diag_n)
    return mat


def gmres(op, b, tol=1e-14, maxit=100):
    """GMRES without restart: Arnoldi with modified Gram-Schmidt (one
    reorthogonalization pass) and Givens rotations.

    Returns (x, iterations, relative residual, residual history).  Raises
    ConvergenceError when maxit is reached above tolerance.
    """
    m = len(b)
    beta = float(np.linalg.norm(b))
    if beta == 0.0:
        return np.zeros(m), 0, 0.0, [0.0]
    Q = np.zeros((m, maxit + 1))
    H = np.zeros((maxit + 1, maxit))
    cs = np.zeros(maxit)
    sn = np.zeros(maxit)
    g = np.zeros(maxit + 1)
    g[0] = beta
    Q[:, 0] = b / beta
    history = []
    k_used = 0
    res = 1.0
    breakdown = False
    for k in range(maxit):
        v = op(Q[:, k])
        for j in range(k + 1):
            hj = Q[:, j] @ v
            v -= hj * Q[:, j]
            H[j, k] += hj
        for j in range(k + 1):  # second pass keeps the basis orthogonal
            c = Q[:, j] @ v
            v -= c * Q[:, j]
            H[j, k] += c
        hk1 = float(np.linalg.norm(v))
        H[k + 1, k] = hk1
        if hk1 > 0.0:
            Q[:, k + 1] = v / hk1
        else:
            breakdown = True
        for j in range(k):
            tmp = cs[j] * H[j, k] + sn[j] * H[j + 1, k]
            H[j + 1, k] = -sn[j] * H[j, k] + cs[j] * H[j + 1, k]
            H[j, k] = tmp
        r = np.hypot(H[k, k], H[k + 1, k])
        if r == 0.0:
            cs[k], sn[k] = 1.0, 0.0
        else:
            cs[k], sn[k] = H[k, k] / r, H[k + 1, k] / r
        H[k, k] = r
        H[k + 1, k] = 0.0
        g[k + 1] = -sn[k] * g[k]
        g[k] = cs[k] * g[k]
        res = float(abs(g[k + 1]) / beta)
        history.append(res)
        k_used = k + 1
        if res <= tol or breakdown:
            break
    y = np.zeros(k_used)
    for i in range(k_used - 1, -1, -1):
        y[i] = (g[i] - H[i, i + 1 : k_used] @ y[i + 1 : k_used]) / H[i, i]
    x = Q[:, :k_used] @ y
    if res > tol and not breakdown:
        raise ConvergenceError(
            f"GMRES stalled at relative residual {res:.3e} after {k_used} iterations",
            residual=res,
            history=history,
        )
    return x, k_used, res, history


@dataclass(frozen=True)
class BieSolution:
    """Solution of the discrete integral equation.

    ``h`` is numerically piecewise constant on each component; ``h1``/``h2``
    are per-component node medians.  On smooth boundaries the median agrees
    with the mean to solver accuracy; on corner-graded meshes it rejects the
    few under-resolved rows next to each corner.
    """

    rho: np.ndarray
    h: np.ndarray
    h1: float
    h2: float
    iterations: int
    residual: float

    @property
    def n(self) -> int:
        return len(self.rho) // 2


def solve(ctx: KernelContext, gamma: np.ndarray, tol: float = 1e-14, maxit: int = 100) -> BieSolution:
    """Solve (I - N) rho = -M gamma and recover the piecewise-constant h.

    h = [M rho - (I - N) gamma] / 2; h1, h2 are component means.
    """
    gamma = np.asarray(gamma, dtype=float)
    if gamma.shape != (2 * ctx.n,):
        raise ArgumentError(f"gamma must have length {2 * ctx.n}")
    if not np.all(np.isfinite(gamma)):
        raise SingularityError("non-finite right-hand side")
    b = -apply_M(ctx, gamma)
    rho, iters, res, _ = gmres(lambda x: x - apply_N(ctx, x), b, tol=tol, maxit=maxit)
    h = 0.5 * (apply_M(ctx, rho) - (gamma - apply_N(ctx, gamma)))
    n = ctx.n
    return BieSolution(
        rho=rho,
        h=h,
        h1=float(np.median(h[:n])),
        h2=float(np.median(h[n:])),
        iterations=iters,
        residual=res,
    )
