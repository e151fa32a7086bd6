import numpy as np
import pytest
from scipy.integrate import quad

from ringcap import bie
from ringcap.boundary import circle, rectangle, RingDomain
from ringcap.capacity import _domain_square_in_square
from ringcap.errors import ArgumentError, ConvergenceError

TWO_PI = 2 * np.pi


def annulus_domain():
    return RingDomain(
        gamma1=circle(0, 1.0),
        gamma2=circle(0, 0.5).reversed(),
        kind="bounded",
        alpha=0.75,
        z2=0.0,
    )


def two_circle_domain():
    return RingDomain(
        gamma1=circle(0, 1.0).reversed(),
        gamma2=circle(4.0, 1.0).reversed(),
        kind="unbounded",
        z1=0.0,
        z2=4.0,
    )


def annulus_gamma(ctx, dom):
    return -np.log(np.abs((ctx.eta - dom.z2) / (dom.alpha - dom.z2)))


class TestKernelEntries:
    def test_clockwise_circle_constant(self):
        # on a clockwise unit circle with constant A the kernel collapses to
        # -1/(2 pi); the algebraic oracle is recomputed here independently
        ctx = bie.build_context(two_circle_domain(), 64)
        s, t = ctx.nodes[3], ctx.nodes[40]
        oracle = np.imag(
            -1j * np.exp(-1j * t) / (np.exp(-1j * t) - np.exp(-1j * s))
        ) / np.pi
        assert oracle == pytest.approx(-1 / TWO_PI, abs=1e-15)
        assert bie.kernel_N(ctx, 3, 40) == pytest.approx(-1 / TWO_PI, abs=1e-14)

    def test_unbounded_diagonal_formula(self):
        ctx = bie.build_context(two_circle_domain(), 64)
        i = 5
        want = np.imag(ctx.etapp[i] / ctx.etap[i]) / TWO_PI
        assert bie.kernel_N(ctx, i, i) == pytest.approx(want, rel=1e-14)

    def test_diagonal_matches_extrapolation(self):
        # evaluate the off-diagonal formula at parameter offsets +-eps on the
        # raw curve; symmetric averages have O(eps^2) error, so one Richardson
        # step reaches the diagonal limit well below 1e-8
        dom = annulus_domain()
        ctx = bie.build_context(dom, 64)
        curve = dom.gamma1
        for i in (0, 11):
            ti = ctx.nodes[i]

            def offdiag(tt):
                e = curve.eval(np.array([tt]))[0]
                ep = curve.deriv(np.array([tt]))[0]
                As = ctx.avals[i]
                At = e - dom.alpha
                return np.imag((As / At) * ep / (e - ctx.eta[i])) / np.pi

            def sym(eps):
                return 0.5 * (offdiag(ti + eps) + offdiag(ti - eps))

            eps = 2e-4
            approx = (4.0 * sym(eps / 2) - sym(eps)) / 3.0
            assert bie.kernel_N(ctx, i, i) == pytest.approx(approx, abs=1e-8)

    def test_row_sums_against_quadrature(self):
        dom = annulus_domain()
        n = 128
        ctx = bie.build_context(dom, n)
        i = 17
        dense = bie.assemble_dense_N(ctx)
        row_parts = [dense[i, :n].sum(), dense[i, n:].sum()]
        for comp, curve in enumerate((dom.gamma1, dom.gamma2)):

            def f(t):
                e = curve.eval(np.array([t]))[0]
                ep = curve.deriv(np.array([t]))[0]
                val = np.imag((ctx.avals[i] / (e - dom.alpha)) * ep / (e - ctx.eta[i])) / np.pi
                return val

            if comp == 0:
                want = quad(f, ctx.nodes[i] + 1e-12, ctx.nodes[i] + TWO_PI - 1e-12,
                            limit=400, epsabs=1e-13, epsrel=1e-13, points=[ctx.nodes[i] + np.pi])[0]
            else:
                want = quad(f, 0, TWO_PI, limit=400, epsabs=1e-13, epsrel=1e-13)[0]
            assert row_parts[comp] == pytest.approx(want, abs=1e-12)


class TestApplyN:
    def test_zero_density(self):
        ctx = bie.build_context(annulus_domain(), 32)
        assert np.all(bie.apply_N(ctx, np.zeros(64)) == 0.0)

    def test_linearity(self):
        ctx = bie.build_context(annulus_domain(), 32)
        rng = np.random.default_rng(3)
        x, y = rng.normal(size=64), rng.normal(size=64)
        lhs = bie.apply_N(ctx, 2.0 * x + 3.0 * y)
        rhs = 2.0 * bie.apply_N(ctx, x) + 3.0 * bie.apply_N(ctx, y)
        assert np.max(np.abs(lhs - rhs)) < 1e-14 * max(1.0, np.max(np.abs(lhs)))

    @pytest.mark.parametrize("n", [64, 128])
    def test_matches_dense_assembly(self, n):
        ctx = bie.build_context(annulus_domain(), n)
        rng = np.random.default_rng(5)
        rho = rng.normal(size=2 * n)
        dense = bie.assemble_dense_N(ctx)
        # left-to-right inner products mirror the matrix-free accumulation
        want = np.array([sum(dense[i, j] * rho[j] for j in range(2 * n)) for i in range(2 * n)])
        got = bie.apply_N(ctx, rho)
        assert np.max(np.abs(got - want)) <= 1e-15 * max(1.0, np.max(np.abs(want)))

    def test_rejects_bad_length(self):
        ctx = bie.build_context(annulus_domain(), 32)
        with pytest.raises(ArgumentError):
            bie.apply_N(ctx, np.zeros(10))


def pv_cot_oracle(values_fn, s):
    """(1/2pi) PV int cot((t-s)/2) f(t) dt by value-subtracted quadrature.

    PV int cot((t-s)/2) dt = 0 over a period, so subtracting f(s) leaves a
    smooth integrand.
    """
    f_s = values_fn(s)
    val = quad(lambda t: (values_fn(t) - f_s) / np.tan(0.5 * (t - s)),
               s + 1e-13, s + TWO_PI - 1e-13, limit=600, epsabs=1e-12, epsrel=1e-12,
               points=[s + np.pi])[0]
    return val / TWO_PI


class TestApplyM:
    def test_conjugation_kills_constants(self):
        ones = np.ones(64)
        assert np.max(np.abs(bie._conjugation(ones))) < 1e-14

    @pytest.mark.parametrize("k", [1, 3])
    def test_cotangent_sign_against_pv_oracle(self, k):
        n = 64
        t = TWO_PI * np.arange(n) / n
        got = bie._conjugation(np.cos(k * t))
        # principal-value quadrature fixes the sign convention
        s0 = t[5]
        oracle = pv_cot_oracle(lambda tt: np.cos(k * tt), s0)
        assert oracle == pytest.approx(-np.sin(k * s0), abs=1e-9)
        assert np.allclose(got, -np.sin(k * t), atol=1e-12)

    def test_full_m_against_pv_quadrature(self):
        dom = annulus_domain()
        n = 128
        ctx = bie.build_context(dom, n)
        t = ctx.nodes[:n]
        rho = np.concatenate([np.cos(t) + 0.3 * np.sin(2 * t), 0.5 * np.cos(3 * t)])
        got = bie.apply_M(ctx, rho)

        def density(comp, tt):
            return (np.cos(tt) + 0.3 * np.sin(2 * tt)) if comp == 0 else 0.5 * np.cos(3 * tt)

        for i in (4, 77, n + 9, n + 60):
            comp_i = 0 if i < n else 1
            want = 0.0
            for comp, curve in enumerate((dom.gamma1, dom.gamma2)):

                def fM(tt):
                    e = curve.eval(np.array([tt]))[0]
                    ep = curve.deriv(np.array([tt]))[0]
                    return np.real((ctx.avals[i] / (e - dom.alpha)) * ep / (e - ctx.eta[i])) / np.pi

                if comp != comp_i:
                    want += quad(lambda tt: fM(tt) * density(comp, tt), 0, TWO_PI,
                                 limit=600, epsabs=1e-12, epsrel=1e-12)[0]
                else:
                    s0 = ctx.nodes[i]
                    rho_s = density(comp, s0)

                    def reg(tt):
                        sing = rho_s / (TWO_PI * np.tan(0.5 * (tt - s0)))
                        return fM(tt) * density(comp, tt) - sing

                    want += quad(reg, s0 + 1e-11, s0 + TWO_PI - 1e-11, limit=800,
                                 epsabs=1e-11, epsrel=1e-11, points=[s0 + np.pi])[0]
            assert got[i] == pytest.approx(want, abs=1e-10)

    def test_analytic_identity_smooth(self):
        # boundary values of analytic functions satisfy (M + iN) A phi = i A phi
        ctx = bie.build_context(annulus_domain(), 128)
        for phi in (np.ones_like(ctx.eta), ctx.eta, ctx.eta**2):
            m_val = ctx.avals * phi
            Mv = bie.apply_M(ctx, m_val.real) + 1j * bie.apply_M(ctx, m_val.imag)
            Nv = bie.apply_N(ctx, m_val.real) + 1j * bie.apply_N(ctx, m_val.imag)
            assert np.max(np.abs(Mv + 1j * Nv - 1j * m_val)) < 1e-12


class TestSolve:
    def test_concentric_annulus_exact(self):
        dom = annulus_domain()
        ctx = bie.build_context(dom, 128)
        sol = bie.solve(ctx, annulus_gamma(ctx, dom))
        assert sol.h2 - sol.h1 == pytest.approx(np.log(0.5), abs=1e-13)
        assert np.max(np.abs(sol.rho)) < 1e-13

    def test_homogeneous(self):
        ctx = bie.build_context(annulus_domain(), 32)
        sol = bie.solve(ctx, np.zeros(64))
        assert np.all(sol.rho == 0.0)
        assert np.all(sol.h == 0.0)
        assert sol.iterations == 0

    def test_piecewise_constancy_smooth(self):
        dom = two_circle_domain()
        ctx = bie.build_context(dom, 256)
        gamma = -np.log(np.abs((ctx.eta - dom.z2) / (ctx.eta - dom.z1)))
        sol = bie.solve(ctx, gamma, tol=1e-14)
        bound = 100 * 1e-14 * np.max(np.abs(gamma))
        assert np.std(sol.h[:256]) < bound
        assert np.std(sol.h[256:]) < bound

    def test_square_gmres_iterations(self):
        dom = _domain_square_in_square(0.5)
        ctx = bie.build_context(dom, 1024, grading_order=4)
        gam = -np.log(np.abs((ctx.eta - dom.z2) / (dom.alpha - dom.z2)))
        sol = bie.solve(ctx, gam, tol=1e-12)
        assert sol.iterations <= 40

    def test_super_algebraic_convergence(self):
        # doubling n on a smooth problem cuts the modulus increment by far
        # more than a factor 100 in the pre-asymptotic regime
        dom = RingDomain(
            gamma1=circle(0, 1.0).reversed(),
            gamma2=circle(2.4, 1.0).reversed(),
            kind="unbounded",
            z1=0.0,
            z2=2.4,
        )
        qs = {}
        for n in (32, 64, 128):
            ctx = bie.build_context(dom, n)
            gamma = -np.log(np.abs((ctx.eta - dom.z2) / (ctx.eta - dom.z1)))
            sol = bie.solve(ctx, gamma)
            qs[n] = np.exp(sol.h2 - sol.h1)
        d1 = abs(qs[32] - qs[64])
        d2 = abs(qs[64] - qs[128])
        assert d1 > 100 * d2


class TestGmres:
    def test_residual_history_monotone(self):
        rng = np.random.default_rng(11)
        a = np.eye(40) + 0.3 * rng.normal(size=(40, 40)) / np.sqrt(40)
        b = rng.normal(size=40)
        x, k, res, hist = bie.gmres(lambda v: a @ v, b, tol=1e-13, maxit=60)
        assert np.max(np.abs(a @ x - b)) < 1e-11
        assert all(h2 <= h1 + 1e-16 for h1, h2 in zip(hist, hist[1:]))

    def test_convergence_error_carries_residual(self):
        rng = np.random.default_rng(2)
        a = np.eye(60) + rng.normal(size=(60, 60)) / 4
        b = rng.normal(size=60)
        with pytest.raises(ConvergenceError) as exc:
            bie.gmres(lambda v: a @ v, b, tol=1e-15, maxit=3)
        assert exc.value.residual is not None
        assert len(exc.value.history) == 3
