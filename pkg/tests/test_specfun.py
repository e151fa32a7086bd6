import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ringcap.errors import DomainError
from ringcap.specfun import (
    EllipticArg,
    complete_E,
    complete_K,
    incomplete_E,
    incomplete_F,
    mu,
    mu_inv,
)


def series_K(r, terms=400):
    """Hypergeometric-series oracle: (pi/2) F(1/2,1/2;1;r^2)."""
    z = r * r
    total = 0.0
    term = 1.0
    for n in range(terms):
        total += term
        term *= ((n + 0.5) / (n + 1.0)) ** 2 * z
        if term < 1e-18 * total:
            break
    return 0.5 * np.pi * total


def series_E(r, terms=400):
    """Series oracle: (pi/2) F(1/2,-1/2;1;r^2)."""
    z = r * r
    total = 1.0
    term = 1.0
    for n in range(terms):
        term *= (n + 0.5) * (n - 0.5) / (n + 1.0) ** 2 * z
        total += term
        if abs(term) < 1e-18:
            break
    return 0.5 * np.pi * total


class TestCompleteIntegrals:
    def test_K_small_r_limit(self):
        assert complete_K(1e-9) == pytest.approx(np.pi / 2, rel=1e-15)

    def test_K_against_series(self):
        for r in (1 / np.sqrt(2), 0.5):
            assert complete_K(r) == pytest.approx(series_K(r), rel=1e-14)

    def test_E_limits(self):
        assert complete_E(1e-9) == pytest.approx(np.pi / 2, rel=1e-15)
        assert complete_E(1 - 1e-13) == pytest.approx(1.0, rel=1e-11)

    def test_E_against_series(self):
        assert complete_E(0.5) == pytest.approx(series_E(0.5), rel=1e-14)

    def test_monotonicity(self):
        rs = np.linspace(0.01, 0.99, 60)
        ks = [complete_K(r) for r in rs]
        es = [complete_E(r) for r in rs]
        assert all(b > a for a, b in zip(ks, ks[1:]))
        assert all(b < a for a, b in zip(es, es[1:]))

    @pytest.mark.parametrize("bad", [0.0, 1.0, -0.5, 2.0])
    def test_domain_errors(self, bad):
        with pytest.raises(DomainError):
            complete_K(bad)
        with pytest.raises(DomainError):
            complete_E(bad)

    def test_elliptic_arg_invariant(self):
        arg = EllipticArg.from_modulus(1 - 1e-12)
        assert arg.r**2 + arg.rprime**2 == pytest.approx(1.0, abs=1e-15)


class TestMu:
    def test_symmetric_point(self):
        assert abs(mu(1 / np.sqrt(2)) - np.pi / 2) <= 1e-15 * np.pi

    def test_reciprocal_identity(self):
        for r in (0.1, 0.3, 0.62, 0.9):
            rp = np.sqrt(1 - r * r)
            assert mu(r) * mu(rp) == pytest.approx(np.pi**2 / 4, rel=1e-14)

    def test_against_series_oracle(self):
        r = 0.3
        want = 0.5 * np.pi * series_K(np.sqrt(0.91)) / series_K(0.3)
        assert mu(r) == pytest.approx(want, rel=1e-14)

    def test_landen_identities_on_log_grid(self):
        rs = np.geomspace(1e-6, 1 - 1e-6, 200)
        eps = np.finfo(float).eps
        for r in rs:
            m = mu(r)
            # doubling identity: near r = 1 the argument 2 sqrt(r)/(1+r) is
            # itself rounded, and mu reacts with derivative ~1/(1-x); allow
            # exactly that conditioning, nothing more
            arg1 = 2 * np.sqrt(r) / (1 + r)
            kappa = np.pi**2 / (4 * (1 - arg1 * arg1) * complete_K(arg1) ** 2)
            tol1 = max(1e-13, 8 * eps * kappa / mu(arg1))
            assert m == pytest.approx(2 * mu(arg1), rel=tol1)
            rp = np.sqrt((1 - r) * (1 + r))
            # (1 - r')/(1 + r') written in its cancellation-free form
            arg2 = r * r / (1 + rp) ** 2
            assert m == pytest.approx(0.5 * mu(arg2), rel=1e-13)

    def test_domain_error(self):
        with pytest.raises(DomainError):
            mu(1.5)


class TestMuInverse:
    def test_symmetric_point(self):
        assert mu_inv(np.pi / 2) == pytest.approx(1 / np.sqrt(2), abs=1e-14)

    def test_round_trip(self):
        for r in np.linspace(0.02, 0.98, 49):
            assert mu_inv(mu(r)) == pytest.approx(r, abs=2e-14)

    @settings(max_examples=60, deadline=None)
    @given(st.floats(min_value=0.02, max_value=0.98))
    def test_residual_contract(self, r):
        y = mu(r)
        assert abs(mu(mu_inv(y)) - y) <= 1e-13 * max(1.0, y)

    def test_square_condenser_identity(self):
        # u^2 + v^2 = 1 for the complementary pair of arguments
        a = 0.5
        c = (1 - a) / (1 + a)
        u = mu_inv(np.pi * c / 2)
        v = mu_inv(np.pi / (2 * c))
        assert u * u + v * v == pytest.approx(1.0, abs=1e-12)

    def test_domain_error(self):
        with pytest.raises(DomainError):
            mu_inv(0.0)


class TestIncomplete:
    def test_empty_integral(self):
        assert incomplete_F(0.0, 0.5) == 0.0
        assert incomplete_E(0.0, 0.5) == 0.0

    def test_complete_limits(self):
        for k in (0.2, 0.6, 0.9):
            assert incomplete_F(1.0, k) == pytest.approx(complete_K(k), rel=1e-12)
            assert incomplete_E(1.0, k) == pytest.approx(complete_E(k), rel=1e-12)

    def test_increasing_in_z(self):
        zs = np.linspace(0.0, 1.0, 21)
        vals = [incomplete_F(z, 0.7) for z in zs]
        assert all(b > a for a, b in zip(vals, vals[1:]))

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            incomplete_F(1.5, 0.5)
        with pytest.raises(DomainError):
            incomplete_E(0.5, 1.0)
