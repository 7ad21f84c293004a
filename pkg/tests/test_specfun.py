"""
Laguerre polynomials, Gamma tables and Gauss-Laguerre quadrature
"""

import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.special import eval_genlaguerre, gamma, hyperu, roots_genlaguerre

from ncho.config.settings import QUAD_MARGIN_ENV
from ncho.errors import ConfigError, DomainError
from ncho.specfun import (
    LaguerreIndex,
    appendix_identity_exact,
    appendix_identity_residual,
    gamma_value,
    gauss_laguerre,
    laguerre_derivative,
    laguerre_eval,
    laguerre_product_integral_exact,
    orthonormality_check,
    quadrature_order,
    tricomi_u_laguerre,
)


class TestLaguerre:
    """Tests for associated Laguerre evaluation"""

    @pytest.mark.closed_form
    @pytest.mark.parametrize("order", [0, 1, 2.5])
    def test_low_degrees(self, order):
        z = 0.7
        assert laguerre_eval(LaguerreIndex(0, order), z) == 1.0
        assert laguerre_eval(LaguerreIndex(1, order), z) == pytest.approx(1 + order - z, rel=1e-15)
        expected = (z**2 - 2 * (order + 2) * z + (order + 1) * (order + 2)) / 2
        assert laguerre_eval(LaguerreIndex(2, order), z) == pytest.approx(expected, rel=1e-14)

    @pytest.mark.closed_form
    def test_negative_order(self):
        """L^{-1}_1 = -z and L^{-2}_3 = z^2 (3 - z) / 6"""
        z = np.linspace(0.0, 5.0, 11)
        np.testing.assert_allclose(laguerre_eval(LaguerreIndex(1, -1), z), -z, atol=1e-14)
        np.testing.assert_allclose(laguerre_eval(LaguerreIndex(3, -2), z), z**2 * (3 - z) / 6, atol=1e-13)

    def test_negative_degree_rejected(self):
        with pytest.raises(DomainError):
            LaguerreIndex(-1, 0)

    def test_scalar_and_array_outputs(self):
        idx = LaguerreIndex(4, 2)
        assert isinstance(laguerre_eval(idx, 1.5), float)
        assert laguerre_eval(idx, np.array([1.5, 2.0])).shape == (2,)

    @pytest.mark.closed_form
    def test_derivative(self):
        """d/dz L^a_2 = z - (a + 2); second derivative 1; L_0 derivative 0"""
        z = 1.3
        assert laguerre_derivative(LaguerreIndex(2, 1), z) == pytest.approx(z - 3, rel=1e-15)
        assert laguerre_derivative(LaguerreIndex(2, 1), z, times=2) == pytest.approx(1.0, rel=1e-15)
        assert laguerre_derivative(LaguerreIndex(0, 3), z) == 0.0

    @pytest.mark.oracle
    @pytest.mark.property
    @given(
        degree=st.integers(min_value=0, max_value=15),
        order=st.integers(min_value=0, max_value=6),
        z=st.floats(min_value=0.0, max_value=30.0, allow_nan=False),
    )
    @settings(max_examples=300, deadline=None)
    def test_matches_scipy(self, degree, order, z):
        value = laguerre_eval(LaguerreIndex(degree, order), z)
        expected = float(eval_genlaguerre(degree, order, z))
        # L(-z) sums the absolute values of the power-series terms
        scale = max(1.0, float(eval_genlaguerre(degree, order, -z)))
        assert abs(value - expected) <= 1e-11 * scale, f"L^{order}_{degree}({z}): {value} vs {expected}"


class TestTricomi:
    """Tests for U(-m, 1-m+n, z)"""

    @pytest.mark.closed_form
    @pytest.mark.parametrize("n", [1, 2, 5])
    def test_first_degree(self, n):
        """U(-1, b, z) = z - b with b = n"""
        assert tricomi_u_laguerre(1, n, 2.5) == pytest.approx(2.5 - n, rel=1e-15)

    @pytest.mark.oracle
    @pytest.mark.parametrize("m,n", [(1, 1), (2, 3), (3, 3), (3, 5)])
    @pytest.mark.parametrize("z", [0.5, 1.7, 4.0])
    def test_matches_scipy_hyperu(self, m, n, z):
        expected = float(hyperu(-m, 1 - m + n, z))
        assert tricomi_u_laguerre(m, n, z) == pytest.approx(expected, rel=1e-8, abs=1e-10)

    def test_zero_degree_is_one(self):
        assert tricomi_u_laguerre(0, 3, 4.0) == 1.0

    def test_singular_branch_rejected(self):
        with pytest.raises(DomainError):
            tricomi_u_laguerre(3, 1, 1.0)


class TestGamma:
    """Tests for the Gamma tables"""

    @pytest.mark.closed_form
    @pytest.mark.parametrize("x", [0.5, 1.0, 1.5, 3.5, 5.0, 10.5, 20.0])
    def test_matches_math_gamma(self, x):
        assert gamma_value(x) == pytest.approx(math.gamma(x), rel=1e-14)

    @pytest.mark.oracle
    def test_matches_scipy_over_table(self):
        for twice in range(1, 129):
            x = twice / 2
            assert gamma_value(x) == pytest.approx(float(gamma(x)), rel=1e-13), f"Gamma({x})"

    def test_known_values(self):
        assert gamma_value(5.0) == 24.0
        assert gamma_value(0.5) == pytest.approx(math.sqrt(math.pi), rel=1e-15)

    @pytest.mark.parametrize("x", [0.0, 0.3, 2.25, 64.5])
    def test_outside_table_rejected(self, x):
        with pytest.raises(DomainError):
            gamma_value(x)


class TestQuadrature:
    """Tests for generalized Gauss-Laguerre rules"""

    def test_order_from_degree(self):
        assert quadrature_order(4, margin=0) == 3
        assert quadrature_order(5, margin=0) == 3
        assert quadrature_order(4, margin=2) == 5
        assert quadrature_order(0, margin=0) == 1

    def test_order_margin_from_environment(self, monkeypatch):
        monkeypatch.setenv(QUAD_MARGIN_ENV, "5")
        assert quadrature_order(4) == 8
        monkeypatch.setenv(QUAD_MARGIN_ENV, "many")
        with pytest.raises(ConfigError):
            quadrature_order(4)
        monkeypatch.setenv(QUAD_MARGIN_ENV, "-1")
        with pytest.raises(ConfigError):
            quadrature_order(4)

    @pytest.mark.oracle
    def test_matches_numpy_for_zero_alpha(self):
        rule = gauss_laguerre(12, 0.0)
        nodes, weights = np.polynomial.laguerre.laggauss(12)
        np.testing.assert_allclose(rule.nodes, nodes, rtol=1e-12)
        np.testing.assert_allclose(rule.weights, weights, rtol=1e-10)

    @pytest.mark.oracle
    @pytest.mark.parametrize("alpha", [0.5, 1.0, 3.0])
    def test_matches_scipy_for_positive_alpha(self, alpha):
        rule = gauss_laguerre(10, alpha)
        nodes, weights = roots_genlaguerre(10, alpha)
        np.testing.assert_allclose(rule.nodes, nodes, rtol=1e-12)
        np.testing.assert_allclose(rule.weights, weights, rtol=1e-10)

    @pytest.mark.closed_form
    @pytest.mark.parametrize("alpha", [0, 1, 2])
    def test_monomials_exact(self, alpha):
        """sum w_i z_i^k = Gamma(k + alpha + 1) for k <= 2q - 1"""
        rule = gauss_laguerre(8, alpha)
        for k in range(16):
            integral = float(rule.integrate(rule.nodes**k))
            expected = math.gamma(k + alpha + 1)
            assert integral == pytest.approx(expected, rel=1e-11), f"alpha={alpha}, k={k}"

    def test_rule_is_cached_and_read_only(self):
        rule = gauss_laguerre(6, 1.0)
        assert gauss_laguerre(6, 1.0) is rule
        with pytest.raises(ValueError):
            rule.nodes[0] = 0.0

    def test_invalid_arguments(self):
        with pytest.raises(DomainError):
            gauss_laguerre(0)
        with pytest.raises(DomainError):
            gauss_laguerre(4, -0.5)


class TestIntegralChecks:
    """Tests for the orthogonality and identity residuals"""

    @pytest.mark.oracle
    @pytest.mark.parametrize("n,m", [(0, 0), (1, 0), (3, 1), (6, 2), (10, 4), (12, 12)])
    def test_orthonormality(self, n, m, quad_margin):
        residual = orthonormality_check(n, m, quad_margin)
        assert residual < 1e-10, f"n={n}, m={m}: residual {residual:.3e}"

    @pytest.mark.oracle
    @pytest.mark.parametrize("n,m", [(0, 0), (2, 1), (4, 2), (6, 3), (9, 5), (12, 8)])
    def test_laguerre_identity(self, n, m, quad_margin):
        residual = appendix_identity_residual(n, m, quad_margin)
        assert residual < 1e-10, f"n={n}, m={m}: residual {residual:.3e}"

    @pytest.mark.closed_form
    @pytest.mark.parametrize("n,m,limit", [(0, 0, 1e-13), (3, 1, 1e-12), (2, 2, 1e-12)])
    def test_orthonormality_absolute(self, n, m, limit):
        residual = orthonormality_check(n, m, relative=False)
        assert residual < limit, f"n={n}, m={m}: absolute residual {residual:.3e}"

    @pytest.mark.closed_form
    @pytest.mark.parametrize("n,m,limit", [(2, 2, 1e-12), (5, 3, 1e-11), (10, 10, 1e-10)])
    def test_laguerre_identity_absolute(self, n, m, limit):
        residual = appendix_identity_residual(n, m, relative=False)
        assert residual < limit, f"n={n}, m={m}: absolute residual {residual:.3e}"
        assert appendix_identity_residual(n, m) <= residual

    @pytest.mark.closed_form
    def test_laguerre_identity_exact(self):
        for n in range(2, 13):
            for m in range(2, n + 1):
                assert appendix_identity_exact(n, m) == 0, f"n={n}, m={m}"

    @pytest.mark.closed_form
    @pytest.mark.parametrize("i,j,alpha", [(0, 0, 0), (2, 2, 0), (3, 1, 2), (4, 4, 3), (12, 7, 5)])
    def test_exact_orthogonality(self, i, j, alpha):
        integral = laguerre_product_integral_exact(LaguerreIndex(i, alpha), LaguerreIndex(j, alpha), alpha)
        expected = Fraction(math.factorial(i + alpha), math.factorial(i)) if i == j else Fraction(0)
        assert integral == expected

    @pytest.mark.oracle
    def test_exact_integral_matches_quadrature(self):
        exact = laguerre_product_integral_exact(LaguerreIndex(3, 0), LaguerreIndex(4, 1), 1)
        rule = gauss_laguerre(8, 1)
        nodes = rule.nodes
        numeric = float(rule.integrate(laguerre_eval(LaguerreIndex(3, 0), nodes) * laguerre_eval(LaguerreIndex(4, 1), nodes)))
        assert numeric == pytest.approx(float(exact), rel=1e-12, abs=1e-12)

    def test_irregular_states_rejected(self):
        with pytest.raises(DomainError):
            orthonormality_check(1, 2)
        with pytest.raises(DomainError):
            appendix_identity_residual(1, 2)
        with pytest.raises(DomainError):
            laguerre_product_integral_exact(LaguerreIndex(1, -1), LaguerreIndex(1, 0), 0)
