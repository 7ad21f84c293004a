"""
Ermakov-Pinney families, constraints, Chiellini check and d(t) integration
"""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ncho.ep import (
    CustomFamily,
    EPSample,
    ExponentialFamily,
    RationalFamily,
    chiellini_check,
    critical_time,
    d_ode_solve,
    ep_residual,
)
from ncho.errors import (
    ConstraintError,
    DomainError,
    IntegrabilityError,
    PoleError,
    StepSizeError,
)


class TestEPSample:
    """Tests for the sample record and the raw residual"""

    @pytest.mark.closed_form
    def test_static_sample_has_zero_residual(self, static):
        """a = b = rho = 1, d = 0 solves the EP equation exactly"""
        assert ep_residual(static.sample(0.3)) == 0.0

    def test_non_positive_a_rejected(self):
        with pytest.raises(DomainError):
            EPSample(t=0.0, a=0.0, a_dot=0.0, b=1.0, d=0.0, d_dot=0.0, rho=1.0, rho_dot=0.0, rho_ddot=0.0)

    def test_non_positive_rho_rejected(self):
        with pytest.raises(DomainError):
            EPSample(t=0.0, a=1.0, a_dot=0.0, b=1.0, d=0.0, d_dot=0.0, rho=-1.0, rho_dot=0.0, rho_ddot=0.0)

    def test_chirp(self, exp_family):
        s = exp_family.sample(0.0)
        expected = (s.rho_dot - 2 * s.rho * s.d) / s.a
        assert s.chirp == pytest.approx(expected, rel=1e-15)


class TestExponentialFamily:
    """Tests for the exponential solution family"""

    @pytest.mark.closed_form
    def test_derived_kconst_and_rate(self, exp_family):
        """Delta = 2 with unit parameters gives k = (8 - 1 - 4)/8"""
        assert exp_family.kconst == pytest.approx(0.375, rel=1e-15)
        assert exp_family.rate == pytest.approx(2.0, rel=1e-15)

    @pytest.mark.closed_form
    def test_sample_at_origin(self, exp_family):
        """t = 0, C = 2: w = 1, so d = 2k/(rate + Gamma) + rate/2"""
        s = exp_family.sample(0.0)
        assert (s.a, s.b, s.rho) == (1.0, 2.0, 1.0)
        assert s.d == pytest.approx(1.25, rel=1e-14), f"d(0) = {s.d}"
        assert s.d_dot == pytest.approx(-4.0, rel=1e-14), f"d'(0) = {s.d_dot}"

    @pytest.mark.closed_form
    @pytest.mark.parametrize("t", [0.0, 0.1, 1.0, 3.0, 10.0])
    def test_d_satisfies_riccati_equation(self, exp_family, t):
        s = exp_family.sample(t)
        rhs = exp_family.kconst - 2 * s.d**2 - exp_family.gamma * s.d
        assert s.d_dot == pytest.approx(rhs, abs=1e-13), f"t={t}: d'={s.d_dot}, rhs={rhs}"

    @pytest.mark.parametrize("t", [0.0, 0.5, 2.0, 6.0, 10.0])
    def test_ep_residual_vanishes(self, exp_family, fig1_family, t):
        for family in (exp_family, fig1_family):
            residual = ep_residual(family.sample(t))
            assert abs(residual) < 1e-10, f"{family}: residual {residual:.3e} at t={t}"

    def test_constraint_violation_raises(self):
        with pytest.raises(ConstraintError) as exc:
            ExponentialFamily(sigma=1.0, delta=1.0, mu=1.0, gamma=1.0, cconst=2.0, kconst=0.0)
        assert "8*mu^4*k" in str(exc.value)

    def test_cconst_must_exceed_one(self):
        with pytest.raises(DomainError):
            ExponentialFamily(sigma=1.0, delta=2.0, mu=1.0, gamma=1.0, cconst=1.0)

    def test_negative_rate_squared_rejected(self):
        """Delta = 1 with unit parameters gives Gamma^2 + 8k = 0"""
        with pytest.raises(DomainError):
            ExponentialFamily(sigma=1.0, delta=1.0, mu=1.0, gamma=1.0, cconst=2.0)

    def test_critical_time_is_pole(self, exp_family):
        t0 = critical_time(exp_family)
        assert t0 == pytest.approx(-math.log(2.0) / 2.0, rel=1e-15)
        with pytest.raises(PoleError):
            exp_family.sample(t0)
        with pytest.raises(PoleError):
            exp_family.sample(t0 - 0.1)
        # Just after the pole d(t) is finite and large
        assert exp_family.sample(t0 + 1e-6).d > 1e3

    @pytest.mark.closed_form
    def test_standard_bopp_limit(self, fig1_family):
        limit = fig1_family.standard_bopp_limit()
        assert math.isinf(limit.cconst)
        assert limit.kconst == 0.0
        assert limit.delta == pytest.approx(1.25, rel=1e-15)
        for t in (0.0, 1.0, 5.0):
            assert limit.sample(t).d == 0.0

    def test_perturbed_skips_validation(self, fig1_family):
        perturbed = fig1_family.perturbed(1e-3)
        assert perturbed.delta == pytest.approx(1.25 * 1.001, rel=1e-15)
        assert perturbed.constraint_residual() != 0.0
        assert abs(ep_residual(perturbed.sample(1.0))) > 1e-6

    def test_time_at_rho_inverts_rho(self, exp_family):
        for t in (0.0, 0.7, 4.0):
            rho = exp_family.sample(t).rho
            assert exp_family.time_at_rho(rho) == pytest.approx(t, abs=1e-13)


class TestRationalFamily:
    """Tests for the rational solution family"""

    @pytest.mark.closed_form
    def test_constrained_delta(self, rational_family):
        assert rational_family.delta == pytest.approx(2.0, rel=1e-15)
        assert rational_family.constraint_residual() == pytest.approx(0.0, abs=1e-12)

    @pytest.mark.closed_form
    def test_sample_at_origin(self, rational_family):
        """k = 1, s = 1: a = 27, b = 2/3, rho = 3, d = 1"""
        s = rational_family.sample(0.0)
        assert s.a == pytest.approx(27.0, rel=1e-14)
        assert s.b == pytest.approx(2.0 / 3.0, rel=1e-14)
        assert s.rho == pytest.approx(3.0, rel=1e-14)
        assert s.d == pytest.approx(1.0, rel=1e-15)
        assert ep_residual(s) == pytest.approx(0.0, abs=1e-12)

    @pytest.mark.parametrize("korder", [1, 2, 3, 5])
    @pytest.mark.parametrize("t", [0.0, 1.0, 10.0])
    def test_ep_residual_vanishes(self, korder, t):
        family = RationalFamily.constrained(sigma=1.0, mu=1.0, gamma=1.0, chi=1.0, korder=korder, small_delta=0.5)
        residual = ep_residual(family.sample(t))
        assert abs(residual) < 1e-10, f"k={korder}: residual {residual:.3e} at t={t}"

    def test_constraint_violation_raises(self):
        with pytest.raises(ConstraintError):
            RationalFamily(sigma=1.0, delta=3.0, mu=1.0, gamma=1.0, chi=1.0, korder=1, small_delta=1.0)

    def test_non_integer_order_rejected(self):
        with pytest.raises(DomainError):
            RationalFamily(sigma=1.0, delta=2.0, mu=1.0, gamma=1.0, chi=1.0, korder=1.5, small_delta=1.0)

    def test_pole_before_shift(self, rational_family):
        with pytest.raises(PoleError):
            rational_family.sample(-1.0)

    @pytest.mark.closed_form
    def test_standard_bopp_limit(self, rational_family):
        """k = 1: Delta' = (Gamma^2/9 + sigma^2)/sigma = 10/9"""
        limit = rational_family.standard_bopp_limit()
        assert limit.small_delta == 0.0
        assert limit.delta == pytest.approx(10.0 / 9.0, rel=1e-14)
        assert ep_residual(limit.sample(2.0)) == pytest.approx(0.0, abs=1e-12)


class TestCustomFamily:
    """Tests for caller-supplied families"""

    def test_static_has_no_limit_or_inverse(self, static):
        with pytest.raises(DomainError):
            static.standard_bopp_limit()
        with pytest.raises(DomainError):
            static.time_at_rho(1.0)

    def test_evaluator_is_called(self, exp_family):
        family = CustomFamily(evaluator=exp_family.sample, label="wrapped")
        assert family.sample(0.4) == exp_family.sample(0.4)


class TestChiellini:
    """Tests for the integrability check"""

    @pytest.mark.closed_form
    def test_exponential_constants(self, fig1_family):
        result = chiellini_check(fig1_family)
        assert result.q == pytest.approx(0.25, rel=1e-8), f"q = {result.q}"
        assert result.lambda_q == pytest.approx(-2.0, rel=1e-8), f"lambda = {result.lambda_q}"

    @pytest.mark.closed_form
    @pytest.mark.parametrize("korder", [1, 2, 3])
    def test_rational_constants(self, korder):
        family = RationalFamily.constrained(sigma=1.0, mu=1.0, gamma=1.0, chi=1.0, korder=korder, small_delta=1.0)
        result = chiellini_check(family)
        assert result.q == pytest.approx((korder + 1) / (korder + 2) ** 2, rel=1e-8)
        assert result.lambda_q == pytest.approx(-(korder + 2), rel=1e-8)
        assert result.branch == "minus"

    def test_custom_family_rejected(self, static):
        with pytest.raises(DomainError):
            chiellini_check(static)

    def test_perturbed_family_fails(self, fig1_family):
        with pytest.raises(IntegrabilityError):
            chiellini_check(fig1_family.perturbed(1e-2))


class TestDIntegration:
    """Tests for the RK4 d(t) integrator"""

    def test_matches_closed_form(self, exp_family):
        d0 = exp_family.sample(0.0).d
        solution = d_ode_solve(exp_family, d0, t_end=2.0)
        for t, value in zip(solution.times[::200], solution.values[::200]):
            expected = exp_family.sample(float(t)).d
            assert value == pytest.approx(expected, abs=1e-9), f"t={t}: {value} vs {expected}"
        assert solution.error_estimate <= 1e-10

    def test_step_underflow_raises(self, exp_family):
        with pytest.raises(StepSizeError):
            d_ode_solve(exp_family, 1.25, t_end=1.0, step=1e-3, tol=1e-30, min_step=1e-4)

    def test_invalid_inputs(self, exp_family):
        with pytest.raises(DomainError):
            d_ode_solve(exp_family, math.nan, t_end=1.0)
        with pytest.raises(DomainError):
            d_ode_solve(exp_family, 1.0, t_end=0.0)


class TestEPProperties:
    """Property-based checks over random times"""

    @pytest.mark.property
    @given(t=st.floats(min_value=0.0, max_value=8.0, allow_nan=False))
    @settings(max_examples=200, deadline=None)
    def test_exponential_residual_small(self, t):
        family = ExponentialFamily(sigma=1.0, delta=2.0, mu=1.0, gamma=1.0, cconst=2.0)
        assert abs(ep_residual(family.sample(t))) < 1e-9

    @pytest.mark.property
    @given(
        t=st.floats(min_value=0.0, max_value=20.0, allow_nan=False),
        korder=st.integers(min_value=1, max_value=6),
    )
    @settings(max_examples=200, deadline=None)
    def test_rational_residual_small(self, t, korder):
        family = RationalFamily.constrained(sigma=1.0, mu=1.0, gamma=1.0, chi=1.0, korder=korder, small_delta=1.0)
        assert abs(ep_residual(family.sample(t))) < 1e-9
