"""
Ermakov-Pinney machinery

Residual of the Ermakov-Pinney (EP) equation, the exponential and rational
closed-form solution families together with their generalized d(t), the
critical-time guard, the Chiellini integrability check and a numerical
integrator for the d(t) Riccati equation.
"""

import logging
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass, field, replace
from typing import Callable, ClassVar, Optional

import numpy as np
from numpy.typing import NDArray

from .errors import (
    ConstraintError,
    DomainError,
    IntegrabilityError,
    PoleError,
    StepSizeError,
)
from .model import CoefficientSet

logger = logging.getLogger(__name__)

__all__ = [
    "EPSample",
    "EPFamily",
    "ExponentialFamily",
    "RationalFamily",
    "CustomFamily",
    "static_family",
    "ep_residual",
    "exponential_sample",
    "rational_sample",
    "critical_time",
    "chiellini_check",
    "ChielliniResult",
    "d_ode_solve",
    "DSolution",
]

CONSTRAINT_TOL = 1e-12
CHIELLINI_TOL = 1e-8
CHIELLINI_POINTS = 64
CHIELLINI_T_MAX = 10.0


@dataclass(frozen=True)
class EPSample:
    """EP functions and their time derivatives at time t (xi = 1)"""

    t: float
    a: float
    a_dot: float
    b: float
    d: float
    d_dot: float
    rho: float
    rho_dot: float
    rho_ddot: float
    # Higher derivatives, needed only by the Chiellini check
    b_dot: float = math.nan
    a_ddot: float = math.nan
    d_ddot: float = math.nan

    def __post_init__(self):
        if not self.a > 0:
            raise DomainError(f"EP sample at t={self.t} has a={self.a} <= 0")
        if not self.rho > 0:
            raise DomainError(f"EP sample at t={self.t} has rho={self.rho} <= 0")

    @property
    def chirp(self) -> float:
        """(rho_dot - 2 rho d) / a, the momentum-position correlation rate"""
        return (self.rho_dot - 2 * self.rho * self.d) / self.a

    def coefficients(self, c: float = 0.0) -> CoefficientSet:
        """Hamiltonian coefficients carried by this sample"""
        return CoefficientSet(a=self.a, b=self.b, c=c, d=self.d)


def ep_residual(s: EPSample, xi: float = 1.0) -> float:
    """
    Residual of the EP equation

    rho'' - (a'/a) rho' + rho (ab - 2d' - 4d^2 + 2(a'/a) d) - xi^2 a^2 / rho^3
    """
    log_rate = s.a_dot / s.a
    return (
        s.rho_ddot
        - log_rate * s.rho_dot
        + s.rho * (s.a * s.b - 2 * s.d_dot - 4 * s.d**2 + 2 * log_rate * s.d)
        - xi**2 * s.a**2 / s.rho**3
    )


# =============================================================================
# Families
# =============================================================================

class EPFamily(ABC):
    """A closed-form solution set of the EP equation"""

    kind: ClassVar[str] = "custom"

    @abstractmethod
    def sample(self, t: float) -> EPSample:
        """Evaluate the EP functions at time t"""

    def constraint_residual(self) -> float:
        """Difference between the two sides of the parameter constraint"""
        return 0.0

    def standard_bopp_limit(self) -> "EPFamily":
        """Comparison family with d identically zero"""
        raise DomainError(f"{self.kind} family has no standard-Bopp limit")

    def time_at_rho(self, rho: float) -> float:
        """Inverse of rho(t)"""
        raise DomainError(f"{self.kind} family has no closed-form rho inverse")

    def perturbed(self, fraction: float) -> "EPFamily":
        """Copy with Delta scaled by (1 + fraction), skipping constraint validation"""
        raise DomainError(f"{self.kind} family cannot be perturbed")


def _check_constraint(relation: str, lhs: float, rhs: float) -> None:
    scale = max(1.0, abs(lhs), abs(rhs))
    if abs(lhs - rhs) > CONSTRAINT_TOL * scale:
        raise ConstraintError(relation, lhs, rhs)


def _require_positive(**values: float) -> None:
    for name, value in values.items():
        if not value > 0:
            raise DomainError(f"Parameter {name} must be positive, got {value}")


@dataclass(frozen=True)
class ExponentialFamily(EPFamily):
    """
    Exponential EP solutions

    a = sigma e^{-Gamma t}, b = Delta e^{Gamma t}, rho = mu e^{-Gamma t/2}
    and d(t) solving d' + 2d^2 + Gamma d = kconst. When kconst is omitted it
    is derived from the constraint 4 sigma Delta mu^4 - mu^4 Gamma^2
    - 4 sigma^2 = 8 mu^4 kconst.
    """

    kind: ClassVar[str] = "exponential"

    sigma: float
    delta: float
    mu: float
    gamma: float
    cconst: float
    kconst: Optional[float] = None
    strict: bool = field(default=True, compare=False)

    def __post_init__(self):
        _require_positive(sigma=self.sigma, delta=self.delta, mu=self.mu, gamma=self.gamma)
        if not self.cconst > 1:
            raise DomainError(f"Integration constant C must exceed 1, got {self.cconst}")

        derived = self._derived_kconst()
        if self.kconst is None:
            object.__setattr__(self, "kconst", derived)
        elif self.strict:
            _check_constraint(
                "4*sigma*Delta*mu^4 - mu^4*Gamma^2 - 4*sigma^2 = 8*mu^4*k",
                4 * self.sigma * self.delta * self.mu**4 - self.mu**4 * self.gamma**2 - 4 * self.sigma**2,
                8 * self.mu**4 * self.kconst,
            )

        if not self.gamma**2 + 8 * self.kconst > 0:
            raise DomainError(
                f"Gamma^2 + 8k must be positive, got {self.gamma**2 + 8 * self.kconst}"
            )

    def _derived_kconst(self) -> float:
        return (
            4 * self.sigma * self.delta * self.mu**4 - self.mu**4 * self.gamma**2 - 4 * self.sigma**2
        ) / (8 * self.mu**4)

    @property
    def rate(self) -> float:
        """sqrt(Gamma^2 + 8k)"""
        return math.sqrt(self.gamma**2 + 8 * self.kconst)

    def sample(self, t: float) -> EPSample:
        return exponential_sample(self, t)

    def constraint_residual(self) -> float:
        return 8 * self.mu**4 * (self._derived_kconst() - self.kconst)

    def standard_bopp_limit(self) -> "ExponentialFamily":
        """C -> infinity with Delta re-constrained to k = 0"""
        delta = (self.mu**4 * self.gamma**2 + 4 * self.sigma**2) / (4 * self.sigma * self.mu**4)
        return replace(self, delta=delta, cconst=math.inf, kconst=0.0, strict=True)

    def time_at_rho(self, rho: float) -> float:
        return -2 * math.log(rho / self.mu) / self.gamma

    def perturbed(self, fraction: float) -> "ExponentialFamily":
        return replace(self, delta=self.delta * (1 + fraction), strict=False)


@dataclass(frozen=True)
class RationalFamily(EPFamily):
    """
    Rational EP solutions in s = Gamma t + chi

    a ~ s^{-(k+2)/k}, b ~ s^{-(k-2)/k}, rho ~ s^{-1/k}, d = small_delta / s,
    with 4k^2 mu^4 delta(delta + Gamma/k) = (k+2)^2 (sigma Delta mu^4 - sigma^2) - mu^4 Gamma^2.
    """

    kind: ClassVar[str] = "rational"

    sigma: float
    delta: float
    mu: float
    gamma: float
    chi: float
    korder: int
    small_delta: float
    strict: bool = field(default=True, compare=False)

    def __post_init__(self):
        _require_positive(
            sigma=self.sigma, delta=self.delta, mu=self.mu, gamma=self.gamma, chi=self.chi
        )
        if int(self.korder) != self.korder or self.korder < 1:
            raise DomainError(f"Rational order k must be a positive integer, got {self.korder}")
        if self.small_delta < 0:
            raise DomainError(f"delta must be non-negative, got {self.small_delta}")
        if self.strict:
            lhs, rhs = self._constraint_sides()
            _check_constraint(
                "4*k^2*mu^4*delta*(delta + Gamma/k) = (k+2)^2*(sigma*Delta*mu^4 - sigma^2) - mu^4*Gamma^2",
                lhs,
                rhs,
            )

    @classmethod
    def constrained(
        cls,
        sigma: float,
        mu: float,
        gamma: float,
        chi: float,
        korder: int,
        small_delta: float,
    ) -> "RationalFamily":
        """Family with Delta solved from the constraint"""
        mu4 = mu**4
        lhs = 4 * korder**2 * mu4 * small_delta * (small_delta + gamma / korder)
        delta = ((lhs + mu4 * gamma**2) / (korder + 2) ** 2 + sigma**2) / (sigma * mu4)
        return cls(
            sigma=sigma, delta=delta, mu=mu, gamma=gamma, chi=chi, korder=korder, small_delta=small_delta
        )

    def _constraint_sides(self):
        k, mu4 = self.korder, self.mu**4
        lhs = 4 * k**2 * mu4 * self.small_delta * (self.small_delta + self.gamma / k)
        rhs = (k + 2) ** 2 * (self.sigma * self.delta * mu4 - self.sigma**2) - mu4 * self.gamma**2
        return lhs, rhs

    def sample(self, t: float) -> EPSample:
        return rational_sample(self, t)

    def constraint_residual(self) -> float:
        lhs, rhs = self._constraint_sides()
        return lhs - rhs

    def standard_bopp_limit(self) -> "RationalFamily":
        """delta -> 0 with Delta re-constrained"""
        k, mu4 = self.korder, self.mu**4
        delta = (mu4 * self.gamma**2 / (k + 2) ** 2 + self.sigma**2) / (self.sigma * mu4)
        return replace(self, delta=delta, small_delta=0.0, strict=True)

    def time_at_rho(self, rho: float) -> float:
        k = self.korder
        shifted = (k + 2) / k * (self.mu / rho) ** k
        return (shifted - self.chi) / self.gamma

    def perturbed(self, fraction: float) -> "RationalFamily":
        return replace(self, delta=self.delta * (1 + fraction), strict=False)


@dataclass(frozen=True)
class CustomFamily(EPFamily):
    """Caller-supplied evaluator t -> EPSample"""

    kind: ClassVar[str] = "custom"

    evaluator: Callable[[float], EPSample]
    label: str = "custom"

    def sample(self, t: float) -> EPSample:
        return self.evaluator(t)


def _static_sample(t: float) -> EPSample:
    return EPSample(
        t=t, a=1.0, a_dot=0.0, b=1.0, d=0.0, d_dot=0.0, rho=1.0, rho_dot=0.0, rho_ddot=0.0,
        b_dot=0.0, a_ddot=0.0, d_ddot=0.0,
    )


def static_family() -> CustomFamily:
    """Time-independent isotropic oscillator: a = b = rho = 1, d = 0"""
    return CustomFamily(evaluator=_static_sample, label="static")


# =============================================================================
# Sampling
# =============================================================================

def critical_time(f: ExponentialFamily) -> float:
    """t0 = -log(C) / sqrt(Gamma^2 + 8k), where d(t) diverges; negative for C > 1"""
    return -math.log(f.cconst) / f.rate


def exponential_sample(f: ExponentialFamily, t: float) -> EPSample:
    """
    Exponential family at time t

    d(t) = [rate (C e^{rate t} + 1)/(C e^{rate t} - 1) - Gamma] / 4 is
    evaluated as (rate - Gamma)/4 + rate*w/2 with w = 1/(C e^{rate t} - 1).

    Raises:
        PoleError: If t <= critical_time(f)
    """
    rate = f.rate
    if math.isinf(f.cconst):
        w = 0.0
    else:
        if t <= critical_time(f):
            raise PoleError(f"t={t} is at or before the critical time {critical_time(f)}")
        decay = math.exp(-rate * t)
        w = decay / ((f.cconst - 1) - math.expm1(-rate * t))

    a = f.sigma * math.exp(-f.gamma * t)
    b = f.delta * math.exp(f.gamma * t)
    rho = f.mu * math.exp(-f.gamma * t / 2)
    d = 2 * f.kconst / (rate + f.gamma) + rate * w / 2
    return EPSample(
        t=t,
        a=a,
        a_dot=-f.gamma * a,
        b=b,
        d=d,
        d_dot=-(rate**2) / 2 * w * (1 + w),
        rho=rho,
        rho_dot=-f.gamma * rho / 2,
        rho_ddot=f.gamma**2 * rho / 4,
        b_dot=f.gamma * b,
        a_ddot=f.gamma**2 * a,
        d_ddot=rate**3 / 2 * w * (1 + w) * (1 + 2 * w),
    )


def rational_sample(f: RationalFamily, t: float) -> EPSample:
    """
    Rational family at time t

    Raises:
        PoleError: If Gamma t + chi <= 0
    """
    shifted = f.gamma * t + f.chi
    if shifted <= 0:
        raise PoleError(f"Gamma*t + chi = {shifted} <= 0 at t={t}")

    k = f.korder
    ratio = (k + 2) / k
    a_power = (k + 2) / k
    a = f.sigma * ratio**a_power / shifted**a_power
    a_dot = -a_power * f.gamma * a / shifted

    if k == 2:
        b, b_dot = f.delta, 0.0
    else:
        b_power = (k - 2) / k
        b = f.delta * (k / (k + 2)) ** ((2 - k) / k) / shifted**b_power
        b_dot = -b_power * f.gamma * b / shifted

    rho = f.mu * ratio ** (1 / k) / shifted ** (1 / k)
    return EPSample(
        t=t,
        a=a,
        a_dot=a_dot,
        b=b,
        d=f.small_delta / shifted,
        d_dot=-f.small_delta * f.gamma / shifted**2,
        rho=rho,
        rho_dot=-f.gamma * rho / (k * shifted),
        rho_ddot=(k + 1) / k**2 * f.gamma**2 * rho / shifted**2,
        b_dot=b_dot,
        a_ddot=a_power * (a_power + 1) * f.gamma**2 * a / shifted**2,
        d_ddot=2 * f.small_delta * f.gamma**2 / shifted**3,
    )


# =============================================================================
# Chiellini integrability
# =============================================================================

@dataclass(frozen=True)
class ChielliniResult:
    """Fitted Chiellini constants and the worst relative residual"""

    q: float
    lambda_q: float
    max_residual: float
    branch: str  # "minus" or "plus" root of q*lambda^2 + lambda + 1 = 0


def _chiellini_components(s: EPSample):
    """eta, g, h and d(h/g)/d rho from the EP coefficients of one sample"""
    log_rate = s.a_dot / s.a
    log_rate_dot = (s.a_ddot * s.a - s.a_dot**2) / s.a**2

    kernel = s.a * s.b - 2 * s.d_dot - 4 * s.d**2 + 2 * log_rate * s.d
    kernel_dot = (
        s.a_dot * s.b
        + s.a * s.b_dot
        - 2 * s.d_ddot
        - 8 * s.d * s.d_dot
        + 2 * log_rate_dot * s.d
        + 2 * log_rate * s.d_dot
    )

    g = -log_rate
    g_dot = -log_rate_dot
    h = s.rho * kernel - s.a**2 / s.rho**3
    h_dot = (
        s.rho_dot * kernel
        + s.rho * kernel_dot
        - (2 * s.a * s.a_dot / s.rho**3 - 3 * s.a**2 * s.rho_dot / s.rho**4)
    )
    ratio_slope = (h_dot * g - h * g_dot) / g**2 / s.rho_dot
    return s.rho_dot, g, h, ratio_slope


def chiellini_check(
    f: EPFamily,
    t_max: float = CHIELLINI_T_MAX,
    points: int = CHIELLINI_POINTS,
    tol: float = CHIELLINI_TOL,
) -> ChielliniResult:
    """
    Verify the Chiellini integrability condition on a rho grid

    Writing the EP equation as rho'' + g rho' + h = 0 with eta = rho', the
    condition d/drho (h/g) = q g and the solution eta = lambda_q h/g are
    checked on log-spaced rho values covering rho([0, t_max]); q and lambda_q
    are least-squares fits and lambda_q must be a root of
    q lambda^2 + lambda + 1 = 0.

    Returns:
        ChielliniResult with the fitted constants

    Raises:
        IntegrabilityError: If the worst relative residual exceeds tol
    """
    if not isinstance(f, (ExponentialFamily, RationalFamily)):
        raise DomainError(f"Chiellini check needs an exponential or rational family, got {f.kind}")

    rho_start, rho_end = f.sample(0.0).rho, f.sample(t_max).rho
    rho_grid = np.geomspace(min(rho_start, rho_end), max(rho_start, rho_end), points)
    samples = [f.sample(f.time_at_rho(float(rho))) for rho in rho_grid]
    eta, g, h, slope = (np.array(column) for column in zip(*map(_chiellini_components, samples)))

    q = float(np.sum(slope * g) / np.sum(g * g))
    h_over_g = h / g
    lambda_q = float(np.sum(eta * h_over_g) / np.sum(h_over_g * h_over_g))

    q_deviation = float(np.max(np.abs(slope / g - q))) / abs(q)
    lambda_deviation = float(np.max(np.abs(eta / h_over_g - lambda_q))) / abs(lambda_q)

    discriminant = 1 - 4 * q
    if abs(discriminant) <= 1e-10:
        discriminant = 0.0
    if discriminant < 0:
        raise IntegrabilityError(f"q = {q} > 1/4 admits no real lambda_q")
    roots = {
        "minus": (-1 - math.sqrt(discriminant)) / (2 * q),
        "plus": (-1 + math.sqrt(discriminant)) / (2 * q),
    }
    branch = min(roots, key=lambda name: abs(roots[name] - lambda_q))
    root_deviation = abs(roots[branch] - lambda_q) / abs(lambda_q)

    max_residual = max(q_deviation, lambda_deviation, root_deviation)
    logger.debug("Chiellini q=%r lambda=%r residual=%.2e", q, lambda_q, max_residual)
    if max_residual > tol:
        raise IntegrabilityError(
            f"Chiellini condition fails for {f.kind} family: residual {max_residual:.3e} > {tol:.1e} "
            f"(q deviation {q_deviation:.2e}, lambda deviation {lambda_deviation:.2e})"
        )
    return ChielliniResult(q=q, lambda_q=lambda_q, max_residual=max_residual, branch=branch)


# =============================================================================
# d(t) integration
# =============================================================================

@dataclass(frozen=True, eq=False)
class DSolution:
    """d(t) sampled on a uniform grid"""

    times: NDArray[np.float64]
    values: NDArray[np.float64]
    step: float
    error_estimate: float


def _rk4(rhs: Callable[[float], float], d0: float, step: float, steps: int) -> NDArray[np.float64]:
    values = np.empty(steps + 1)
    values[0] = y = d0
    for i in range(steps):
        k1 = rhs(y)
        k2 = rhs(y + step * k1 / 2)
        k3 = rhs(y + step * k2 / 2)
        k4 = rhs(y + step * k3)
        y = y + step / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        values[i + 1] = y
    return values


def d_ode_solve(
    f: ExponentialFamily,
    d0: float,
    t_end: float,
    step: float = 1e-3,
    tol: float = 1e-10,
    min_step: float = 1e-9,
) -> DSolution:
    """
    Integrate d' = k - 2 d^2 - Gamma d from d(0) = d0

    Classical RK4 at fixed step; a half-step run gives the Richardson
    estimate |y_h - y_{h/2}| / 15, and the step is halved until it meets tol.

    Raises:
        DomainError: If d0 is not finite or t_end <= 0
        StepSizeError: If the step falls below min_step
    """
    if not math.isfinite(d0):
        raise DomainError(f"Initial value must be finite, got {d0}")
    if not t_end > 0:
        raise DomainError(f"t_end must be positive, got {t_end}")

    def rhs(d: float) -> float:
        return f.kconst - 2 * d * d - f.gamma * d

    while True:
        steps = max(1, math.ceil(t_end / step))
        h = t_end / steps
        coarse = _rk4(rhs, d0, h, steps)
        fine = _rk4(rhs, d0, h / 2, 2 * steps)[::2]
        error = float(np.max(np.abs(coarse - fine))) / 15
        if np.isfinite(error) and error <= tol:
            break
        step /= 2
        logger.debug("Halving d(t) step to %.3e (error estimate %.3e)", step, error)
        if step < min_step:
            raise StepSizeError(
                f"d(t) integration step underflow below {min_step:.1e} "
                f"(error estimate {error:.3e} > {tol:.1e})"
            )

    return DSolution(
        times=np.linspace(0.0, t_end, steps + 1),
        values=fine,
        step=h,
        error_estimate=error,
    )
