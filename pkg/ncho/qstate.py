"""
Invariant eigenstates and their expectation values

Closed forms for the eigenfunctions, Lewis phase, second moments, energy
and uncertainty products, plus an independent quadrature path that applies
the position/momentum differential operators to the explicit wavefunction.
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional, Sequence, Tuple

import numpy as np
from numpy.polynomial.legendre import leggauss
from numpy.typing import NDArray

from .ep import EPFamily, EPSample, ExponentialFamily, RationalFamily
from .errors import DomainError, MissingCoefficientError
from .model import CoefficientSet, NCParams, OscillatorConstants, recover_nc_parameters
from .specfun import LaguerreIndex, gauss_laguerre, laguerre_derivative, laguerre_eval, quadrature_order

logger = logging.getLogger(__name__)

__all__ = [
    "QuantumNumbers",
    "StateContext",
    "Observable",
    "CommutativeUncertainty",
    "NCSecondMoments",
    "NCUncertainty",
    "wavefunction",
    "lewis_phase",
    "expect_x",
    "expect_x_squared",
    "expect_p",
    "expect_p_squared",
    "expect_xp_symmetric",
    "expect_angular",
    "expect_angular_halves",
    "expect_cross_bilinears",
    "expect_invariant",
    "energy_expectation",
    "energy_from_components",
    "energy_closed_form",
    "uncertainties_commutative",
    "nc_second_moments",
    "nc_second_moments_assembled",
    "uncertainties_noncommutative",
    "quadrature_expectation",
    "quadrature_matrix_element",
    "quadrature_invariant",
    "gram_matrix",
    "recovered_c_supplier",
]

ANGULAR_POINTS = 256
PHASE_NODES = 64

CSupplier = Callable[[float], float]


@dataclass(frozen=True)
class QuantumNumbers:
    """Labels (n, m) of the eigenstate phi_{n, m-n}"""

    n: int
    m: int

    def __post_init__(self):
        for name, value in (("n", self.n), ("m", self.m)):
            if int(value) != value or value < 0:
                raise DomainError(f"Quantum number {name} must be a non-negative integer, got {value}")

    @property
    def l(self) -> int:
        """Angular index m - n"""
        return self.m - self.n

    @property
    def weight(self) -> float:
        """(m + n + 1) / 2, the common factor of all second moments"""
        return (self.m + self.n + 1) / 2

    def require_regular(self) -> None:
        if self.n < self.m:
            raise DomainError(
                f"Eigenfunction requires n >= m, got n={self.n}, m={self.m} (r^(n-m) singular at the origin)"
            )

    def __str__(self) -> str:
        return f"(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class StateContext:
    """An eigenstate label bound to an EP family and an optional c(t)"""

    qn: QuantumNumbers
    family: EPFamily
    c_supplier: Optional[CSupplier] = None

    def sample(self, t: float) -> EPSample:
        return self.family.sample(t)

    def c_at(self, t: float) -> float:
        if self.c_supplier is None:
            raise MissingCoefficientError(
                f"State {self.qn} needs the Hamiltonian coefficient c(t) but no c supplier was given"
            )
        return float(self.c_supplier(t))


# =============================================================================
# Wavefunction and phase
# =============================================================================

def lewis_phase(ctx: StateContext, t: float) -> float:
    """
    Lewis phase m * int_0^t [c(tau) - a(tau)/rho(tau)^2] dtau

    Uses a fixed 64-point Gauss-Legendre rule, so the value is deterministic.

    Raises:
        MissingCoefficientError: If m != 0 and no c supplier is set
    """
    m = ctx.qn.m
    if m == 0 or t == 0:
        return 0.0
    if ctx.c_supplier is None:
        raise MissingCoefficientError(f"Lewis phase of state {ctx.qn} needs c(t)")

    nodes, weights = leggauss(PHASE_NODES)
    taus = t / 2 * (nodes + 1)
    integrand = []
    for tau in taus:
        s = ctx.sample(float(tau))
        integrand.append(ctx.c_at(float(tau)) - s.a / s.rho**2)
    return float(m * t / 2 * np.dot(weights, integrand))


def _chirp_factor(s: EPSample) -> complex:
    """f = (a - i rho (rho_dot - 2 rho d)) / (a rho^2), with Re f = 1/rho^2"""
    return (s.a - 1j * s.rho * (s.rho_dot - 2 * s.rho * s.d)) / (s.a * s.rho**2)


def _prefactor(qn: QuantumNumbers, rho: float) -> complex:
    n, m = qn.n, qn.m
    return (
        (1j) ** (-m)
        * math.sqrt(math.factorial(m))
        * rho ** (m - n - 1)
        / math.sqrt(math.factorial(n) * math.pi)
    )


def wavefunction(
    ctx: StateContext,
    r: float,
    theta_ang: float,
    t: float,
    include_phase: bool = True,
) -> complex:
    """
    Eigenfunction psi_{n, m-n}(r, theta, t) in polar coordinates

    With include_phase=False the Lewis phase is replaced by zero, which
    leaves |psi|^2 and every expectation value unchanged.

    Raises:
        DomainError: If n < m or r < 0
    """
    qn = ctx.qn
    qn.require_regular()
    if r < 0:
        raise DomainError(f"Radius must be non-negative, got {r}")

    s = ctx.sample(t)
    alpha = qn.n - qn.m
    phase = lewis_phase(ctx, t) if include_phase else 0.0
    radial = (
        r**alpha
        * np.exp(-_chirp_factor(s) * r**2 / 2)
        * laguerre_eval(LaguerreIndex(qn.m, alpha), r**2 / s.rho**2)
    )
    return complex(
        _prefactor(qn, s.rho) * np.exp(1j * (phase + qn.l * theta_ang)) * radial
    )


# =============================================================================
# Closed-form expectation values
# =============================================================================

def expect_x(ctx: StateContext, t: float) -> float:
    """<x_i> = 0 for both components"""
    return 0.0


def expect_p(ctx: StateContext, t: float) -> float:
    """<p_i> = 0 for both components"""
    return 0.0


def expect_x_squared(ctx: StateContext, t: float) -> float:
    """<x_i^2> = (m + n + 1) rho^2 / 2"""
    return ctx.qn.weight * ctx.sample(t).rho ** 2


def expect_p_squared(ctx: StateContext, t: float) -> float:
    """<p_i^2> = (m + n + 1)/2 [1/rho^2 + (rho_dot - 2 rho d)^2 / a^2]"""
    s = ctx.sample(t)
    return ctx.qn.weight * (1 / s.rho**2 + s.chirp**2)


def expect_xp_symmetric(ctx: StateContext, t: float) -> float:
    """<x_i p_i + p_i x_i> = (m + n + 1) rho (rho_dot - 2 rho d) / a"""
    s = ctx.sample(t)
    return 2 * ctx.qn.weight * s.rho * s.chirp


def expect_angular(ctx: StateContext, t: float) -> float:
    """<x2 p1 - p2 x1> = n - m"""
    return float(ctx.qn.n - ctx.qn.m)


def expect_angular_halves(ctx: StateContext, t: float) -> Tuple[float, float]:
    """(<x2 p1>, <p2 x1>) = ((n - m)/2, (m - n)/2)"""
    half = (ctx.qn.n - ctx.qn.m) / 2
    return half, -half


def expect_cross_bilinears(ctx: StateContext, t: float) -> Tuple[float, float]:
    """(<x1 x2>, <p1 p2>), both zero"""
    return 0.0, 0.0


def expect_invariant(ctx: StateContext, t: float) -> float:
    """<I> = 2(n + m + 1), the invariant eigenvalue"""
    return 4 * ctx.qn.weight


# =============================================================================
# Energy
# =============================================================================

def _c_term(ctx: StateContext, t: float) -> float:
    if ctx.qn.n == ctx.qn.m:
        return 0.0
    return ctx.c_at(t) * (ctx.qn.n - ctx.qn.m)


def energy_expectation(ctx: StateContext, t: float) -> float:
    """
    <H> = (n+m+1)/2 [b rho^2 + a/rho^2 + (rho_dot^2 - 4 rho^2 d^2)/a] + c (n - m)

    Raises:
        MissingCoefficientError: If n != m and no c supplier is set
    """
    s = ctx.sample(t)
    bracket = s.b * s.rho**2 + s.a / s.rho**2 + (s.rho_dot**2 - 4 * s.rho**2 * s.d**2) / s.a
    return ctx.qn.weight * bracket + _c_term(ctx, t)


def energy_from_components(ctx: StateContext, t: float) -> float:
    """<H> assembled term by term from the component expectation values"""
    s = ctx.sample(t)
    c = ctx.c_at(t) if ctx.qn.n != ctx.qn.m else 0.0
    x_half, p_half = expect_angular_halves(ctx, t)
    return (
        s.a / 2 * 2 * expect_p_squared(ctx, t)
        + s.b / 2 * 2 * expect_x_squared(ctx, t)
        + c * (x_half - p_half)
        + s.d * 2 * expect_xp_symmetric(ctx, t)
    )


def energy_closed_form(family: EPFamily, qn: QuantumNumbers, t: float) -> float:
    """
    Family-level reduced energy for n = m

    Exponential: (2m+1)[(Delta mu^2 + sigma/mu^2 + Gamma^2 mu^2/(4 sigma))/2 - 2 mu^2 d^2/sigma],
    which for k = 0 is (2m+1)[Delta mu^2 - Gamma^2 mu^2 / (2 sigma (C e^{Gamma t} - 1)^2)].
    Rational: (2m+1)/s [(k+2)^2 (sigma^2 + Delta mu^4 sigma) + Gamma^2 mu^4 - 4 mu^4 delta^2 k^2]
    / (2 (k+2) mu^2 k sigma) with s = Gamma t + chi.

    Raises:
        DomainError: If n != m or the family has no reduced form
    """
    if qn.n != qn.m:
        raise DomainError(f"Reduced energy is only defined for n = m, got {qn}")
    level = 2 * qn.m + 1

    if isinstance(family, ExponentialFamily):
        sigma, delta, mu, gamma = family.sigma, family.delta, family.mu, family.gamma
        if family.kconst == 0:
            if math.isinf(family.cconst):
                return level * delta * mu**2
            pole = family.cconst * math.exp(gamma * t) - 1
            return level * (delta * mu**2 - gamma**2 * mu**2 / (2 * sigma * pole**2))
        d = family.sample(t).d
        static = (delta * mu**2 + sigma / mu**2 + gamma**2 * mu**2 / (4 * sigma)) / 2
        return level * (static - 2 * mu**2 * d**2 / sigma)

    if isinstance(family, RationalFamily):
        sigma, delta, mu, gamma = family.sigma, family.delta, family.mu, family.gamma
        k, small = family.korder, family.small_delta
        shifted = gamma * t + family.chi
        numerator = (k + 2) ** 2 * (sigma**2 + delta * mu**4 * sigma) + gamma**2 * mu**4 - 4 * mu**4 * small**2 * k**2
        return level / shifted * numerator / (2 * (k + 2) * mu**2 * k * sigma)

    raise DomainError(f"No reduced energy for {family.kind} family")


# =============================================================================
# Uncertainty products
# =============================================================================

@dataclass(frozen=True)
class CommutativeUncertainty:
    dx1: float
    dx2: float
    dp1: float
    dp2: float
    dx_dp: float


@dataclass(frozen=True)
class NCSecondMoments:
    """<X_i^2> and <P_i^2> of the NC operators"""

    x1_sq: float
    x2_sq: float
    p1_sq: float
    p2_sq: float


@dataclass(frozen=True)
class NCUncertainty:
    dX_dY: float
    dPX_dPY: float
    dX_dPX: float


def uncertainties_commutative(ctx: StateContext, t: float) -> CommutativeUncertainty:
    """Delta x_i, Delta p_i and Delta x_i Delta p_i = (m+n+1)/(2a) sqrt(a^2 + rho^2 (rho_dot - 2 rho d)^2)"""
    s = ctx.sample(t)
    k = ctx.qn.weight
    spread = math.sqrt(s.a**2 + s.rho**2 * (s.rho_dot - 2 * s.rho * s.d) ** 2)
    dx = math.sqrt(k) * s.rho
    dp = math.sqrt(k) * spread / (s.a * s.rho)
    return CommutativeUncertainty(dx1=dx, dx2=dx, dp1=dp, dp2=dp, dx_dp=k * spread / s.a)


def nc_second_moments(ctx: StateContext, t: float, nc: NCParams) -> NCSecondMoments:
    """
    Closed-form NC second moments

    <X^2> = K[rho^2 (1 - theta Omega/4) + theta^2/4 (1/rho^2 + beta^2) - theta s rho (rho_dot - 2 rho d)/(2a)] - (m-n) theta/2
    <P^2> = K[(1/rho^2 + beta^2)(1 - theta Omega/4) + Omega^2 rho^2/4 + Omega s rho (rho_dot - 2 rho d)/(2a)] - (m-n) Omega/2

    with K = (m+n+1)/2, beta = (rho_dot - 2 rho d)/a and s = sqrt(-theta Omega);
    both components share the same value.
    """
    s = ctx.sample(t)
    k = ctx.qn.weight
    theta, big_omega, root = nc.theta, nc.omega_nc, nc.root
    shrink = 1 - theta * big_omega / 4
    momentum = 1 / s.rho**2 + s.chirp**2
    cross = s.rho * (s.rho_dot - 2 * s.rho * s.d) / (2 * s.a)
    l = ctx.qn.m - ctx.qn.n

    x_sq = k * (s.rho**2 * shrink + theta**2 / 4 * momentum - theta * root * cross) - l * theta / 2
    p_sq = k * (momentum * shrink + big_omega**2 * s.rho**2 / 4 + big_omega * root * cross) - l * big_omega / 2
    return NCSecondMoments(x1_sq=x_sq, x2_sq=x_sq, p1_sq=p_sq, p2_sq=p_sq)


def nc_second_moments_assembled(ctx: StateContext, t: float, nc: NCParams) -> NCSecondMoments:
    """
    NC second moments expanded through the Bopp shift

    Each component is assembled from <x^2>, <p^2>, <xp + px>, the angular
    halves and the cross bilinears, independently of nc_second_moments.
    """
    theta, big_omega, root = nc.theta, nc.omega_nc, nc.root
    x_sq = expect_x_squared(ctx, t)
    p_sq = expect_p_squared(ctx, t)
    xp = expect_xp_symmetric(ctx, t)
    x2p1, p2x1 = expect_angular_halves(ctx, t)
    x1p2 = p2x1  # x1 and p2 commute
    x1x2, p1p2 = expect_cross_bilinears(ctx, t)

    big_x1 = x_sq + theta**2 / 4 * p_sq + root**2 / 4 * x_sq - theta * x1p2 + root * x1x2 - theta * root / 4 * xp
    big_x2 = x_sq + theta**2 / 4 * p_sq + root**2 / 4 * x_sq + theta * x2p1 - root * x1x2 - theta * root / 4 * xp
    big_p1 = p_sq + big_omega**2 / 4 * x_sq + root**2 / 4 * p_sq + big_omega * x2p1 + root * p1p2 + big_omega * root / 4 * xp
    big_p2 = p_sq + big_omega**2 / 4 * x_sq + root**2 / 4 * p_sq - big_omega * x1p2 - root * p1p2 + big_omega * root / 4 * xp
    return NCSecondMoments(x1_sq=big_x1, x2_sq=big_x2, p1_sq=big_p1, p2_sq=big_p2)


def uncertainties_noncommutative(ctx: StateContext, t: float, nc: NCParams) -> NCUncertainty:
    """
    NC uncertainty products Delta X1 Delta X2, Delta P1 Delta P2 and Delta X_i Delta P_i

    Raises:
        DomainError: If <X^2> or <P^2> is negative
    """
    moments = nc_second_moments(ctx, t, nc)
    for label, value in (("<X^2>", moments.x1_sq), ("<P^2>", moments.p1_sq)):
        if value < 0:
            raise DomainError(
                f"{label} = {value!r} < 0 for {ctx.qn} at t={t} with theta={nc.theta}, Omega={nc.omega_nc}"
            )
    return NCUncertainty(
        dX_dY=math.sqrt(moments.x1_sq * moments.x2_sq),
        dPX_dPY=math.sqrt(moments.p1_sq * moments.p2_sq),
        dX_dPX=math.sqrt(moments.x1_sq * moments.p1_sq),
    )


# =============================================================================
# Quadrature oracle
# =============================================================================

class Observable(Enum):
    """Operators available to the quadrature path"""

    NORM = "norm"
    X1 = "x1"
    X2 = "x2"
    P1 = "p1"
    P2 = "p2"
    X1_SQ = "x1^2"
    X2_SQ = "x2^2"
    P1_SQ = "p1^2"
    P2_SQ = "p2^2"
    XP1 = "x1p1+p1x1"
    XP2 = "x2p2+p2x2"
    X1P2 = "x1p2"
    X2P1 = "x2p1"
    ANGULAR = "x2p1-p2x1"
    X1X2 = "x1x2"
    P1P2 = "p1p2"


@dataclass(frozen=True, eq=False)
class _Grid:
    """Polar grid: Gauss-Laguerre in z = r^2/rho^2 times uniform angles"""

    x1: NDArray[np.float64]
    x2: NDArray[np.float64]
    z: NDArray[np.float64]
    weights: NDArray[np.float64]  # radial weight times angular step


def _grid(rho: float, order: int) -> _Grid:
    rule = gauss_laguerre(order, 0.0)
    angles = 2 * math.pi * np.arange(ANGULAR_POINTS) / ANGULAR_POINTS
    z = rule.nodes[:, None]
    r = rho * np.sqrt(z)
    return _Grid(
        x1=r * np.cos(angles)[None, :],
        x2=r * np.sin(angles)[None, :],
        z=np.broadcast_to(z, (order, ANGULAR_POINTS)),
        weights=np.broadcast_to(rule.weights[:, None] * (2 * math.pi / ANGULAR_POINTS), (order, ANGULAR_POINTS)),
    )


@dataclass(frozen=True, eq=False)
class _Derivatives:
    """psi without its Gaussian factor e^{-f r^2/2}, with first and second partials"""

    value: NDArray[np.complex128]
    d1: NDArray[np.complex128]
    d2: NDArray[np.complex128]
    d11: NDArray[np.complex128]
    d22: NDArray[np.complex128]
    d12: NDArray[np.complex128]


def _stripped_state(qn: QuantumNumbers, s: EPSample, grid: _Grid, phase: float) -> _Derivatives:
    """
    Analytic derivatives of Q w^l' h(r^2) with w = x1 - i x2, l' = n - m

    h carries the Laguerre factor and the chain-rule terms of the Gaussian,
    so e^{-f r^2/2} can be pulled out of every operator application.
    """
    qn.require_regular()
    alpha = qn.n - qn.m
    f = _chirp_factor(s)
    rho2 = s.rho**2
    x1, x2, z = grid.x1, grid.x2, grid.z

    idx = LaguerreIndex(qn.m, alpha)
    lag0 = laguerre_eval(idx, z)
    lag1 = laguerre_derivative(idx, z)
    lag2 = laguerre_derivative(idx, z, times=2)
    h0 = lag0
    h1 = -f / 2 * lag0 + lag1 / rho2
    h2 = f**2 / 4 * lag0 - f * lag1 / rho2 + lag2 / rho2**2

    w = x1 - 1j * x2
    w0 = w**alpha
    w1 = alpha * w ** (alpha - 1) if alpha >= 1 else np.zeros_like(w)
    w2 = alpha * (alpha - 1) * w ** (alpha - 2) if alpha >= 2 else np.zeros_like(w)

    q = _prefactor(qn, s.rho) * np.exp(1j * phase)
    return _Derivatives(
        value=q * w0 * h0,
        d1=q * (w1 * h0 + w0 * h1 * 2 * x1),
        d2=q * (-1j * w1 * h0 + w0 * h1 * 2 * x2),
        d11=q * (w2 * h0 + 4 * w1 * h1 * x1 + w0 * (4 * h2 * x1**2 + 2 * h1)),
        d22=q * (-w2 * h0 - 4j * w1 * h1 * x2 + w0 * (4 * h2 * x2**2 + 2 * h1)),
        d12=q * (-1j * w2 * h0 + 2 * w1 * h1 * x2 - 2j * w1 * h1 * x1 + 4 * w0 * h2 * x1 * x2),
    )


def _apply(observable: Observable, psi: _Derivatives, grid: _Grid) -> NDArray[np.complex128]:
    x1, x2 = grid.x1, grid.x2
    actions = {
        Observable.NORM: lambda: psi.value,
        Observable.X1: lambda: x1 * psi.value,
        Observable.X2: lambda: x2 * psi.value,
        Observable.P1: lambda: -1j * psi.d1,
        Observable.P2: lambda: -1j * psi.d2,
        Observable.X1_SQ: lambda: x1**2 * psi.value,
        Observable.X2_SQ: lambda: x2**2 * psi.value,
        Observable.P1_SQ: lambda: -psi.d11,
        Observable.P2_SQ: lambda: -psi.d22,
        Observable.XP1: lambda: -1j * (2 * x1 * psi.d1 + psi.value),
        Observable.XP2: lambda: -1j * (2 * x2 * psi.d2 + psi.value),
        Observable.X1P2: lambda: -1j * x1 * psi.d2,
        Observable.X2P1: lambda: -1j * x2 * psi.d1,
        Observable.ANGULAR: lambda: -1j * (x2 * psi.d1 - x1 * psi.d2),
        Observable.X1X2: lambda: x1 * x2 * psi.value,
        Observable.P1P2: lambda: -psi.d12,
    }
    return actions[observable]()


def quadrature_matrix_element(
    bra: StateContext,
    ket: StateContext,
    t: float,
    observable: Observable = Observable.NORM,
    include_phase: bool = False,
    margin: Optional[int] = None,
) -> complex:
    """
    <bra| A |ket> by 2D quadrature of the explicit wavefunctions

    The radial integral uses an exact-degree Gauss-Laguerre rule in
    z = r^2/rho^2 (the Gaussian factors combine into e^{-z}); the angular
    integral uses the 256-point trapezoid rule. Both states must share the
    same family.
    """
    if bra.family is not ket.family:
        raise DomainError("Quadrature matrix elements need both states on the same EP family")
    s = ket.sample(t)
    degree = max(bra.qn.n + bra.qn.m, ket.qn.n + ket.qn.m) + 2
    grid = _grid(s.rho, quadrature_order(degree, margin))

    bra_phase = lewis_phase(bra, t) if include_phase else 0.0
    ket_phase = lewis_phase(ket, t) if include_phase else 0.0
    left = _stripped_state(bra.qn, s, grid, bra_phase).value
    right = _apply(observable, _stripped_state(ket.qn, s, grid, ket_phase), grid)
    return complex(s.rho**2 / 2 * np.sum(grid.weights * np.conj(left) * right))


def quadrature_expectation(
    ctx: StateContext,
    t: float,
    observable: Observable,
    include_phase: bool = False,
    margin: Optional[int] = None,
) -> float:
    """Real part of <psi| A |psi> from the quadrature path"""
    value = quadrature_matrix_element(ctx, ctx, t, observable, include_phase, margin)
    if abs(value.imag) > 1e-9 * max(1.0, abs(value.real)):
        logger.warning("Expectation of %s has imaginary part %.3e", observable.value, value.imag)
    return value.real


def quadrature_invariant(ctx: StateContext, t: float, margin: Optional[int] = None) -> float:
    """<I> assembled from quadrature values of the invariant's bilinears"""
    s = ctx.sample(t)
    p_sq = sum(quadrature_expectation(ctx, t, o, margin=margin) for o in (Observable.P1_SQ, Observable.P2_SQ))
    x_sq = sum(quadrature_expectation(ctx, t, o, margin=margin) for o in (Observable.X1_SQ, Observable.X2_SQ))
    xp = sum(quadrature_expectation(ctx, t, o, margin=margin) for o in (Observable.XP1, Observable.XP2))
    return s.rho**2 * p_sq + (s.chirp**2 + 1 / s.rho**2) * x_sq - s.rho * s.chirp * xp


def gram_matrix(
    family: EPFamily,
    states: Sequence[QuantumNumbers],
    t: float,
    margin: Optional[int] = None,
) -> NDArray[np.complex128]:
    """Overlaps <phi_i | phi_j> of invariant eigenstates (phase omitted)"""
    contexts = [StateContext(qn, family) for qn in states]
    size = len(contexts)
    gram = np.empty((size, size), dtype=complex)
    for i, bra in enumerate(contexts):
        for j, ket in enumerate(contexts):
            gram[i, j] = quadrature_matrix_element(bra, ket, t, margin=margin)
    return gram


# =============================================================================
# c(t) from NC recovery
# =============================================================================

def recovered_c_supplier(family: EPFamily, osc: OscillatorConstants) -> CSupplier:
    """
    c(t) implied by the family's (a, b, d) through NC parameter recovery

    Returns:
        Function t -> c(t); raises ConvergenceError at times where the
        coefficients are not realizable by any (theta, Omega)
    """

    def supplier(t: float) -> float:
        s = family.sample(t)
        target = CoefficientSet(a=s.a, b=s.b, c=math.nan, d=s.d)
        return recover_nc_parameters(target, osc).c

    return supplier
