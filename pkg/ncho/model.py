"""
Noncommutative model layer

NC parameters, the modified Bopp-shift map onto canonical operators, the
commutative Hamiltonian coefficients a, b, c, d, and the numerical inverse
recovering (theta, Omega) from a coefficient set.
"""

import logging
import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .errors import ConvergenceError, DimensionError, DomainError
from .operators import OperatorMatrix

logger = logging.getLogger(__name__)

__all__ = [
    "OscillatorConstants",
    "NCParams",
    "CoefficientSet",
    "NCRecovery",
    "coefficients_from_nc",
    "bopp_forward",
    "recover_nc_parameters",
]

NEWTON_MAX_ITER = 100
NEWTON_TARGET = 4e-16
NEWTON_ACCEPT = 1e-12
MAX_HALVINGS = 40
BRANCH_C_TOL = 1e-8  # c mismatch that sends recovery to the mirrored branch


@dataclass(frozen=True)
class OscillatorConstants:
    """Constant mass and angular frequency (natural units, hbar = 1)"""

    mass: float
    omega: float

    def __post_init__(self):
        if not self.mass > 0:
            raise DomainError(f"Mass must be positive, got {self.mass}")
        if not self.omega > 0:
            raise DomainError(f"Angular frequency must be positive, got {self.omega}")


@dataclass(frozen=True)
class NCParams:
    """Space (theta) and momentum (omega_nc) noncommutativity with theta * omega_nc <= 0"""

    theta: float
    omega_nc: float

    def __post_init__(self):
        if self.theta * self.omega_nc > 0:
            raise DomainError(
                f"NC parameters require theta*Omega <= 0, got theta={self.theta}, "
                f"Omega={self.omega_nc} (sqrt(-theta*Omega) undefined)"
            )

    @property
    def root(self) -> float:
        """sqrt(-theta * Omega)"""
        return math.sqrt(max(-self.theta * self.omega_nc, 0.0))

    @property
    def is_commutative(self) -> bool:
        return self.theta == 0 and self.omega_nc == 0


@dataclass(frozen=True)
class CoefficientSet:
    """Instantaneous coefficients of H = a/2 p^2 + b/2 x^2 + c(p1x2 - p2x1) + d(xp + px)"""

    a: float
    b: float
    c: float
    d: float


@dataclass(frozen=True)
class NCRecovery:
    """Result of recovering NC parameters from a coefficient set"""

    nc: NCParams
    coefficients: CoefficientSet  # forward map of the recovered parameters
    iterations: int
    residual: float  # relative (a, d) residual
    b_residual: float
    c_residual: float  # nan when the target c was unknown

    @property
    def c(self) -> float:
        return self.coefficients.c


def coefficients_from_nc(nc: NCParams, osc: OscillatorConstants) -> CoefficientSet:
    """
    Hamiltonian coefficients of the commutative representation

    Args:
        nc: NC parameters at the time of interest
        osc: Mass and frequency

    Returns:
        CoefficientSet (a, b, c, d)
    """
    theta, big_omega = nc.theta, nc.omega_nc
    mass, w2 = osc.mass, osc.omega**2
    product = theta * big_omega
    if product > 0:
        raise DomainError(f"theta*Omega = {product} > 0: sqrt(-theta*Omega) undefined")

    a = (1.0 - product / 4) / mass + mass * w2 * theta**2 / 4
    b = mass * w2 * (1.0 - product / 4) + big_omega**2 / (4 * mass)
    c = big_omega / (2 * mass) + mass * w2 * theta / 2
    d = nc.root / 4 * (big_omega / (2 * mass) - mass * w2 * theta / 2)
    return CoefficientSet(a=a, b=b, c=c, d=d)


def bopp_forward(
    x1: OperatorMatrix,
    x2: OperatorMatrix,
    p1: OperatorMatrix,
    p2: OperatorMatrix,
    nc: NCParams,
) -> Tuple[OperatorMatrix, OperatorMatrix, OperatorMatrix, OperatorMatrix]:
    """
    Modified Bopp shift expressing NC operators through canonical ones

    Returns:
        (X1, X2, P1, P2)

    Raises:
        DimensionError: If the inputs differ in dimension
    """
    dims = {op.dim for op in (x1, x2, p1, p2)}
    if len(dims) != 1:
        raise DimensionError(f"Canonical operators have mismatched dimensions {sorted(dims)}")
    if nc.theta * nc.omega_nc > 0:
        raise DomainError(f"theta*Omega = {nc.theta * nc.omega_nc} > 0")

    half_theta = nc.theta / 2
    half_omega = nc.omega_nc / 2
    half_root = nc.root / 2

    big_x1 = x1 - half_theta * p2 + half_root * x2
    big_x2 = x2 + half_theta * p1 - half_root * x1
    big_p1 = p1 + half_omega * x2 + half_root * p2
    big_p2 = p2 - half_omega * x1 - half_root * p1
    return big_x1, big_x2, big_p1, big_p2


# =============================================================================
# Inversion
# =============================================================================

def _branch_map(u: float, v: float, sign: int, osc: OscillatorConstants) -> Tuple[float, float]:
    """(a, d) with theta = sign*u^2, Omega = -sign*v^2, so sqrt(-theta*Omega) = u*v"""
    mass, w2 = osc.mass, osc.omega**2
    a = (1.0 + (u * v) ** 2 / 4) / mass + mass * w2 * u**4 / 4
    d = -sign * u * v * (v**2 / mass + mass * w2 * u**2) / 8
    return a, d


def _branch_jacobian(u: float, v: float, sign: int, osc: OscillatorConstants) -> np.ndarray:
    mass, w2 = osc.mass, osc.omega**2
    return np.array(
        [
            [u * v**2 / (2 * mass) + mass * w2 * u**3, u**2 * v / (2 * mass)],
            [
                -sign * (v**3 / mass + 3 * mass * w2 * u**2 * v) / 8,
                -sign * (3 * u * v**2 / mass + mass * w2 * u**3) / 8,
            ],
        ]
    )


def _seed(coeffs: CoefficientSet, osc: OscillatorConstants, sign: int) -> Tuple[float, float]:
    """
    Closed-form starting point

    With c known, b/M + M w^2 a - c^2 = 2w^2 - w^2 theta*Omega fixes the
    product theta*Omega; otherwise it follows from a and b alone. theta^2
    then comes from a, and Omega from the product (or from c on the
    theta = 0 axis).
    """
    a, b, c = coeffs.a, coeffs.b, coeffs.c
    mass, w2 = osc.mass, osc.omega**2

    if math.isfinite(c):
        product = (2 * w2 + c**2 - b / mass - mass * w2 * a) / w2
    else:
        denominator = a * mass * w2 + b / mass - 2 * w2
        if abs(denominator) <= 1e-14 * (a * mass * w2 + b / mass):
            product = 0.0
        else:
            product = 4 * (1.0 - (a * b - w2) / denominator)
    product = min(product, 0.0)

    theta_sq = max(4 * (a - (1.0 - product / 4) / mass) / (mass * w2), 0.0)
    theta = sign * math.sqrt(theta_sq)
    if theta != 0:
        big_omega = product / theta
    elif math.isfinite(c):
        big_omega = 2 * mass * c
    else:
        big_omega = -sign * math.sqrt(max(4 * mass * (b - mass * w2), 0.0))
    return theta, big_omega


def _newton(
    target: Tuple[float, float],
    u: float,
    v: float,
    sign: int,
    osc: OscillatorConstants,
) -> Tuple[float, float, int, float]:
    """Damped Newton with step halving on the (a, d) equations in (u, v)"""
    scale = max(abs(target[0]), abs(target[1]))

    def residual(uu: float, vv: float) -> np.ndarray:
        a, d = _branch_map(uu, vv, sign, osc)
        return np.array([a - target[0], d - target[1]]) / scale

    current = residual(u, v)
    norm = float(np.max(np.abs(current)))
    iterations = 0

    while norm > NEWTON_TARGET and iterations < NEWTON_MAX_ITER:
        jacobian = _branch_jacobian(u, v, sign, osc) / scale
        step = np.linalg.lstsq(jacobian, -current, rcond=None)[0]

        damping = 1.0
        for _ in range(MAX_HALVINGS):
            u_new, v_new = abs(u + damping * step[0]), abs(v + damping * step[1])
            trial = residual(u_new, v_new)
            trial_norm = float(np.max(np.abs(trial)))
            if trial_norm < norm:
                break
            damping /= 2
        else:
            logger.debug("Newton stalled at residual %.3e after %d iterations", norm, iterations)
            break

        u, v, current, norm = u_new, v_new, trial, trial_norm
        iterations += 1

    return u, v, iterations, norm


def _solve_branch(
    coeffs: CoefficientSet,
    osc: OscillatorConstants,
    sign: int,
    guess: Optional[NCParams],
) -> NCRecovery:
    if guess is None:
        theta0, omega0 = _seed(coeffs, osc, sign)
    else:
        theta0, omega0 = guess.theta, guess.omega_nc

    u, v, iterations, residual = _newton(
        (coeffs.a, coeffs.d), math.sqrt(abs(theta0)), math.sqrt(abs(omega0)), sign, osc
    )
    if residual > NEWTON_ACCEPT:
        raise ConvergenceError(
            f"NC recovery did not converge: residual {residual:.3e} after {iterations} "
            f"iterations for a={coeffs.a!r}, d={coeffs.d!r}"
        )

    theta = sign * u**2 + 0.0
    big_omega = -sign * v**2 + 0.0
    if theta * big_omega > 0:
        raise DomainError(f"Recovered theta*Omega = {theta * big_omega} > 0")

    nc = NCParams(theta, big_omega)
    forward = coefficients_from_nc(nc, osc)
    b_residual = abs(forward.b - coeffs.b) / abs(coeffs.b)
    if math.isfinite(coeffs.c):
        c_residual = abs(forward.c - coeffs.c) / max(abs(coeffs.c), 1.0)
    else:
        c_residual = math.nan

    logger.debug(
        "Branch %+d: theta=%r Omega=%r in %d iterations (residual %.2e)",
        sign, theta, big_omega, iterations, residual,
    )
    return NCRecovery(
        nc=nc,
        coefficients=forward,
        iterations=iterations,
        residual=residual,
        b_residual=b_residual,
        c_residual=c_residual,
    )


def _mismatch(result: NCRecovery) -> float:
    c_part = result.c_residual if math.isfinite(result.c_residual) else 0.0
    return max(result.residual, result.b_residual, c_part)


def recover_nc_parameters(
    coeffs: CoefficientSet,
    osc: OscillatorConstants,
    guess: Optional[NCParams] = None,
) -> NCRecovery:
    """
    Recover (theta, Omega) from Hamiltonian coefficients

    Solves a(theta, Omega) = a*, d(theta, Omega) = d* by damped Newton
    iteration, then evaluates the b and c mismatch. The first branch tried
    follows the sign of d*: d* < 0 gives theta > 0 > Omega, d* > 0 the
    mirrored branch, and d* = 0 starts from theta >= 0. The mirrored branch
    is solved as well when the first one fails to converge or, with c
    known, leaves a c mismatch above BRANCH_C_TOL (on the d* = 0 axes only
    c tells the branches apart); the set reproducing the coefficients best
    is returned. Pass c = nan when c is not known.

    Args:
        coeffs: Target coefficients
        osc: Mass and frequency
        guess: Optional starting point (default: closed-form seed)

    Returns:
        NCRecovery with the parameters and residuals

    Raises:
        ConvergenceError: If neither branch brings the (a, d) residual below 1e-12
        DomainError: If the solution violates theta*Omega <= 0
    """
    sign = -1 if coeffs.d > 0 else 1
    first: Optional[NCRecovery] = None
    failure: Optional[Exception] = None
    try:
        first = _solve_branch(coeffs, osc, sign, guess)
    except (ConvergenceError, DomainError) as e:
        failure = e

    if first is not None and not first.c_residual > BRANCH_C_TOL:
        return first

    logger.warning(
        "NC recovery falling back to the mirrored branch (%s)",
        failure if first is None else f"c mismatch {first.c_residual:.3e}",
    )
    try:
        mirrored = _solve_branch(coeffs, osc, -sign, guess)
    except (ConvergenceError, DomainError):
        if first is None:
            raise failure
        return first

    if first is None or _mismatch(mirrored) < _mismatch(first):
        return mirrored
    return first
