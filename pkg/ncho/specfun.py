"""
Special functions and quadrature

Associated Laguerre polynomials (any integer order, negative orders through
the identity relation), the Tricomi function at negative integer first
argument, generalized Gauss-Laguerre rules, and quadrature checks of the
orthogonality relation and the Laguerre integral identity used by the
eigenstate normalization.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import List, Optional, Tuple, Union

import numpy as np
from numpy.typing import NDArray
from scipy.linalg import LinAlgError, eigh_tridiagonal
from scipy.special import factorial, factorial2, gammaln

from .config.settings import quadrature_margin
from .errors import DomainError, QuadratureError

logger = logging.getLogger(__name__)

__all__ = [
    "LaguerreIndex",
    "QuadratureRule",
    "laguerre_eval",
    "laguerre_derivative",
    "tricomi_u_laguerre",
    "gamma_value",
    "gauss_laguerre",
    "quadrature_order",
    "orthonormality_check",
    "appendix_identity_residual",
    "appendix_identity_exact",
    "laguerre_product_integral_exact",
]

ArrayLike = Union[float, NDArray[np.float64]]

# Largest argument served by the Gamma tables
GAMMA_TABLE_LIMIT = 64


@dataclass(frozen=True)
class LaguerreIndex:
    """Degree (subscript) and order (superscript) of L^order_degree"""

    degree: int
    order: int

    def __post_init__(self):
        if int(self.degree) != self.degree or self.degree < 0:
            raise DomainError(f"Laguerre degree must be a non-negative integer, got {self.degree}")

    def __repr__(self) -> str:
        return f"L^{self.order}_{self.degree}"


@dataclass(frozen=True, eq=False)
class QuadratureRule:
    """Gauss-Laguerre rule for the weight z^weight_exponent e^{-z}"""

    nodes: NDArray[np.float64]
    weights: NDArray[np.float64]
    order: int
    weight_exponent: float

    def integrate(self, values: NDArray) -> complex:
        """Sum weights against integrand values sampled at the nodes (weight excluded)"""
        return np.sum(self.weights * values)

    def __repr__(self) -> str:
        return f"QuadratureRule(order={self.order}, alpha={self.weight_exponent})"


# =============================================================================
# Laguerre polynomials
# =============================================================================

def _laguerre(degree: int, order: float, z: ArrayLike) -> NDArray[np.float64]:
    """L^order_degree(z) with L_{-1} := 0; negative order via the identity relation"""
    z = np.asarray(z, dtype=float)
    if degree < 0:
        return np.zeros_like(z)
    if order < 0:
        # L^a_m = sum_j (-1)^j C(k, j) L^{a+k}_{m-j}, the identity relation applied k times
        k = math.ceil(-order)
        total = np.zeros_like(z)
        for j in range(min(k, degree) + 1):
            total = total + (-1) ** j * math.comb(k, j) * _laguerre(degree - j, order + k, z)
        return total

    prev = np.ones_like(z)
    if degree == 0:
        return prev
    cur = 1.0 + order - z
    for k in range(1, degree):
        prev, cur = cur, ((2 * k + 1 + order - z) * cur - (k + order) * prev) / (k + 1)
    return cur


def _as_output(value: NDArray, z: ArrayLike) -> ArrayLike:
    return float(value) if np.ndim(z) == 0 else value


def laguerre_eval(idx: LaguerreIndex, z: ArrayLike) -> ArrayLike:
    """
    Evaluate an associated Laguerre polynomial

    Args:
        idx: Degree and order of the polynomial
        z: Evaluation point(s)

    Returns:
        L^order_degree(z), a float for scalar z or an array otherwise
    """
    return _as_output(_laguerre(idx.degree, idx.order, z), z)


def laguerre_derivative(idx: LaguerreIndex, z: ArrayLike, times: int = 1) -> ArrayLike:
    """
    Derivative of L^order_degree with respect to z

    Uses d/dz L^a_m = -L^{a+1}_{m-1} (zero for m = 0), applied ``times`` times.

    Args:
        idx: Degree and order of the polynomial
        z: Evaluation point(s)
        times: Derivative order

    Returns:
        The derivative value(s)
    """
    value = (-1) ** times * _laguerre(idx.degree - times, idx.order + times, z)
    return _as_output(value, z)


def tricomi_u_laguerre(m: int, n: int, z: ArrayLike) -> ArrayLike:
    """U(-m, 1-m+n, z) = m!/(-1)^m L^{n-m}_m(z) on the regular branch n >= m"""
    if m < 0 or n < 0:
        raise DomainError(f"Quantum numbers must be non-negative, got m={m}, n={n}")
    if n < m:
        raise DomainError(
            f"Tricomi branch n < m (m={m}, n={n}) is not supported: "
            "it corresponds to the singular r^(n-m) eigenfunction"
        )
    value = math.factorial(m) * (-1) ** m * _laguerre(m, n - m, z)
    return _as_output(value, z)


# =============================================================================
# Gamma tables
# =============================================================================

@lru_cache(maxsize=None)
def gamma_value(x: float) -> float:
    """
    Gamma function at integer and half-integer points

    Args:
        x: Argument, a multiple of 1/2 in [1/2, 64]

    Returns:
        Gamma(x) from factorial or double-factorial tables

    Raises:
        DomainError: If x is not a multiple of 1/2 or lies outside the table
    """
    twice = 2 * x
    if twice != round(twice) or x < 0.5:
        raise DomainError(f"Gamma table only covers positive (half-)integers, got {x}")
    if x > GAMMA_TABLE_LIMIT:
        raise DomainError(f"Gamma table limited to x <= {GAMMA_TABLE_LIMIT}, got {x}")

    if float(x).is_integer():
        return float(factorial(int(x) - 1, exact=True))
    k = int(x - 0.5)
    if k == 0:
        return math.sqrt(math.pi)
    return float(factorial2(2 * k - 1, exact=True)) / 2**k * math.sqrt(math.pi)


def _gamma_ratio(order: int, alpha: float) -> float:
    """Gamma(order + alpha + 1) / order!"""
    x = order + alpha + 1
    if float(2 * x).is_integer() and x <= GAMMA_TABLE_LIMIT:
        return gamma_value(x) / gamma_value(order + 1)
    return float(np.exp(gammaln(x) - gammaln(order + 1)))


# =============================================================================
# Gauss-Laguerre quadrature
# =============================================================================

def quadrature_order(degree: int, margin: Optional[int] = None) -> int:
    """
    Number of nodes integrating a polynomial of the given degree exactly

    Args:
        degree: Total polynomial degree of the integrand (weight excluded)
        margin: Extra nodes; defaults to NCHO_QUAD_ORDER_MARGIN (2)

    Returns:
        ceil((degree + 1) / 2) + margin, at least 1
    """
    margin = quadrature_margin() if margin is None else margin
    return max(1, math.ceil((max(degree, 0) + 1) / 2) + margin)


@lru_cache(maxsize=256)
def gauss_laguerre(order: int, alpha: float = 0.0) -> QuadratureRule:
    """
    Generalized Gauss-Laguerre rule for the weight z^alpha e^{-z}

    Nodes come from the Jacobi matrix (Golub-Welsch) and are polished with
    Newton steps on L^alpha_order; weights use the derivative formula
    Gamma(q+alpha+1) / (q! z_i [L^alpha_q'(z_i)]^2).

    Args:
        order: Number of nodes q >= 1
        alpha: Weight exponent >= 0

    Returns:
        Immutable QuadratureRule, cached per (order, alpha)

    Raises:
        DomainError: If order < 1 or alpha < 0
        QuadratureError: If node finding fails
    """
    if order < 1:
        raise DomainError(f"Quadrature order must be positive, got {order}")
    if alpha < 0:
        raise DomainError(f"Weight exponent must be non-negative, got {alpha}")

    k = np.arange(order, dtype=float)
    diagonal = 2 * k + alpha + 1
    off_diagonal = np.sqrt(k[1:] * (k[1:] + alpha))
    try:
        nodes = eigh_tridiagonal(diagonal, off_diagonal, eigvals_only=True)
    except (LinAlgError, ValueError) as e:
        raise QuadratureError(order, alpha, str(e)) from e

    nodes = np.sort(nodes)
    for _ in range(2):
        derivative = -_laguerre(order - 1, alpha + 1, nodes)
        nodes = nodes - _laguerre(order, alpha, nodes) / derivative

    derivative = -_laguerre(order - 1, alpha + 1, nodes)
    weights = _gamma_ratio(order, alpha) / (nodes * derivative**2)

    if not (np.all(np.isfinite(nodes)) and np.all(nodes > 0)):
        raise QuadratureError(order, alpha, "non-positive or non-finite nodes")
    if np.any(np.diff(nodes) <= 0):
        raise QuadratureError(order, alpha, "nodes not strictly increasing")
    if not (np.all(np.isfinite(weights)) and np.all(weights > 0)):
        raise QuadratureError(order, alpha, "non-positive or non-finite weights")

    nodes.setflags(write=False)
    weights.setflags(write=False)
    logger.debug("Built Gauss-Laguerre rule order=%d alpha=%s", order, alpha)
    return QuadratureRule(nodes=nodes, weights=weights, order=order, weight_exponent=float(alpha))


# =============================================================================
# Integral checks
# =============================================================================

def orthonormality_check(n: int, m: int, margin: Optional[int] = None, relative: bool = True) -> float:
    """
    Residual of the same-order orthogonality relation

    Evaluates I_ij = int z^a e^{-z} L^a_i L^a_j dz with a = n - m for
    i, j in {m, n} and compares with Gamma(i+a+1)/i! delta_ij.

    Args:
        n: Larger quantum number
        m: Smaller quantum number
        relative: Scale each entry by sqrt(N_i N_j); False gives the plain
            absolute deviation, which grows with the norms themselves

    Returns:
        Maximum deviation over the index pairs
    """
    if not n >= m >= 0:
        raise DomainError(f"orthonormality_check requires n >= m >= 0, got n={n}, m={m}")

    alpha = n - m
    rule = gauss_laguerre(quadrature_order(2 * n, margin), alpha)
    degrees = sorted({m, n})
    values = {i: _laguerre(i, alpha, rule.nodes) for i in degrees}
    norms = {i: _gamma_ratio(i, alpha) for i in degrees}

    residual = 0.0
    for i in degrees:
        for j in degrees:
            integral = float(rule.integrate(values[i] * values[j]))
            expected = norms[i] if i == j else 0.0
            deviation = abs(integral - expected)
            if relative:
                deviation /= math.sqrt(norms[i] * norms[j])
            residual = max(residual, deviation)
    return residual


def _identity_integrals(n: int, m: int, margin: Optional[int]) -> Tuple[float, float, float]:
    """Both sides of the Laguerre identity and the magnitude scale of the integrands"""
    alpha = n - m
    first = second = 0.0
    scale = 1.0

    if m >= 1:
        rule = gauss_laguerre(quadrature_order(2 * m - 1, margin), alpha)
        integrand = (alpha + 1) * _laguerre(m, alpha, rule.nodes) * _laguerre(m - 1, alpha + 1, rule.nodes)
        first = float(rule.integrate(integrand))
        scale = max(scale, float(rule.integrate(np.abs(integrand))))

    if m >= 2:
        rule = gauss_laguerre(quadrature_order(2 * m - 2, margin), alpha + 1)
        integrand = _laguerre(m, alpha, rule.nodes) * _laguerre(m - 2, alpha + 2, rule.nodes)
        second = float(rule.integrate(integrand))
        scale = max(scale, float(rule.integrate(np.abs(integrand))))

    return first, second, scale


def appendix_identity_residual(
    n: int, m: int, margin: Optional[int] = None, relative: bool = True
) -> float:
    """
    Residual of the Laguerre integral identity

    (n-m+1) int z^{n-m} e^{-z} L^{n-m}_m L^{n-m+1}_{m-1} dz
        = int z^{n-m+1} e^{-z} L^{n-m}_m L^{n-m+2}_{m-2} dz

    Both integrals use exact-degree Gauss-Laguerre rules. For m < 2 the
    right-hand integral is zero (and for m = 0 so is the left).

    With relative=True the difference is divided by the integrand magnitude
    int |f| (at least 1): the terms grow factorially with n - m and the
    absolute difference carries float rounding of that size (about 3e-7 at
    n = 12). relative=False returns |first - second| as is.
    """
    if not n >= m >= 0:
        raise DomainError(f"appendix_identity_residual requires n >= m >= 0, got n={n}, m={m}")
    first, second, scale = _identity_integrals(n, m, margin)
    difference = abs(first - second)
    return difference / scale if relative else difference


# =============================================================================
# Exact polynomial integration
# =============================================================================

def _laguerre_coefficients_exact(degree: int, order: int) -> List[Fraction]:
    """Power-series coefficients of L^order_degree for integer order >= 0"""
    return [
        Fraction((-1) ** j * math.comb(degree + order, degree - j), math.factorial(j))
        for j in range(degree + 1)
    ]


def laguerre_product_integral_exact(
    first: LaguerreIndex, second: LaguerreIndex, weight_power: int
) -> Fraction:
    """
    int_0^inf z^w e^{-z} L^a_i(z) L^b_j(z) dz in exact rational arithmetic

    Multiplies the power series term by term and uses
    int z^k e^{-z} dz = k!; an oracle independent of any quadrature rule.

    Raises:
        DomainError: For negative degrees, orders or weight power
    """
    for idx in (first, second):
        if idx.degree < 0 or idx.order < 0 or int(idx.order) != idx.order:
            raise DomainError(f"Exact integration needs non-negative integer indices, got {idx}")
    if weight_power < 0:
        raise DomainError(f"weight_power must be non-negative, got {weight_power}")

    p = _laguerre_coefficients_exact(first.degree, int(first.order))
    q = _laguerre_coefficients_exact(second.degree, int(second.order))
    return sum(
        (pi * qj * math.factorial(i + j + weight_power) for i, pi in enumerate(p) for j, qj in enumerate(q)),
        Fraction(0),
    )


def appendix_identity_exact(n: int, m: int) -> Fraction:
    """Left side minus right side of the Laguerre integral identity, exactly"""
    if not n >= m >= 0:
        raise DomainError(f"appendix_identity_exact requires n >= m >= 0, got n={n}, m={m}")
    alpha = n - m
    first = second = Fraction(0)
    if m >= 1:
        first = (alpha + 1) * laguerre_product_integral_exact(
            LaguerreIndex(m, alpha), LaguerreIndex(m - 1, alpha + 1), alpha
        )
    if m >= 2:
        second = laguerre_product_integral_exact(
            LaguerreIndex(m, alpha), LaguerreIndex(m - 2, alpha + 2), alpha + 1
        )
    return first - second
