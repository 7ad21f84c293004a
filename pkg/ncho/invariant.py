"""
Truncated-basis Hamiltonian and invariant matrices

Builds H(t), the Lewis invariant I(t) and the alternative invariant
I' = I/4 - L/2 on the two-mode number basis and measures how far
dI/dt = dI/dt|_explicit - i[I, H] is from zero on the interior block.
"""

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np
from numpy.typing import NDArray

from .ep import EPFamily, EPSample
from .errors import DomainError
from .model import CoefficientSet
from .operators import (
    CanonicalOperators,
    OperatorMatrix,
    build_canonical,
    commutator,
    interior_indices,
    shell_indices,
)

logger = logging.getLogger(__name__)

__all__ = [
    "OperatorMatrix",
    "CanonicalOperators",
    "build_canonical",
    "commutator",
    "interior_indices",
    "shell_indices",
    "InvariantWeights",
    "hamiltonian_matrix",
    "lewis_invariant_matrix",
    "alternative_invariant_matrix",
    "invariant_weights",
    "interior_spectrum",
    "invariance_residual",
]

INVARIANTS = ("lewis", "alternative")

# Five-point central difference weights for offsets -2h..2h
_STENCIL = np.array([1.0, -8.0, 0.0, 8.0, -1.0]) / 12.0


@dataclass(frozen=True)
class InvariantWeights:
    """Scalar weights of p^2, x^2 and the dilation term in I(t)"""

    momentum: float  # rho^2
    position: float  # (rho_dot - 2 rho d)^2 / a^2 + xi^2 / rho^2
    dilation: float  # -(rho / a)(rho_dot - 2 rho d)

    def as_array(self) -> NDArray[np.float64]:
        return np.array([self.momentum, self.position, self.dilation])


def invariant_weights(s: EPSample, xi: float = 1.0) -> InvariantWeights:
    return InvariantWeights(
        momentum=s.rho**2,
        position=s.chirp**2 + xi**2 / s.rho**2,
        dilation=-s.rho * s.chirp,
    )


def _quadratic(ops: CanonicalOperators, momentum: float, position: float, dilation: float) -> OperatorMatrix:
    return momentum * ops.momentum_squared + position * ops.position_squared + dilation * ops.dilation


def hamiltonian_matrix(coeffs: CoefficientSet, ops: CanonicalOperators) -> OperatorMatrix:
    """H = a/2 (p1^2 + p2^2) + b/2 (x1^2 + x2^2) + c (p1 x2 - p2 x1) + d (x1 p1 + p1 x1 + x2 p2 + p2 x2)"""
    return _quadratic(ops, coeffs.a / 2, coeffs.b / 2, coeffs.d) - coeffs.c * ops.angular_momentum


def lewis_invariant_matrix(s: EPSample, ops: CanonicalOperators, xi: float = 1.0) -> OperatorMatrix:
    """I = rho^2 p^2 + [(rho_dot - 2 rho d)^2/a^2 + xi^2/rho^2] x^2 - (rho/a)(rho_dot - 2 rho d)(xp + px)"""
    w = invariant_weights(s, xi)
    return _quadratic(ops, w.momentum, w.position, w.dilation)


def alternative_invariant_matrix(s: EPSample, ops: CanonicalOperators, xi: float = 1.0) -> OperatorMatrix:
    """I' = I/4 - L/2 with L = x1 p2 - x2 p1"""
    return 0.25 * lewis_invariant_matrix(s, ops, xi) - 0.5 * ops.angular_momentum


def interior_spectrum(op: OperatorMatrix, max_quanta: Optional[int] = None) -> NDArray[np.float64]:
    """
    Sorted eigenvalues of a Hermitian operator on an untruncated block

    Without max_quanta the block is the interior (both occupations <= N-3);
    operators mixing the modes (such as L) need the shell block
    n1 + n2 <= max_quanta instead.
    """
    indices = interior_indices(op.dim) if max_quanta is None else shell_indices(op.dim, max_quanta)
    return np.linalg.eigvalsh(op.block(indices))


def _interior_commutator(a: OperatorMatrix, b: OperatorMatrix) -> NDArray[np.complex128]:
    """Interior rows/columns of [A, B], exact for bilinear operators"""
    keep = interior_indices(a.dim)
    return a.data[keep, :] @ b.data[:, keep] - b.data[keep, :] @ a.data[:, keep]


def invariance_residual(
    f: EPFamily,
    t: float,
    N: int,
    h: float,
    c: float = 0.0,
    which: str = "lewis",
    ops: Optional[CanonicalOperators] = None,
) -> float:
    """
    Max-norm of dI/dt + (1/i)[I, H] on the interior block

    The explicit derivative is a five-point central difference (step h) of
    the invariant's scalar weights; H uses a, b, d of the family at t and
    the given c.

    Args:
        f: EP family supplying the samples
        t: Time (t - 2h must still be in the family's domain)
        N: Basis size per mode
        h: Difference step
        c: Angular coefficient of H
        which: "lewis" for I, "alternative" for I'
        ops: Prebuilt canonical operators of size N

    Returns:
        Residual max-norm
    """
    if which not in INVARIANTS:
        raise DomainError(f"Unknown invariant {which!r}; expected one of {INVARIANTS}")
    if not h > 0:
        raise DomainError(f"Difference step must be positive, got {h}")
    ops = ops if ops is not None else build_canonical(N)

    stacked = np.array([invariant_weights(f.sample(t + k * h)).as_array() for k in range(-2, 3)])
    rates = _STENCIL @ stacked / h
    explicit = _quadratic(ops, *rates)

    s = f.sample(t)
    hamiltonian = hamiltonian_matrix(s.coefficients(c), ops)
    if which == "lewis":
        invariant = lewis_invariant_matrix(s, ops)
    else:
        invariant = alternative_invariant_matrix(s, ops)
        explicit = 0.25 * explicit

    residual = explicit.interior() - 1j * _interior_commutator(invariant, hamiltonian)
    value = float(np.max(np.abs(residual)))
    logger.debug("Invariance residual (%s) at t=%r, N=%d: %.3e", which, t, N, value)
    return value
