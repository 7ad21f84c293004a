"""
Truncated two-mode oscillator basis

Dense matrix representations of x_i, p_i and their bilinears on the
number basis |n1, n2> with N states per mode (index n1 * N + n2).
"""

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Union

import numpy as np
from numpy.typing import NDArray

from .errors import DimensionError, DomainError

__all__ = [
    "OperatorMatrix",
    "CanonicalOperators",
    "build_canonical",
    "interior_indices",
    "shell_indices",
    "commutator",
]

HERMITIAN_TOL = 1e-12
MIN_DIM = 4

Scalar = Union[int, float, complex]


def interior_indices(dim: int) -> NDArray[np.intp]:
    """Flat indices of basis states with both occupation numbers <= dim - 3"""
    keep = np.arange(dim - 2)
    return (keep[:, None] * dim + keep[None, :]).ravel()


def shell_indices(dim: int, max_quanta: int) -> NDArray[np.intp]:
    """Flat indices of basis states with n1 + n2 <= max_quanta"""
    if max_quanta > dim - 3:
        raise DimensionError(f"Shell {max_quanta} reaches the truncation edge of N={dim}")
    n1, n2 = np.meshgrid(np.arange(dim), np.arange(dim), indexing="ij")
    return np.flatnonzero((n1 + n2).ravel() <= max_quanta)


@dataclass(frozen=True, eq=False)
class OperatorMatrix:
    """Dense complex operator on the truncated two-mode basis"""

    dim: int
    data: NDArray[np.complex128] = field(repr=False)
    hermitian: bool = False

    # numpy scalars on the left defer to __rmul__
    __array_ufunc__ = None

    def __post_init__(self):
        size = self.dim * self.dim
        if self.data.shape != (size, size):
            raise DimensionError(
                f"Operator data has shape {self.data.shape}, expected ({size}, {size})"
            )
        if self.hermitian:
            deviation = float(np.max(np.abs(self.data - self.data.conj().T)))
            if deviation >= HERMITIAN_TOL:
                raise DomainError(f"Operator flagged Hermitian deviates by {deviation:.3e}")

    def _check(self, other: "OperatorMatrix") -> None:
        if not isinstance(other, OperatorMatrix):
            raise TypeError(f"Expected OperatorMatrix, got {type(other).__name__}")
        if other.dim != self.dim:
            raise DimensionError(f"Dimension mismatch: {self.dim} vs {other.dim}")

    def __add__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        self._check(other)
        return OperatorMatrix(self.dim, self.data + other.data, self.hermitian and other.hermitian)

    def __sub__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        self._check(other)
        return OperatorMatrix(self.dim, self.data - other.data, self.hermitian and other.hermitian)

    def __neg__(self) -> "OperatorMatrix":
        return OperatorMatrix(self.dim, -self.data, self.hermitian)

    def __mul__(self, scalar: Scalar) -> "OperatorMatrix":
        keeps_hermitian = self.hermitian and np.imag(scalar) == 0
        return OperatorMatrix(self.dim, self.data * scalar, bool(keeps_hermitian))

    __rmul__ = __mul__

    def __matmul__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        self._check(other)
        return OperatorMatrix(self.dim, self.data @ other.data)

    def dagger(self) -> "OperatorMatrix":
        return OperatorMatrix(self.dim, self.data.conj().T, self.hermitian)

    def hermiticity_error(self) -> float:
        """Max-norm of A - A^dagger"""
        return float(np.max(np.abs(self.data - self.data.conj().T)))

    def block(self, indices: NDArray[np.intp]) -> NDArray[np.complex128]:
        """Sub-matrix on the given basis indices"""
        return self.data[np.ix_(indices, indices)]

    def interior(self) -> NDArray[np.complex128]:
        """Sub-matrix unaffected by basis truncation"""
        return self.block(interior_indices(self.dim))

    def interior_deviation(self, target: Scalar) -> float:
        """Max-norm of interior block minus target * Identity"""
        block = self.interior()
        return float(np.max(np.abs(block - target * np.eye(block.shape[0]))))

    @classmethod
    def identity(cls, dim: int) -> "OperatorMatrix":
        return cls(dim, np.eye(dim * dim, dtype=complex), hermitian=True)


def commutator(a: OperatorMatrix, b: OperatorMatrix) -> OperatorMatrix:
    """[A, B] = AB - BA"""
    return a @ b - b @ a


@dataclass(frozen=True, eq=False)
class CanonicalOperators:
    """
    Position and momentum operators of two truncated oscillator modes

    One-mode matrices follow x = (a + a^dagger)/sqrt(2) and
    p = -i(a - a^dagger)/sqrt(2). Two-mode operators and the quadratic
    combinations used by H and I are built lazily from Kronecker products
    of one-mode products, which reproduces the truncated matrix products.
    """

    dim: int
    x: NDArray[np.complex128] = field(repr=False)
    p: NDArray[np.complex128] = field(repr=False)

    def __iter__(self) -> Iterator[OperatorMatrix]:
        return iter((self.x1, self.x2, self.p1, self.p2))

    def _mode1(self, one_mode: NDArray, hermitian: bool = True) -> OperatorMatrix:
        return OperatorMatrix(self.dim, np.kron(one_mode, np.eye(self.dim)), hermitian)

    def _mode2(self, one_mode: NDArray, hermitian: bool = True) -> OperatorMatrix:
        return OperatorMatrix(self.dim, np.kron(np.eye(self.dim), one_mode), hermitian)

    @cached_property
    def x1(self) -> OperatorMatrix:
        return self._mode1(self.x)

    @cached_property
    def x2(self) -> OperatorMatrix:
        return self._mode2(self.x)

    @cached_property
    def p1(self) -> OperatorMatrix:
        return self._mode1(self.p)

    @cached_property
    def p2(self) -> OperatorMatrix:
        return self._mode2(self.p)

    @cached_property
    def identity(self) -> OperatorMatrix:
        return OperatorMatrix.identity(self.dim)

    @cached_property
    def position_squared(self) -> OperatorMatrix:
        """x1^2 + x2^2"""
        xx = self.x @ self.x
        return self._mode1(xx) + self._mode2(xx)

    @cached_property
    def momentum_squared(self) -> OperatorMatrix:
        """p1^2 + p2^2"""
        pp = self.p @ self.p
        return self._mode1(pp) + self._mode2(pp)

    @cached_property
    def dilation(self) -> OperatorMatrix:
        """x1 p1 + p1 x1 + x2 p2 + p2 x2"""
        xp = self.x @ self.p + self.p @ self.x
        return self._mode1(xp) + self._mode2(xp)

    @cached_property
    def angular_momentum(self) -> OperatorMatrix:
        """L = x1 p2 - x2 p1"""
        return OperatorMatrix(
            self.dim, np.kron(self.x, self.p) - np.kron(self.p, self.x), hermitian=True
        )


def build_canonical(dim: int) -> CanonicalOperators:
    """
    Build the canonical operators of two truncated modes

    Args:
        dim: Basis size N per mode (N >= 4)

    Returns:
        CanonicalOperators; unpacks as (x1, x2, p1, p2)

    Raises:
        DimensionError: If N < 4
    """
    if dim < MIN_DIM:
        raise DimensionError(f"Basis size per mode must be at least {MIN_DIM}, got {dim}")

    lowering = np.diag(np.sqrt(np.arange(1, dim, dtype=float)), k=1).astype(complex)
    raising = lowering.conj().T
    x = np.sqrt(0.5) * (lowering + raising)
    p = -1j * np.sqrt(0.5) * (lowering - raising)
    x.setflags(write=False)
    p.setflags(write=False)
    return CanonicalOperators(dim=dim, x=x, p=p)
