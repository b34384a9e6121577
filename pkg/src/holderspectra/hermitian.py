"""Deterministic dense Hermitian linear algebra."""

from dataclasses import dataclass
import logging

import numpy as np

from .exceptions import (
    DimensionMismatchException,
    JacobiNotConvergedException,
    NotHermitianException,
)

# Hermitian input check: max|A - A*| <= tolerance * scale
DEFAULT_HERMITIAN_TOLERANCE = 1e-12

# Cyclic Jacobi configuration
DEFAULT_JACOBI_TOLERANCE = 1e-13
DEFAULT_JACOBI_MAX_SWEEPS = 100

# Weyl check slack: gap <= bound + slack * (1 + bound)
WEYL_SLACK = 1e-9

_LOGGER = logging.getLogger(__name__)


class HermitianMatrix:
    """A dense N x N complex self-adjoint matrix."""

    def __init__(
        self,
        entries,
        tolerance: float = DEFAULT_HERMITIAN_TOLERANCE,
        _allow_empty: bool = False,
    ) -> None:
        """Initialize the HermitianMatrix class."""
        _array = np.array(entries, dtype=complex)
        if _array.ndim == 0:
            _array = _array.reshape(1, 1)
        if _array.ndim != 2 or _array.shape[0] != _array.shape[1]:
            raise DimensionMismatchException(
                expected=_array.shape[0] if _array.ndim else 1,
                actual=_array.shape[1] if _array.ndim == 2 else _array.ndim,
            )
        if _array.shape[0] == 0 and not _allow_empty:
            raise DimensionMismatchException(expected=1, actual=0)

        if _array.size:
            _scale = max(1.0, float(np.abs(_array).max()))
            _asymmetry = float(np.abs(_array - _array.conj().T).max())
            # NaN compares false, so non-finite entries fail here too
            if not _asymmetry <= tolerance * _scale:
                raise NotHermitianException(_asymmetry, _scale)
            _array = (_array + _array.conj().T) / 2

        _array.setflags(write=False)
        self._entries = _array

    @classmethod
    def diagonal(cls, values) -> "HermitianMatrix":
        """Return the real diagonal matrix diag(values)."""
        return cls(np.diag(np.asarray(values, dtype=float)))

    @classmethod
    def empty(cls) -> "HermitianMatrix":
        """Return the 0 x 0 matrix used for empty projections."""
        return cls(np.zeros((0, 0), dtype=complex), _allow_empty=True)

    @property
    def dim(self) -> int:
        """Get the matrix dimension N."""
        return self._entries.shape[0]

    @property
    def entries(self) -> np.ndarray:
        """Get the read-only entries."""
        return self._entries

    @property
    def is_empty(self) -> bool:
        """Return True for the 0 x 0 matrix."""
        return self.dim == 0

    def __add__(self, other: "HermitianMatrix") -> "HermitianMatrix":
        """Return the sum of two matrices of equal dimension."""
        _check_same_dim(self, other)
        return HermitianMatrix(self._entries + other.entries)

    def __sub__(self, other: "HermitianMatrix") -> "HermitianMatrix":
        """Return the difference of two matrices of equal dimension."""
        _check_same_dim(self, other)
        return HermitianMatrix(self._entries - other.entries)

    def __mul__(self, scalar: float) -> "HermitianMatrix":
        """Return the matrix scaled by a real number."""
        return HermitianMatrix(float(scalar) * self._entries)

    __rmul__ = __mul__

    def __repr__(self) -> str:
        """Return a string representation of the matrix."""
        return f"HermitianMatrix(dim={self.dim})"


@dataclass(frozen=True)
class EigenDecomposition:
    """Ascending eigenvalues with a unitary matrix of eigenvectors (columns)."""

    values: np.ndarray
    vectors: np.ndarray


@dataclass(frozen=True)
class WeylResult:
    """Outcome of comparing ordered spectra against the operator norm."""

    gap: float
    bound: float
    holds: bool


def eig_ordered(
    matrix: HermitianMatrix,
    tolerance: float = DEFAULT_JACOBI_TOLERANCE,
    max_sweeps: int = DEFAULT_JACOBI_MAX_SWEEPS,
) -> EigenDecomposition:
    """
    Diagonalize a Hermitian matrix with cyclic Jacobi rotations.

    Sweeps visit the pairs (p, q), p < q, in row-major order. Each rotation
    first removes the phase of a[p, q] and then applies the real symmetric
    Schur rotation. Iteration stops once the off-diagonal Frobenius norm is
    at most `tolerance` times the Frobenius norm of the input. Eigenvalues are
    sorted stably, so vectors inside a degenerate cluster follow the rotation
    sequence and carry no meaning of their own.
    """
    _n = matrix.dim
    _a = np.array(matrix.entries, dtype=complex)
    _v = np.eye(_n, dtype=complex)
    if _n == 0:
        return EigenDecomposition(values=np.zeros(0), vectors=_v)

    _threshold = tolerance * float(np.linalg.norm(_a))
    _sweeps = 0
    _off = _off_norm(_a)
    while _off > _threshold:
        if _sweeps >= max_sweeps:
            raise JacobiNotConvergedException(_sweeps, _off)
        for p in range(_n - 1):
            for q in range(p + 1, _n):
                _rotate(_a, _v, p, q)
        _sweeps += 1
        _off = _off_norm(_a)
        _LOGGER.debug("Jacobi sweep %s off-diagonal norm %.3e", _sweeps, _off)

    _values = np.real(np.diag(_a)).copy()
    _order = np.argsort(_values, kind="stable")
    return EigenDecomposition(values=_values[_order], vectors=_v[:, _order])


def op_norm(matrix: HermitianMatrix) -> float:
    """Return the spectral norm max_i |mu_i(A)|."""
    if matrix.is_empty:
        return 0.0
    return float(np.abs(eig_ordered(matrix).values).max())


def batch_op_norm(stack: np.ndarray) -> np.ndarray:
    """Return the spectral norm of every matrix in a (k, N, N) stack."""
    if stack.shape[0] == 0:
        return np.zeros(0)
    return np.linalg.norm(stack, ord=2, axis=(1, 2))


def weyl_check(a: HermitianMatrix, b: HermitianMatrix) -> WeylResult:
    """Compare max_j |mu_j(A) - mu_j(B)| with the operator norm of A - B."""
    _check_same_dim(a, b)
    _gap = float(np.abs(eig_ordered(a).values - eig_ordered(b).values).max())
    _bound = op_norm(a - b)
    return WeylResult(
        gap=_gap, bound=_bound, holds=_gap <= _bound + WEYL_SLACK * (1 + _bound)
    )


def reconstruction_error(
    matrix: HermitianMatrix, decomposition: EigenDecomposition
) -> float:
    """Return the operator norm of A - Q diag(values) Q*."""
    _q = decomposition.vectors
    _rebuilt = (_q * decomposition.values[np.newaxis, :]) @ _q.conj().T
    return float(np.linalg.norm(matrix.entries - _rebuilt, ord=2))


def _check_same_dim(a: HermitianMatrix, b: HermitianMatrix):
    """Raise when two matrices differ in dimension."""
    if a.dim != b.dim:
        raise DimensionMismatchException(expected=a.dim, actual=b.dim)


def _off_norm(a: np.ndarray) -> float:
    """Return the Frobenius norm of the off-diagonal part."""
    return float(np.linalg.norm(a - np.diag(np.diag(a))))


def _rotate(a: np.ndarray, v: np.ndarray, p: int, q: int):
    """Annihilate a[p, q] in place and accumulate the rotation into v."""
    _apq = a[p, q]
    _abs = abs(_apq)
    if _abs == 0.0:
        return

    _phase = _apq / _abs
    _app = a[p, p].real
    _aqq = a[q, q].real
    _tau = (_aqq - _app) / (2.0 * _abs)
    if _tau >= 0:
        _t = 1.0 / (_tau + np.sqrt(1.0 + _tau * _tau))
    else:
        _t = -1.0 / (-_tau + np.sqrt(1.0 + _tau * _tau))
    _c = 1.0 / np.sqrt(1.0 + _t * _t)
    _s = _t * _c

    # G = diag(1, conj(phase)) @ [[c, s], [-s, c]] restricted to (p, q)
    _g = np.array(
        [[_c, _s], [-_s * _phase.conjugate(), _c * _phase.conjugate()]],
        dtype=complex,
    )
    _cols = [p, q]
    a[:, _cols] = a[:, _cols] @ _g
    a[_cols, :] = _g.conj().T @ a[_cols, :]
    v[:, _cols] = v[:, _cols] @ _g

    a[p, q] = 0.0
    a[q, p] = 0.0
    a[p, p] = _app - _t * _abs
    a[q, q] = _aqq + _t * _abs
