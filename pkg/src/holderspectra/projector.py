"""Riesz spectral projectors by trapezoidal quadrature of the resolvent."""

from collections.abc import Sequence
from dataclasses import dataclass
import logging
from typing import Any

import numpy as np

from .bin.pair_policy import PairPolicy
from .exceptions import (
    ContourHitsSpectrumException,
    DegenerateGridException,
    EmptyProjectionException,
    InvalidContourException,
    RankAmbiguousException,
    SpectrumTooCloseException,
)
from .families.base import ParamFamily, validate_alpha
from .hermitian import HermitianMatrix, batch_op_norm, eig_ordered
from .pairs import holder_supremum

# Quadrature configuration
DEFAULT_QUADRATURE_NODES = 64
MIN_QUADRATURE_NODES = 8
MAX_QUADRATURE_NODES = 2048
DEFAULT_IDEMPOTENCY_TOLERANCE = 1e-10

# Admissibility: resolvent points and contours keep this relative distance
RESOLVENT_DISTANCE = 1e-8
CONTOUR_DISTANCE = 1e-6
RESOLVENT_RESIDUAL = 1e-8

# Singular values of P in this band make the rank untrustworthy
RANK_AMBIGUOUS_BAND = (0.25, 0.75)

# Default contour radius is this fraction of half the gap to the outside
DEFAULT_CONTOUR_SHRINK = 0.9

_LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True)
class Contour:
    """A circle centered on the real axis."""

    center: float
    radius: float
    nodes: int = DEFAULT_QUADRATURE_NODES

    def __post_init__(self):
        """Validate the contour invariants."""
        _center = complex(self.center)
        if _center.imag != 0.0:
            raise InvalidContourException(f"center must be real: {self.center}")
        if not self.radius > 0.0:
            raise InvalidContourException(f"radius must be positive: {self.radius}")
        if int(self.nodes) < MIN_QUADRATURE_NODES:
            raise InvalidContourException(
                f"at least {MIN_QUADRATURE_NODES} nodes are required: {self.nodes}"
            )
        object.__setattr__(self, "center", _center.real)
        object.__setattr__(self, "radius", float(self.radius))
        object.__setattr__(self, "nodes", int(self.nodes))

    def quadrature(self, nodes: int | None = None) -> tuple[np.ndarray, np.ndarray]:
        """Return trapezoidal nodes z_m and weights w_m for `nodes` points."""
        _m = self.nodes if nodes is None else int(nodes)
        _phases = np.exp(2j * np.pi * np.arange(_m) / _m)
        _points = self.center + self.radius * _phases
        _weights = (2j * np.pi * self.radius / _m) * _phases
        return _points, _weights

    def distance_to(self, values: np.ndarray) -> np.ndarray:
        """Return the distance of each real value to the circle."""
        return np.abs(np.abs(np.asarray(values) - self.center) - self.radius)

    def encloses(self, values: np.ndarray) -> np.ndarray:
        """Return a mask of values strictly inside the circle."""
        return np.abs(np.asarray(values) - self.center) < self.radius

    @classmethod
    def around_group(
        cls,
        values: Sequence[float],
        group: Sequence[int],
        nodes: int = DEFAULT_QUADRATURE_NODES,
    ) -> "Contour":
        """
        Return the default contour for an eigenvalue group (1-based indices).

        The center is the midpoint of the group. The radius reaches past the
        group by 0.9 times half the gap to the nearest outside eigenvalue.
        """
        _values = np.asarray(values, dtype=float)
        _inside = _values[[index - 1 for index in group]]
        _lo, _hi = float(_inside.min()), float(_inside.max())
        _center = (_lo + _hi) / 2
        _half_width = (_hi - _lo) / 2

        _mask = np.ones(_values.size, dtype=bool)
        _mask[[index - 1 for index in group]] = False
        _outside = _values[_mask]
        if _outside.size:
            _gap = float(np.min(np.maximum(_lo - _outside, _outside - _hi)))
        else:
            _gap = 1.0 + float(np.abs(_values).max())
        return cls(
            center=_center,
            radius=_half_width + DEFAULT_CONTOUR_SHRINK * _gap / 2,
            nodes=nodes,
        )


class SpectralProjector:
    """A contour-integrated projector with its rank and range basis."""

    def __init__(
        self, matrix: np.ndarray, rank: int, range_basis: np.ndarray, nodes: int
    ) -> None:
        """Initialize the SpectralProjector class."""
        self._matrix = matrix
        self._rank = int(rank)
        self._range_basis = range_basis
        self._nodes = int(nodes)

    @property
    def matrix(self) -> np.ndarray:
        """Get the projector matrix P."""
        return self._matrix

    @property
    def rank(self) -> int:
        """Get the rank of P."""
        return self._rank

    @property
    def range_basis(self) -> np.ndarray:
        """Get an orthonormal basis (N x rank) of the range of P."""
        return self._range_basis

    @property
    def nodes(self) -> int:
        """Get the number of quadrature nodes used."""
        return self._nodes

    @property
    def trace(self) -> complex:
        """Get the trace of P."""
        return complex(np.trace(self._matrix))

    @property
    def idempotency_error(self) -> float:
        """Get ||P^2 - P||."""
        return float(np.linalg.norm(self._matrix @ self._matrix - self._matrix, ord=2))

    @property
    def hermiticity_error(self) -> float:
        """Get ||P* - P||."""
        return float(np.linalg.norm(self._matrix.conj().T - self._matrix, ord=2))

    def diagnostics(self) -> dict[str, Any]:
        """Return the rank, trace, and quadrature diagnostics."""
        return {
            "rank": self._rank,
            "trace": self.trace.real,
            "idempotency_error": self.idempotency_error,
            "nodes": self._nodes,
        }

    def __repr__(self) -> str:
        """Return a string representation of the projector."""
        return f"SpectralProjector(rank={self._rank}, nodes={self._nodes})"


def resolvent(matrix: HermitianMatrix, z: complex) -> np.ndarray:
    """Return (A - zI)^{-1}, refusing points too close to the spectrum."""
    _values = eig_ordered(matrix).values
    _distance = float(np.abs(_values - z).min())
    if _distance <= RESOLVENT_DISTANCE * (1 + float(np.abs(_values).max())):
        raise SpectrumTooCloseException(z, _distance)

    _shifted = matrix.entries - z * np.eye(matrix.dim)
    _resolvent = np.linalg.solve(_shifted, np.eye(matrix.dim, dtype=complex))
    _residual = float(np.linalg.norm(_shifted @ _resolvent - np.eye(matrix.dim), ord=2))
    if _residual > RESOLVENT_RESIDUAL:
        raise SpectrumTooCloseException(z, _distance)
    return _resolvent


def check_contour(matrix: HermitianMatrix, gamma: Contour) -> np.ndarray:
    """Return the ascending spectrum, raising when an eigenvalue meets gamma."""
    _values = eig_ordered(matrix).values
    _tolerance = CONTOUR_DISTANCE * (1 + float(np.abs(_values).max()))
    _distances = gamma.distance_to(_values)
    if (_distances <= _tolerance).any():
        raise ContourHitsSpectrumException(
            gamma.center, gamma.radius, float(_values[int(np.argmin(_distances))])
        )
    return _values


def contour_projector(
    matrix: HermitianMatrix,
    gamma: Contour,
    adaptive: bool = True,
    tolerance: float = DEFAULT_IDEMPOTENCY_TOLERANCE,
    max_nodes: int = MAX_QUADRATURE_NODES,
) -> SpectralProjector:
    """
    Return P = -1/(2 pi i) * sum_m w_m (A - z_m)^{-1}.

    With `adaptive` the node count starts at gamma.nodes and doubles until
    ||P^2 - P|| <= tolerance or `max_nodes` is reached.
    """
    check_contour(matrix, gamma)

    _nodes = gamma.nodes
    while True:
        _matrix = _quadrature(matrix, gamma, _nodes)
        _error = float(np.linalg.norm(_matrix @ _matrix - _matrix, ord=2))
        _LOGGER.debug("Quadrature with %s nodes: ||P^2 - P|| = %.3e", _nodes, _error)
        if not adaptive or _error <= tolerance or _nodes >= max_nodes:
            break
        _nodes *= 2

    if adaptive and _error > tolerance:
        _LOGGER.warning(
            "Projector idempotency %.3e above %.1e after %s nodes",
            _error,
            tolerance,
            _nodes,
        )

    _rank, _basis = _rank_and_basis(_matrix)
    return SpectralProjector(_matrix, _rank, _basis, _nodes)


def project_block(
    matrix: HermitianMatrix, projector: SpectralProjector, allow_empty: bool = True
) -> HermitianMatrix:
    """Return Q* A Q on the range of the projector (rank x rank)."""
    if projector.rank == 0:
        if not allow_empty:
            raise EmptyProjectionException()
        _LOGGER.warning("Contour encloses no eigenvalue; returning the empty block")
        return HermitianMatrix.empty()

    _q = projector.range_basis
    return HermitianMatrix(_q.conj().T @ matrix.entries @ _q)


def enclosed_count(matrix: HermitianMatrix, gamma: Contour) -> int:
    """Return the number of eigenvalues strictly inside gamma, via trace(P)."""
    return round(contour_projector(matrix, gamma).trace.real)


def projector_holder_constant(
    family: ParamFamily,
    gamma: Contour,
    grid: Sequence[float],
    alpha: float,
    pair_policy: PairPolicy = PairPolicy.AUTO,
) -> dict[str, Any]:
    """Return sup ||P(s) - P(t)|| / |s - t|^alpha over grid pairs."""
    _alpha = validate_alpha(alpha)
    _grid = np.asarray(grid, dtype=float)
    if _grid.size < 2 or np.any(np.diff(_grid) <= 0):
        raise DegenerateGridException("grid must hold at least two ascending nodes")

    _projectors = []
    for _t in _grid:
        try:
            _projectors.append(contour_projector(family.eval(_t), gamma).matrix)
        except ContourHitsSpectrumException as e:
            raise ContourHitsSpectrumException(
                e.center, e.radius, e.eigenvalue, t=float(_t)
            ) from e
    _stack = np.array(_projectors)

    _constant, (j, k), _pairs = holder_supremum(
        lambda j, partners: np.abs(_grid[partners] - _grid[j]),
        lambda j, partners: batch_op_norm(_stack[partners] - _stack[j]),
        _grid.size,
        _alpha,
        pair_policy,
    )
    return {
        "alpha": _alpha,
        "constant": _constant,
        "witness": [float(_grid[j]), float(_grid[k])],
        "pairs_tested": _pairs,
    }


def _quadrature(matrix: HermitianMatrix, gamma: Contour, nodes: int) -> np.ndarray:
    """Sum the trapezoidal rule in ascending node order."""
    _points, _weights = gamma.quadrature(nodes)
    _identity = np.eye(matrix.dim, dtype=complex)
    _sum = np.zeros((matrix.dim, matrix.dim), dtype=complex)
    for _z, _w in zip(_points, _weights, strict=True):
        _sum += _w * np.linalg.solve(matrix.entries - _z * _identity, _identity)
    return -_sum / (2j * np.pi)


def _rank_and_basis(matrix: np.ndarray) -> tuple[int, np.ndarray]:
    """Count singular values above 1/2 and orthonormalize the leading vectors."""
    _u, _sigma, _ = np.linalg.svd(matrix)
    _lo, _hi = RANK_AMBIGUOUS_BAND
    _ambiguous = _sigma[(_sigma >= _lo) & (_sigma <= _hi)]
    if _ambiguous.size:
        raise RankAmbiguousException(float(_ambiguous[0]))

    _rank = int(np.sum(_sigma > 0.5))
    if _rank == 0:
        return 0, np.zeros((matrix.shape[0], 0), dtype=complex)
    _basis, _ = np.linalg.qr(_u[:, :_rank])
    return _rank, _basis
