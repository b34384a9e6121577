"""Conjugated family of affine eigenvalue lines with interior crossings."""

from collections.abc import Sequence
from typing import Any

import numpy as np

from ..bin.kind import FamilyKind
from ..exceptions import DimensionMismatchException, InvalidFamilySpecException
from ..prng import SplitMix64
from .base import ParamFamily


def default_offsets(count: int) -> np.ndarray:
    """
    Return the default line offsets.

    Squares of equally spaced nodes in [-0.5, 0.5]. Plain equally spaced
    offsets make equally spaced slopes concurrent in a single point.
    """
    return np.linspace(-0.5, 0.5, count) ** 2


class CrossingLinesFamily(ParamFamily):
    """A(t) = W diag(slope_i * t + offset_i) W* with a fixed seeded unitary W."""

    kind: FamilyKind = FamilyKind.CROSSING_LINES

    def __init__(
        self,
        slopes: Sequence[float],
        offsets: Sequence[float],
        mixer: np.ndarray,
        mixer_seed: int | None = None,
        claimed_alpha: float = 1.0,
    ) -> None:
        """Initialize the CrossingLinesFamily class."""
        self._slopes = np.asarray(slopes, dtype=float)
        self._offsets = np.asarray(offsets, dtype=float)
        self._mixer = np.asarray(mixer, dtype=complex)
        self._mixer_seed = mixer_seed

        super().__init__(
            param_dim=1, matrix_dim=self._slopes.size, claimed_alpha=claimed_alpha
        )

    @property
    def slopes(self) -> np.ndarray:
        """Get the line slopes."""
        return self._slopes

    @property
    def offsets(self) -> np.ndarray:
        """Get the line offsets."""
        return self._offsets

    @property
    def mixer(self) -> np.ndarray:
        """Get the unitary conjugation W."""
        return self._mixer

    def line_values(self, t: float) -> np.ndarray:
        """Return the unsorted line values slope_i * t + offset_i."""
        return self._slopes * float(t) + self._offsets

    def crossings(self) -> list[tuple[float, int, int]]:
        """Return every pairwise line intersection (t, i, j) inside the domain."""
        _lo, _hi = self.domain_box[0]
        _crossings = []
        for i in range(self.matrix_dim):
            for j in range(i + 1, self.matrix_dim):
                _ds = self._slopes[i] - self._slopes[j]
                if _ds == 0.0:
                    continue
                _t = -(self._offsets[i] - self._offsets[j]) / _ds
                if _lo < _t < _hi:
                    _crossings.append((float(_t), i, j))
        return sorted(_crossings)

    def summary(self) -> dict[str, Any]:
        """Return the resolved family metadata."""
        _summary = super().summary()
        _summary["mixer_seed"] = self._mixer_seed
        return _summary

    @classmethod
    def from_spec(cls, params: dict[str, Any], alpha: float) -> "CrossingLinesFamily":
        """Build the family from validated JSON parameters."""
        return build_crossing_lines(
            slopes=params["slopes"],
            mixer=params.get("mixer_seed"),
            offsets=params.get("offsets"),
            claimed_alpha=alpha,
        )

    def _evaluate(self, u: np.ndarray) -> np.ndarray:
        """Return W diag(lines(t)) W*."""
        _w = self._mixer
        return (_w * self.line_values(u[0])[np.newaxis, :]) @ _w.conj().T


def build_crossing_lines(
    slopes: Sequence[float],
    mixer: int | np.ndarray | None = None,
    offsets: Sequence[float] | None = None,
    claimed_alpha: float = 1.0,
) -> CrossingLinesFamily:
    """
    Return the multi-crossing test family.

    `mixer` is either a seed for the SplitMix64 unitary, an explicit unitary
    matrix, or None for W = I.
    """
    _slopes = np.asarray(slopes, dtype=float)
    if _slopes.ndim != 1 or _slopes.size < 2:
        raise InvalidFamilySpecException("slopes", "at least two slopes are required")

    _n = _slopes.size
    _offsets = default_offsets(_n) if offsets is None else np.asarray(offsets, float)
    if _offsets.shape != (_n,):
        raise DimensionMismatchException(expected=_n, actual=_offsets.size)

    _seed = None
    if mixer is None:
        _mixer = np.eye(_n, dtype=complex)
    elif isinstance(mixer, int | np.integer):
        _seed = int(mixer)
        _mixer = SplitMix64(_seed).unitary(_n)
    else:
        _mixer = np.asarray(mixer, dtype=complex)
        if _mixer.shape != (_n, _n):
            raise DimensionMismatchException(expected=_n, actual=_mixer.shape[0])

    return CrossingLinesFamily(
        slopes=_slopes,
        offsets=_offsets,
        mixer=_mixer,
        mixer_seed=_seed,
        claimed_alpha=claimed_alpha,
    )


def build_seeded_crossing_lines(
    seed: int, n: int, claimed_alpha: float = 1.0
) -> CrossingLinesFamily:
    """
    Return crossing lines with seeded slopes, offsets and mixer.

    Draw order: slopes in [-1, 1), offsets in [-0.5, 0.5), then the unitary.
    """
    _rng = SplitMix64(seed)
    _slopes = _rng.uniform_array(int(n), -1.0, 1.0)
    _offsets = _rng.uniform_array(int(n), -0.5, 0.5)
    return CrossingLinesFamily(
        slopes=_slopes,
        offsets=_offsets,
        mixer=_rng.unitary(int(n)),
        mixer_seed=int(seed),
        claimed_alpha=claimed_alpha,
    )
