"""
Seeded SplitMix64 generator used by every randomized family.

The generator is fully specified by its 64-bit seed, so families built from the
same seed are reproducible to the bit level of the generator. Matrices are
filled in a fixed order (row-major upper triangle, real part before imaginary).
"""

import numpy as np

_MASK64 = 0xFFFFFFFFFFFFFFFF
_GOLDEN_GAMMA = 0x9E3779B97F4A7C15


class SplitMix64:
    """SplitMix64 pseudo random number generator."""

    def __init__(self, seed: int) -> None:
        """Initialize the SplitMix64 class."""
        self._seed = int(seed)
        self._state = self._seed & _MASK64

    @property
    def seed(self) -> int:
        """Get the seed the generator was built from."""
        return self._seed

    def next_uint64(self) -> int:
        """Advance the state and return the next 64-bit output."""
        self._state = (self._state + _GOLDEN_GAMMA) & _MASK64
        _z = self._state
        _z = ((_z ^ (_z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        _z = ((_z ^ (_z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return _z ^ (_z >> 31)

    def uniform(self, low: float = 0.0, high: float = 1.0) -> float:
        """Return a double in [low, high) from the top 53 bits."""
        return low + (high - low) * ((self.next_uint64() >> 11) * 2.0**-53)

    def uniform_array(self, count: int, low: float = 0.0, high: float = 1.0):
        """Return `count` uniform doubles in generation order."""
        return np.array([self.uniform(low, high) for _ in range(count)], dtype=float)

    def hermitian(self, dim: int, scale: float = 1.0) -> np.ndarray:
        """
        Return a dense Hermitian matrix with entries uniform in [-scale, scale).

        Diagonal entries are real. Off-diagonal entries are drawn real part
        first, imaginary part second, walking the upper triangle row by row.
        """
        _entries = np.zeros((dim, dim), dtype=complex)
        for i in range(dim):
            _entries[i, i] = self.uniform(-scale, scale)
            for j in range(i + 1, dim):
                _re = self.uniform(-scale, scale)
                _im = self.uniform(-scale, scale)
                _entries[i, j] = complex(_re, _im)
                _entries[j, i] = complex(_re, -_im)
        return _entries

    def unitary(self, dim: int) -> np.ndarray:
        """Return a unitary matrix from the QR factorization of a seeded matrix."""
        _raw = np.zeros((dim, dim), dtype=complex)
        for i in range(dim):
            for j in range(dim):
                _raw[i, j] = complex(self.uniform(-1.0, 1.0), self.uniform(-1.0, 1.0))
        _q, _r = np.linalg.qr(_raw)
        _phases = np.diag(_r) / np.abs(np.diag(_r))
        return _q * _phases[np.newaxis, :]

    def __repr__(self) -> str:
        """Return a string representation of the generator."""
        return f"SplitMix64(seed={self._seed})"
