"""Rough coupling family whose eigenvalues are exactly Hölder of order alpha."""

from typing import Any

import numpy as np

from ..bin.kind import FamilyKind
from .base import ParamFamily, validate_alpha


class RoughCouplingFamily(ParamFamily):
    """The 2 x 2 family [[0, s|t|^a], [s|t|^a, 0]] on [-1, 1]."""

    kind: FamilyKind = FamilyKind.ROUGH_COUPLING

    def __init__(self, alpha: float, scale: float = 1.0) -> None:
        """Initialize the RoughCouplingFamily class."""
        self._scale = float(scale)

        super().__init__(param_dim=1, matrix_dim=2, claimed_alpha=alpha)

    @property
    def scale(self) -> float:
        """Get the coupling scale."""
        return self._scale

    @classmethod
    def from_spec(cls, params: dict[str, Any], alpha: float) -> "RoughCouplingFamily":
        """Build the family from validated JSON parameters."""
        return build_rough_coupling(alpha=alpha, scale=params.get("scale", 1.0))

    def _evaluate(self, u: np.ndarray) -> np.ndarray:
        """Return the antidiagonal coupling matrix."""
        _coupling = self._scale * abs(u[0]) ** self.claimed_alpha
        return np.array([[0.0, _coupling], [_coupling, 0.0]], dtype=complex)


def build_rough_coupling(alpha: float, scale: float = 1.0) -> RoughCouplingFamily:
    """Return the canonical family with eigenvalues +/- scale * |t|^alpha."""
    return RoughCouplingFamily(alpha=validate_alpha(alpha), scale=scale)
