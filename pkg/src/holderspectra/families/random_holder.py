"""Seeded randomized stress family with a computable Hölder constant."""

from typing import Any

import numpy as np

from ..bin.kind import FamilyKind
from ..hermitian import HermitianMatrix, op_norm
from ..prng import SplitMix64
from .base import ParamFamily, validate_alpha


class RandomHolderFamily(ParamFamily):
    """A(t) = A0 + sum_k |t - tau_k|^alpha B_k."""

    kind: FamilyKind = FamilyKind.RANDOM_HOLDER

    def __init__(
        self,
        seed: int,
        alpha: float,
        base: np.ndarray,
        knots: np.ndarray,
        terms: list[np.ndarray],
    ) -> None:
        """Initialize the RandomHolderFamily class."""
        self._seed = int(seed)
        self._base = base
        self._knots = knots
        self._terms = terms
        self._holder_bound = float(
            sum(op_norm(HermitianMatrix(term)) for term in terms)
        )

        super().__init__(param_dim=1, matrix_dim=base.shape[0], claimed_alpha=alpha)

    @property
    def seed(self) -> int:
        """Get the generator seed."""
        return self._seed

    @property
    def knots(self) -> np.ndarray:
        """Get the knots tau_k."""
        return self._knots

    @property
    def holder_bound(self) -> float:
        """Get sum_k ||B_k||, a Hölder constant of the family at its exponent."""
        return self._holder_bound

    def summary(self) -> dict[str, Any]:
        """Return the resolved family metadata."""
        _summary = super().summary()
        _summary["seed"] = self._seed
        _summary["terms"] = len(self._terms)
        _summary["holder_bound"] = self._holder_bound
        return _summary

    @classmethod
    def from_spec(cls, params: dict[str, Any], alpha: float) -> "RandomHolderFamily":
        """Build the family from validated JSON parameters."""
        return build_random_holder(
            seed=params["seed"], alpha=alpha, n=params["N"], terms=params["terms"]
        )

    def _evaluate(self, u: np.ndarray) -> np.ndarray:
        """Return A0 plus the rough terms at t."""
        _t = u[0]
        _matrix = self._base.copy()
        for _knot, _term in zip(self._knots, self._terms, strict=True):
            _matrix = _matrix + abs(_t - _knot) ** self.claimed_alpha * _term
        return _matrix


def build_random_holder(
    seed: int, alpha: float, n: int, terms: int
) -> RandomHolderFamily:
    """
    Return a seeded C^{0,alpha} family.

    Draw order: A0, then for each term its knot in (-1, 1) followed by B_k.
    """
    _alpha = validate_alpha(alpha)
    _rng = SplitMix64(seed)
    _base = _rng.hermitian(int(n))
    _knots = []
    _terms = []
    for _ in range(max(int(terms), 0)):
        _knots.append(_rng.uniform(-1.0, 1.0))
        _terms.append(_rng.hermitian(int(n)))
    return RandomHolderFamily(
        seed=seed,
        alpha=_alpha,
        base=_base,
        knots=np.asarray(_knots, dtype=float),
        terms=_terms,
    )
