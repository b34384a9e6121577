"""Families given by explicit closed-form matrix paths."""

from collections.abc import Callable, Sequence
from typing import Any

import numpy as np

from ..bin.kind import FamilyKind
from .base import ParamFamily

DIAGONAL_FORMS = ("constant", "linear", "exp_minus_one", "abs_power")


class MatrixPathFamily(ParamFamily):
    """A family defined by a callable u -> entries."""

    kind: FamilyKind = FamilyKind.MATRIX_PATH

    def __init__(
        self,
        evaluator: Callable[[np.ndarray], Any],
        matrix_dim: int,
        claimed_alpha: float = 1.0,
        param_dim: int = 1,
        domain_box: Sequence[tuple[float, float]] | None = None,
    ) -> None:
        """Initialize the MatrixPathFamily class."""
        self._evaluator = evaluator

        super().__init__(
            param_dim=param_dim,
            matrix_dim=matrix_dim,
            claimed_alpha=claimed_alpha,
            domain_box=domain_box,
        )

    def _evaluate(self, u: np.ndarray) -> np.ndarray:
        """Return the evaluator output as a complex array."""
        return np.asarray(self._evaluator(u), dtype=complex).reshape(
            self.matrix_dim, self.matrix_dim
        )


class DiagonalPathFamily(MatrixPathFamily):
    """diag(offset_i + coefficient_i * f_i(t)) with named closed forms f_i."""

    kind: FamilyKind = FamilyKind.DIAGONAL_PATH

    def __init__(
        self,
        entries: Sequence[dict[str, Any]],
        claimed_alpha: float = 1.0,
        domain_box: Sequence[tuple[float, float]] | None = None,
    ) -> None:
        """Initialize the DiagonalPathFamily class."""
        self._entries = [dict(entry) for entry in entries]
        _alpha = claimed_alpha

        def _diagonal(u: np.ndarray) -> np.ndarray:
            return np.diag(
                [_entry_value(entry, u[0], _alpha) for entry in self._entries]
            )

        super().__init__(
            evaluator=_diagonal,
            matrix_dim=len(self._entries),
            claimed_alpha=claimed_alpha,
            domain_box=domain_box,
        )

    @classmethod
    def from_spec(cls, params: dict[str, Any], alpha: float) -> "DiagonalPathFamily":
        """Build the family from validated JSON parameters."""
        return cls(entries=params["entries"], claimed_alpha=alpha)


class ShiftFamily(MatrixPathFamily):
    """diag(base) + t * I."""

    kind: FamilyKind = FamilyKind.SHIFT

    def __init__(
        self,
        base: Sequence[float],
        domain_box: Sequence[tuple[float, float]] | None = None,
    ) -> None:
        """Initialize the ShiftFamily class."""
        self._base = np.asarray(base, dtype=float)
        _base = self._base

        super().__init__(
            evaluator=lambda u: np.diag(_base + u[0]),
            matrix_dim=_base.size,
            claimed_alpha=1.0,
            domain_box=domain_box,
        )

    @property
    def base(self) -> np.ndarray:
        """Get the diagonal at t = 0."""
        return self._base

    @classmethod
    def from_spec(cls, params: dict[str, Any], alpha: float) -> "ShiftFamily":
        """Build the family from validated JSON parameters."""
        return cls(base=params["base"])


def _entry_value(entry: dict[str, Any], t: float, alpha: float) -> float:
    """Return offset + coefficient * f(t) for one diagonal entry."""
    _form = entry.get("form", "constant")
    _coefficient = entry.get("coefficient", 1.0)
    _offset = entry.get("offset", 0.0)
    if _form == "linear":
        _value = t
    elif _form == "exp_minus_one":
        _value = np.expm1(t)
    elif _form == "abs_power":
        _value = abs(t) ** alpha
    else:
        _value = 0.0
    return _offset + _coefficient * _value


def build_matrix_path(
    evaluator: Callable[[np.ndarray], Any],
    matrix_dim: int,
    claimed_alpha: float = 1.0,
    param_dim: int = 1,
    domain_box: Sequence[tuple[float, float]] | None = None,
) -> MatrixPathFamily:
    """Return a family from an explicit deterministic evaluator."""
    return MatrixPathFamily(
        evaluator=evaluator,
        matrix_dim=matrix_dim,
        claimed_alpha=claimed_alpha,
        param_dim=param_dim,
        domain_box=domain_box,
    )
