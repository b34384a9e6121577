"""Parametrized Hermitian family base class and the pullback along curves."""

from collections.abc import Callable, Sequence
import logging
from typing import Any

import numpy as np

from ..bin.kind import FamilyKind
from ..exceptions import (
    DimensionMismatchException,
    InvalidAlphaException,
    OutOfDomainException,
)
from ..hermitian import HermitianMatrix

DEFAULT_DOMAIN = (-1.0, 1.0)

# Slack allowed on the domain box edges for grids built by linspace.
DOMAIN_SLACK = 1e-12

# Points used to check that a curve stays inside the family domain.
CURVE_CHECK_POINTS = 65

_LOGGER = logging.getLogger(__name__)


def validate_alpha(alpha: float) -> float:
    """Return alpha as float, raising unless 0 < alpha <= 1."""
    _alpha = float(alpha)
    if not 0.0 < _alpha <= 1.0:
        raise InvalidAlphaException(alpha)
    return _alpha


class ParamFamily:
    """Base class for a deterministic map u -> A(u) of Hermitian matrices."""

    kind: FamilyKind = FamilyKind.UNDEFINED

    def __init__(
        self,
        param_dim: int,
        matrix_dim: int,
        claimed_alpha: float,
        domain_box: Sequence[tuple[float, float]] | None = None,
    ) -> None:
        """Initialize the ParamFamily class."""
        if domain_box is None:
            domain_box = [DEFAULT_DOMAIN] * param_dim
        if len(domain_box) != param_dim:
            raise DimensionMismatchException(expected=param_dim, actual=len(domain_box))

        self._param_dim = int(param_dim)
        self._matrix_dim = int(matrix_dim)
        self._claimed_alpha = validate_alpha(claimed_alpha)
        self._domain_box = tuple((float(lo), float(hi)) for lo, hi in domain_box)

    @property
    def param_dim(self) -> int:
        """Get the parameter dimension d."""
        return self._param_dim

    @property
    def matrix_dim(self) -> int:
        """Get the matrix dimension N."""
        return self._matrix_dim

    @property
    def claimed_alpha(self) -> float:
        """Get the claimed Hölder exponent."""
        return self._claimed_alpha

    @property
    def domain_box(self) -> tuple[tuple[float, float], ...]:
        """Get the per-coordinate closed domain intervals."""
        return self._domain_box

    def contains(self, u) -> bool:
        """Return True when u lies in the domain box."""
        _u = self._as_parameter(u)
        return all(
            lo - DOMAIN_SLACK <= x <= hi + DOMAIN_SLACK
            for x, (lo, hi) in zip(_u, self._domain_box, strict=True)
        )

    def eval(self, u) -> HermitianMatrix:
        """Evaluate the family at u."""
        _u = self._as_parameter(u)
        if not self.contains(_u):
            raise OutOfDomainException(_u.tolist(), self._domain_box)
        return HermitianMatrix(self._evaluate(_u))

    def summary(self) -> dict[str, Any]:
        """Return the resolved family metadata."""
        return {
            "kind": self.kind.value,
            "N": self._matrix_dim,
            "d": self._param_dim,
            "alpha": self._claimed_alpha,
            "domain": [list(interval) for interval in self._domain_box],
        }

    @classmethod
    def from_spec(cls, params: dict[str, Any], alpha: float) -> "ParamFamily":
        """Build the family from validated JSON parameters."""
        raise NotImplementedError

    def _as_parameter(self, u) -> np.ndarray:
        """Return u as a float vector of length param_dim."""
        _u = np.atleast_1d(np.asarray(u, dtype=float))
        if _u.ndim != 1 or _u.shape[0] != self._param_dim:
            raise DimensionMismatchException(
                expected=self._param_dim,
                actual=_u.shape[0] if _u.ndim == 1 else _u.size,
            )
        return _u

    def _evaluate(self, u: np.ndarray) -> np.ndarray:
        """Return the raw entries of A(u)."""
        raise NotImplementedError

    def __repr__(self) -> str:
        """Return a string representation of the family."""
        return (
            f"Family(class='{self.__class__.__name__}', "
            f"N={self._matrix_dim}, "
            f"d={self._param_dim}, "
            f"alpha={self._claimed_alpha})"
        )


class SmoothCurve:
    """A smooth curve t -> c(t) in parameter space."""

    def __init__(
        self,
        evaluator: Callable[[float], Sequence[float]],
        output_dim: int,
        interval: tuple[float, float] = DEFAULT_DOMAIN,
        derivative_evaluator: Callable[[float], Sequence[float]] | None = None,
    ) -> None:
        """Initialize the SmoothCurve class."""
        self._evaluator = evaluator
        self._output_dim = int(output_dim)
        self._interval = (float(interval[0]), float(interval[1]))
        self._derivative_evaluator = derivative_evaluator

    @property
    def input_dim(self) -> int:
        """Get the input dimension, always 1."""
        return 1

    @property
    def output_dim(self) -> int:
        """Get the output dimension d."""
        return self._output_dim

    @property
    def interval(self) -> tuple[float, float]:
        """Get the parameter interval of the curve."""
        return self._interval

    def __call__(self, t: float) -> np.ndarray:
        """Evaluate c(t)."""
        _point = np.atleast_1d(np.asarray(self._evaluator(float(t)), dtype=float))
        if _point.shape != (self._output_dim,):
            raise DimensionMismatchException(
                expected=self._output_dim, actual=_point.size
            )
        return _point

    def derivative(self, t: float) -> np.ndarray | None:
        """Evaluate c'(t) when a derivative is available."""
        if self._derivative_evaluator is None:
            return None
        _derivative = self._derivative_evaluator(float(t))
        return np.atleast_1d(np.asarray(_derivative, dtype=float))

    @classmethod
    def constant(cls, point: Sequence[float]) -> "SmoothCurve":
        """Return the constant curve c(t) = point."""
        _point = np.asarray(point, dtype=float)
        return cls(
            lambda _t: _point,
            output_dim=_point.size,
            derivative_evaluator=lambda _t: np.zeros_like(_point),
        )

    @classmethod
    def line(cls, start: Sequence[float], end: Sequence[float]) -> "SmoothCurve":
        """Return the segment from start (t = 0) to end (t = 1)."""
        _start = np.asarray(start, dtype=float)
        _direction = np.asarray(end, dtype=float) - _start
        return cls(
            lambda t: _start + t * _direction,
            output_dim=_start.size,
            interval=(0.0, 1.0),
            derivative_evaluator=lambda _t: _direction,
        )

    def __repr__(self) -> str:
        """Return a string representation of the curve."""
        return f"SmoothCurve(output_dim={self._output_dim}, interval={self._interval})"


class PullbackFamily(ParamFamily):
    """The one-parameter family t -> A(c(t))."""

    kind: FamilyKind = FamilyKind.PULLBACK

    def __init__(self, family: ParamFamily, curve: SmoothCurve) -> None:
        """Initialize the PullbackFamily class."""
        self._family = family
        self._curve = curve

        super().__init__(
            param_dim=1,
            matrix_dim=family.matrix_dim,
            claimed_alpha=family.claimed_alpha,
            domain_box=[curve.interval],
        )

    @property
    def family(self) -> ParamFamily:
        """Get the family being pulled back."""
        return self._family

    @property
    def curve(self) -> SmoothCurve:
        """Get the curve the family is pulled back along."""
        return self._curve

    def eval(self, u) -> HermitianMatrix:
        """Evaluate the underlying family at c(t)."""
        _t = self._as_parameter(u)
        if not self.contains(_t):
            raise OutOfDomainException(_t.tolist(), self.domain_box)
        return self._family.eval(self._curve(_t[0]))


def pullback(family: ParamFamily, curve: SmoothCurve) -> PullbackFamily:
    """Return the one-parameter family t -> A(c(t))."""
    if curve.output_dim != family.param_dim:
        raise DimensionMismatchException(
            expected=family.param_dim, actual=curve.output_dim
        )

    _lo, _hi = curve.interval
    for _t in np.linspace(_lo, _hi, CURVE_CHECK_POINTS):
        _point = curve(_t)
        if not family.contains(_point):
            raise OutOfDomainException(_point.tolist(), family.domain_box)

    _LOGGER.debug("Pulled back %s along %s", family, curve)
    return PullbackFamily(family, curve)
