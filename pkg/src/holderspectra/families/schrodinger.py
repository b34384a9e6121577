"""Dirichlet finite-difference truncation of a 1D Schrödinger operator."""

from collections.abc import Callable, Sequence
import logging
from typing import Any

import numpy as np

from ..bin.kind import FamilyKind
from ..exceptions import InvalidFamilySpecException
from ..hermitian import eig_ordered
from .base import ParamFamily

_LOGGER = logging.getLogger(__name__)

Potential = Callable[[Any, np.ndarray], Any]


def _named_potential(name: str, strength: float, alpha: float) -> Potential:
    """Return one of the named potentials accepted by the JSON specification."""
    if name == "zero":
        return lambda _u, x: np.zeros_like(x)
    if name == "shift":
        return lambda u, x: strength * u * np.ones_like(x)
    if name == "ramp":
        return lambda u, x: strength * u * x
    if name == "harmonic":
        return lambda u, x: strength * u * (x - 0.5) ** 2
    # rough_well
    return lambda u, x: strength * abs(u) ** alpha * (x - 0.5) ** 2


NAMED_POTENTIALS = ("zero", "shift", "ramp", "harmonic", "rough_well")


class SchrodingerFamily(ParamFamily):
    """A(u) = -d^2/dx^2 + V(u, x) on (0, 1), Dirichlet, n interior points."""

    kind: FamilyKind = FamilyKind.SCHRODINGER

    def __init__(
        self,
        potential: Potential,
        n: int,
        claimed_alpha: float = 1.0,
        param_dim: int = 1,
        domain_box: Sequence[tuple[float, float]] | None = None,
        potential_name: str | None = None,
    ) -> None:
        """Initialize the SchrodingerFamily class."""
        self._potential = potential
        self._potential_name = potential_name
        self._n = int(n)
        self._h = 1.0 / (self._n + 1)
        self._x = np.arange(1, self._n + 1) * self._h

        _kinetic = np.zeros((self._n, self._n), dtype=complex)
        _idx = np.arange(self._n)
        _kinetic[_idx, _idx] = 2.0 / self._h**2
        _kinetic[_idx[:-1], _idx[1:]] = -1.0 / self._h**2
        _kinetic[_idx[1:], _idx[:-1]] = -1.0 / self._h**2
        self._kinetic = _kinetic

        super().__init__(
            param_dim=param_dim,
            matrix_dim=self._n,
            claimed_alpha=claimed_alpha,
            domain_box=domain_box,
        )

    @property
    def h(self) -> float:
        """Get the grid spacing 1 / (n + 1)."""
        return self._h

    @property
    def x(self) -> np.ndarray:
        """Get the interior grid points i * h."""
        return self._x

    def free_spectrum(self) -> np.ndarray:
        """Return the closed-form eigenvalues of the V = 0 truncation, ascending."""
        _k = np.arange(1, self._n + 1)
        return (2.0 / self._h**2) * (1.0 - np.cos(_k * np.pi * self._h))

    def summary(self) -> dict[str, Any]:
        """Return the resolved family metadata."""
        _summary = super().summary()
        _summary["potential"] = self._potential_name
        _summary["h"] = self._h
        return _summary

    @classmethod
    def from_spec(cls, params: dict[str, Any], alpha: float) -> "SchrodingerFamily":
        """Build the family from validated JSON parameters."""
        _name = params.get("potential", "zero")
        return build_schrodinger_1d(
            potential=_named_potential(_name, params.get("strength", 1.0), alpha),
            n=params["n"],
            claimed_alpha=alpha,
            potential_name=_name,
        )

    def _evaluate(self, u: np.ndarray) -> np.ndarray:
        """Return the tridiagonal stencil plus the potential on the diagonal."""
        _u = u[0] if self.param_dim == 1 else u
        _v = np.broadcast_to(
            np.asarray(self._potential(_u, self._x), dtype=float), self._x.shape
        )
        return self._kinetic + np.diag(_v)


def build_schrodinger_1d(
    potential: Potential,
    n: int,
    claimed_alpha: float = 1.0,
    param_dim: int = 1,
    domain_box: Sequence[tuple[float, float]] | None = None,
    potential_name: str | None = None,
) -> SchrodingerFamily:
    """Return the n x n Dirichlet truncation family."""
    if int(n) < 2:
        raise InvalidFamilySpecException("n", "at least 2 grid points are required")
    return SchrodingerFamily(
        potential=potential,
        n=n,
        claimed_alpha=claimed_alpha,
        param_dim=param_dim,
        domain_box=domain_box,
        potential_name=potential_name,
    )


def truncation_convergence(
    potential: Potential, ns: Sequence[int], u: float = 0.0, count: int = 4
) -> list[dict[str, Any]]:
    """
    Report the lowest `count` eigenvalues for each truncation dimension.

    Each entry carries the largest change against the previous dimension, so
    convergence in n is observed, never proven.
    """
    _report = []
    _previous = None
    for _n in ns:
        _family = build_schrodinger_1d(potential=potential, n=_n)
        _values = eig_ordered(_family.eval(u)).values[:count]
        _change = None
        if _previous is not None:
            _k = min(_values.size, _previous.size)
            _change = float(np.abs(_values[:_k] - _previous[:_k]).max())
        _LOGGER.info("Truncation n=%s lowest eigenvalues %s", _n, _values)
        _report.append(
            {"n": int(_n), "eigenvalues": _values.tolist(), "max_change": _change}
        )
        _previous = _values
    return _report
