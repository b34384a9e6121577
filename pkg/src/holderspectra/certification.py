"""Hölder certificates for eigenvalue branches, transfer bounds, and growth."""

from collections.abc import Sequence
from dataclasses import dataclass
import logging
from typing import Any

import numpy as np

from .bin.pair_policy import PairPolicy
from .exceptions import (
    DegenerateGridException,
    DimensionMismatchException,
    NonLipschitzBranchException,
)
from .families.base import ParamFamily, SmoothCurve, pullback, validate_alpha
from .hermitian import batch_op_norm
from .pairs import holder_supremum
from .tracking import Branch, EigenSample, ordered_branches, sample_grid

# Relative slack on claimed bounds and on the N * C transfer bound
BOUND_SLACK = 1e-9

# Gronwall violations below GRONWALL_SLACK * (1 + scale) count as holding
GRONWALL_SLACK = 1e-9

# Halving the grid may grow a Lipschitz constant by at most this factor
LIPSCHITZ_GROWTH_LIMIT = 1.25

# Nodes per curve when certify_along_curves builds its own grid
DEFAULT_CURVE_NODES = 129

_LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True)
class HolderCertificate:
    """The supremum of the Hölder quotients over a tested pair set."""

    alpha: float
    constant: float
    witness: tuple
    pairs_tested: int
    claimed_bound: float | None = None

    @property
    def passed(self) -> bool:
        """Return True when no bound was claimed or the constant respects it."""
        if self.claimed_bound is None:
            return True
        return self.constant <= self.claimed_bound * (1 + BOUND_SLACK)

    def to_dict(self) -> dict[str, Any]:
        """Return the certificate as a JSON-ready dict."""
        return {
            "alpha": self.alpha,
            "constant": self.constant,
            "witness": list(self.witness),
            "pairs_tested": self.pairs_tested,
            "claimed_bound": self.claimed_bound,
            "passed": self.passed,
        }


@dataclass(frozen=True)
class TransferReport:
    """Hölder constants of the ordered branches against one selection."""

    c_ordered: float
    c_selection: float
    n: int
    holds: bool

    def to_dict(self) -> dict[str, Any]:
        """Return the report as a JSON-ready dict."""
        return {
            "C_ordered": self.c_ordered,
            "C_selection": self.c_selection,
            "N": self.n,
            "holds": self.holds,
        }


@dataclass(frozen=True)
class GrowthModel:
    """|lambda'(t)| <= C + C |lambda(t)| with Gronwall rate a."""

    c: float
    a: float
    step: float

    def to_dict(self) -> dict[str, Any]:
        """Return the model as a JSON-ready dict."""
        return {"C": self.c, "a": self.a, "step": self.step}


@dataclass(frozen=True)
class GronwallReport:
    """Largest excess of |lambda(s) - lambda(t)| over the Gronwall bound."""

    max_violation: float
    holds: bool

    def to_dict(self) -> dict[str, Any]:
        """Return the report as a JSON-ready dict."""
        return {"max_violation": self.max_violation, "holds": self.holds}


@dataclass(frozen=True)
class ChainDecomposition:
    """Links [t_r, t_{r+1}] on which a selection follows one ordered branch."""

    nodes: list[int]
    indices: list[int]
    increment: float
    chained_sum: float
    junction_error: float
    bound: float | None

    @property
    def links(self) -> int:
        """Return the number of links."""
        return len(self.indices)

    @property
    def holds(self) -> bool:
        """Return True when increment <= chained sum (<= bound when given)."""
        _scale = 1 + abs(self.chained_sum)
        if self.increment > self.chained_sum + self.junction_error + 1e-12 * _scale:
            return False
        if self.bound is None:
            return True
        return self.chained_sum <= self.bound * (1 + BOUND_SLACK) + 1e-12

    def to_dict(self) -> dict[str, Any]:
        """Return the decomposition as a JSON-ready dict."""
        return {
            "nodes": self.nodes,
            "indices": self.indices,
            "links": self.links,
            "increment": self.increment,
            "chained_sum": self.chained_sum,
            "junction_error": self.junction_error,
            "bound": self.bound,
            "holds": self.holds,
        }


def holder_constant(
    branch: Branch,
    alpha: float,
    pair_policy: PairPolicy = PairPolicy.AUTO,
    claimed_bound: float | None = None,
) -> HolderCertificate:
    """Return the sup of |lambda(s) - lambda(t)| / |s - t|^alpha over grid pairs."""
    _alpha = validate_alpha(alpha)
    _grid = branch.grid
    _values = branch.values

    _constant, (j, k), _pairs = holder_supremum(
        lambda j, partners: np.abs(_grid[partners] - _grid[j]),
        lambda j, partners: np.abs(_values[partners] - _values[j]),
        _grid.size,
        _alpha,
        pair_policy,
    )
    return HolderCertificate(
        alpha=_alpha,
        constant=_constant,
        witness=(float(_grid[j]), float(_grid[k])),
        pairs_tested=_pairs,
        claimed_bound=claimed_bound,
    )


def verify_transfer_bound(
    family: ParamFamily,
    selection: Branch,
    alpha: float,
    samples: Sequence[EigenSample] | None = None,
    pair_policy: PairPolicy = PairPolicy.AUTO,
) -> TransferReport:
    """Check C_selection <= N * C_ordered on the selection's grid."""
    if samples is None:
        samples = sample_grid(family, selection.grid)
    _ordered = ordered_branches(samples)
    if not np.array_equal(_ordered[0].grid, selection.grid):
        raise DegenerateGridException("selection and samples use different grids")

    _c_ordered = max(
        holder_constant(branch, alpha, pair_policy).constant for branch in _ordered
    )
    _c_selection = holder_constant(selection, alpha, pair_policy).constant
    _n = len(_ordered)
    _holds = _c_selection <= _n * _c_ordered * (1 + BOUND_SLACK)

    _LOGGER.info(
        "Transfer bound: C_selection %.6g, N * C_ordered %.6g, holds %s",
        _c_selection,
        _n * _c_ordered,
        _holds,
    )
    return TransferReport(
        c_ordered=_c_ordered, c_selection=_c_selection, n=_n, holds=_holds
    )


def matrix_holder_constant(
    family: ParamFamily,
    grid: Sequence[float],
    alpha: float,
    pair_policy: PairPolicy = PairPolicy.AUTO,
) -> float:
    """Return the sup of ||A(s) - A(t)|| / |s - t|^alpha over grid pairs."""
    _alpha = validate_alpha(alpha)
    _grid = np.asarray(grid, dtype=float)
    _stack = np.array([family.eval(t).entries for t in _grid])

    _constant, _, _ = holder_supremum(
        lambda j, partners: np.abs(_grid[partners] - _grid[j]),
        lambda j, partners: batch_op_norm(_stack[partners] - _stack[j]),
        _grid.size,
        _alpha,
        pair_policy,
    )
    return _constant


def multi_param_holder_constant(
    points: np.ndarray,
    values: np.ndarray,
    alpha: float,
    pair_policy: PairPolicy = PairPolicy.ALL,
    claimed_bound: float | None = None,
) -> HolderCertificate:
    """
    Return the sup of |f(x) - f(y)| / ||x - y||^alpha over scattered samples.

    `points` is (n, d). `values` is (n,) or (n, k); vector values are compared
    in the max norm. The witness holds the pair of sample positions.
    """
    _alpha = validate_alpha(alpha)
    _points = np.asarray(points, dtype=float)
    _points = _points.reshape(_points.shape[0], -1)
    _values = np.asarray(values, dtype=float).reshape(_points.shape[0], -1)

    _constant, _witness, _pairs = holder_supremum(
        lambda j, partners: np.linalg.norm(_points[partners] - _points[j], axis=1),
        lambda j, partners: np.abs(_values[partners] - _values[j]).max(axis=1),
        _points.shape[0],
        _alpha,
        pair_policy,
    )
    return HolderCertificate(
        alpha=_alpha,
        constant=_constant,
        witness=_witness,
        pairs_tested=_pairs,
        claimed_bound=claimed_bound,
    )


def certify_along_curves(
    family: ParamFamily,
    curves: Sequence[SmoothCurve],
    alpha: float,
    index: int = 1,
    grid: Sequence[float] | None = None,
    pair_policy: PairPolicy = PairPolicy.AUTO,
) -> dict[str, Any]:
    """Certify the ordered eigenvalue mu_index of A(c(t)) along every curve."""
    _certificates = []
    for _curve in curves:
        _grid = (
            np.linspace(*_curve.interval, DEFAULT_CURVE_NODES) if grid is None else grid
        )
        _branches = ordered_branches(sample_grid(pullback(family, _curve), _grid))
        if not 1 <= index <= len(_branches):
            raise DimensionMismatchException(expected=len(_branches), actual=index)
        _certificates.append(holder_constant(_branches[index - 1], alpha, pair_policy))

    return {
        "index": index,
        "certificates": [certificate.to_dict() for certificate in _certificates],
        "worst": max((c.constant for c in _certificates), default=0.0),
    }


def chain_decomposition(
    selection: Branch,
    samples: Sequence[EigenSample],
    start: int,
    end: int,
    alpha: float | None = None,
    pair_policy: PairPolicy = PairPolicy.AUTO,
) -> ChainDecomposition:
    """
    Split the selection between nodes `start` < `end` into ordered-branch links.

    Every link [t_r, t_{r+1}] follows one ordered index i_r, so the increment
    |lambda(t_end) - lambda(t_start)| is at most the sum of the ordered
    increments plus the mismatch at the junctions. With `alpha`, the chained
    sum is also compared against C_ordered * links * |t_end - t_start|^alpha.
    """
    if not 0 <= start < end < len(selection):
        raise DegenerateGridException(f"need 0 <= start < end < {len(selection)}")

    _grid = selection.grid
    _indices = selection.indices
    _table = np.array([sample.values for sample in samples])

    _nodes = [start]
    _links = []
    _chained = 0.0
    _junction = 0.0
    for q in range(start + 1, end + 1):
        if _indices[q] == _indices[q - 1] and q != end:
            continue
        _index = int(_indices[q - 1])
        _chained += abs(_table[q, _index - 1] - _table[_nodes[-1], _index - 1])
        _junction += abs(_table[q, _index - 1] - selection.values[q])
        _nodes.append(q)
        _links.append(_index)

    _bound = None
    if alpha is not None:
        _c_ordered = max(
            holder_constant(branch, alpha, pair_policy).constant
            for branch in ordered_branches(samples)
        )
        _bound = _c_ordered * len(_links) * abs(_grid[end] - _grid[start]) ** alpha

    return ChainDecomposition(
        nodes=_nodes,
        indices=_links,
        increment=float(abs(selection.values[end] - selection.values[start])),
        chained_sum=float(_chained),
        junction_error=float(_junction),
        bound=None if _bound is None else float(_bound),
    )


def estimate_growth_constant(
    branch: Branch,
    interval: tuple[float, float] | None = None,
    check_lipschitz: bool = True,
) -> GrowthModel:
    """
    Return C = max |lambda'(t_j)| / (1 + |lambda(t_j)|) over interior nodes.

    Derivatives are central differences (np.gradient). With `check_lipschitz`
    the exponent-1 constant is compared between the grid and every other
    node; growth beyond LIPSCHITZ_GROWTH_LIMIT raises.
    """
    _grid, _values = branch.grid, branch.values
    if interval is not None:
        _mask = (_grid >= interval[0]) & (_grid <= interval[1])
        _grid, _values = _grid[_mask], _values[_mask]
    if _grid.size < 3:
        raise DegenerateGridException("at least three nodes are required")

    if check_lipschitz:
        _fine = _lipschitz_constant(_grid, _values)
        _coarse = _lipschitz_constant(_grid[::2], _values[::2])
        if _coarse > 0.0 and _fine / _coarse > LIPSCHITZ_GROWTH_LIMIT:
            raise NonLipschitzBranchException(_fine / _coarse)

    _derivative = np.gradient(_values, _grid)
    _c = float(np.max(np.abs(_derivative[1:-1]) / (1 + np.abs(_values[1:-1]))))
    _LOGGER.debug("Growth constant %.6g on %s nodes", _c, _grid.size)
    return GrowthModel(c=_c, a=_c, step=float(np.diff(_grid).max()))


def gronwall_check(branch: Branch, model: GrowthModel) -> GronwallReport:
    """Check |lambda(s) - lambda(t)| <= (1 + |lambda(t)|)(e^{a|s-t|} - 1) pairwise."""
    _grid, _values = branch.grid, branch.values
    if _grid.size < 2:
        raise DegenerateGridException("at least two nodes are required")

    _worst = -np.inf
    for j in range(_grid.size):
        _bound = (1 + abs(_values[j])) * np.expm1(model.a * np.abs(_grid - _grid[j]))
        _worst = max(_worst, float(np.max(np.abs(_values - _values[j]) - _bound)))

    _scale = float(np.abs(_values).max())
    _holds = _worst <= GRONWALL_SLACK * (1 + _scale)
    if not _holds:
        _LOGGER.warning("Gronwall bound violated by %.3e", _worst)
    return GronwallReport(max_violation=_worst, holds=_holds)


def _lipschitz_constant(grid: np.ndarray, values: np.ndarray) -> float:
    """Return the exponent-1 constant, attained on adjacent nodes."""
    return float(np.max(np.abs(np.diff(values)) / np.diff(grid)))
