"""Sample one-parameter families and follow eigenvalue branches through crossings."""

from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
import logging
import math
import os
from typing import Any, NamedTuple

import numpy as np

from .bin.strategy import Strategy
from .const import SPECTRA_THREADS_ENV
from .exceptions import (
    AmbiguousCrossingException,
    ContourHitsSpectrumException,
    DegenerateGridException,
    DimensionMismatchException,
)
from .families.base import ParamFamily
from .hermitian import eig_ordered
from .projector import Contour, contour_projector, project_block

# switch_tol = DEFAULT_RELATIVE_TOLERANCE * (1 + spectral scale)
DEFAULT_RELATIVE_TOLERANCE = 1e-6

# Window sampling for projector tracking
DEFAULT_WINDOW_NODES = 65

_LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True)
class EigenSample:
    """Ascending eigenvalues of A(t) at one grid node."""

    t: float
    values: np.ndarray
    gap_floor: float


class SwitchPoint(NamedTuple):
    """A node where a selection moves to another ordered index."""

    node: int
    old_index: int
    new_index: int


@dataclass(frozen=True)
class CrossingEvent:
    """A bracket where ordered branches (i, i+1) come within crossing_tol."""

    t_lo: float
    t_hi: float
    pair: tuple[int, int]
    min_gap: float

    def to_dict(self) -> dict[str, Any]:
        """Return the event as a JSON-ready dict."""
        return {
            "t_lo": self.t_lo,
            "t_hi": self.t_hi,
            "pair": list(self.pair),
            "min_gap": self.min_gap,
        }


class Branch:
    """A continuous eigenvalue selection over a sample grid."""

    def __init__(
        self,
        grid: Sequence[float],
        values: Sequence[float],
        indices: Sequence[int],
        switch_points: Sequence[SwitchPoint] | None = None,
    ) -> None:
        """Initialize the Branch class."""
        self._grid = np.asarray(grid, dtype=float)
        self._values = np.asarray(values, dtype=float)
        self._indices = np.asarray(indices, dtype=int)
        self._switch_points = list(switch_points or [])

        if not self._grid.shape == self._values.shape == self._indices.shape:
            raise DimensionMismatchException(
                expected=self._grid.size, actual=self._values.size
            )

    @property
    def grid(self) -> np.ndarray:
        """Get the parameter grid t_0 < ... < t_m."""
        return self._grid

    @property
    def values(self) -> np.ndarray:
        """Get the branch value at each node."""
        return self._values

    @property
    def indices(self) -> np.ndarray:
        """Get the 1-based ordered index occupied at each node."""
        return self._indices

    @property
    def switch_points(self) -> list[SwitchPoint]:
        """Get the recorded index switches."""
        return self._switch_points

    @property
    def switched_nodes(self) -> set[int]:
        """Get the nodes at which a switch was recorded."""
        return {point.node for point in self._switch_points}

    def max_jump(self) -> float:
        """Return the largest change between consecutive nodes."""
        if self._values.size < 2:
            return 0.0
        return float(np.abs(np.diff(self._values)).max())

    def rows(self) -> list[tuple[float, float, int, bool]]:
        """Return (t, value, index, switched) for every node."""
        _switched = self.switched_nodes
        return [
            (float(t), float(value), int(index), node in _switched)
            for node, (t, value, index) in enumerate(
                zip(self._grid, self._values, self._indices, strict=True)
            )
        ]

    def __len__(self) -> int:
        """Return the number of nodes."""
        return self._grid.size

    def __repr__(self) -> str:
        """Return a string representation of the branch."""
        return (
            f"Branch(nodes={self._grid.size}, "
            f"start_index={int(self._indices[0]) if self._indices.size else None}, "
            f"switches={len(self._switch_points)})"
        )


@dataclass
class TrackResult:
    """Samples, ordered branches, selections, and crossings of one run."""

    samples: list[EigenSample]
    ordered: list[Branch]
    crossings: list[CrossingEvent]
    selections: list[Branch] = field(default_factory=list)


def resolve_threads(threads: int | None = None) -> int:
    """Return the worker count, capped by SPECTRA_THREADS."""
    if threads is None:
        threads = int(os.environ.get(SPECTRA_THREADS_ENV, os.cpu_count() or 1))
    return max(int(threads), 1)


def sample_grid(
    family: ParamFamily, grid: Sequence[float], threads: int | None = None
) -> list[EigenSample]:
    """Return one EigenSample per grid node, in grid order."""
    if family.param_dim != 1:
        raise DimensionMismatchException(expected=1, actual=family.param_dim)
    _grid = np.asarray(grid, dtype=float)
    if _grid.ndim != 1 or _grid.size == 0:
        raise DegenerateGridException("grid must be a nonempty vector")
    if np.any(np.diff(_grid) <= 0):
        raise DegenerateGridException("grid must be strictly ascending")

    def _sample(t: float) -> EigenSample:
        _values = eig_ordered(family.eval(t)).values
        _gap = float(np.diff(_values).min()) if _values.size > 1 else math.inf
        return EigenSample(t=float(t), values=_values, gap_floor=_gap)

    _threads = resolve_threads(threads)
    if _threads == 1:
        return [_sample(t) for t in _grid]
    with ThreadPoolExecutor(max_workers=_threads) as _executor:
        return list(_executor.map(_sample, _grid))


def ordered_branches(samples: Sequence[EigenSample]) -> list[Branch]:
    """Return the N ascending branches mu_1 <= ... <= mu_N."""
    _dim = _check_samples(samples)
    _grid = [sample.t for sample in samples]
    _table = np.array([sample.values for sample in samples])
    return [
        Branch(grid=_grid, values=_table[:, i], indices=[i + 1] * len(samples))
        for i in range(_dim)
    ]


def default_tolerance(samples: Sequence[EigenSample]) -> float:
    """Return 1e-6 * (1 + the largest |eigenvalue| over the samples)."""
    _scale = max(float(np.abs(sample.values).max()) for sample in samples)
    return DEFAULT_RELATIVE_TOLERANCE * (1 + _scale)


def detect_crossings(
    samples: Sequence[EigenSample], crossing_tol: float | None = None
) -> list[CrossingEvent]:
    """
    Report every run of nodes where mu_{i+1} - mu_i comes within crossing_tol.

    A node counts when its sampled gap is within tolerance, or when it is a
    local minimum of the gap and the secant of either neighbouring interval,
    extended across the other one, reaches the tolerance. The second test
    catches crossings that fall between two nodes. The bracket reaches one
    node past each end of the run.
    """
    _dim = _check_samples(samples)
    _tol = default_tolerance(samples) if crossing_tol is None else crossing_tol
    _grid = np.array([sample.t for sample in samples])
    _table = np.array([sample.values for sample in samples])
    _last = len(samples) - 1

    _events = []
    for i in range(_dim - 1):
        _gaps = predicted_gaps(_grid, _table[:, i + 1] - _table[:, i])
        _below = _gaps <= _tol
        j = 0
        while j <= _last:
            if not _below[j]:
                j += 1
                continue
            _start = j
            while j + 1 <= _last and _below[j + 1]:
                j += 1
            _events.append(
                CrossingEvent(
                    t_lo=float(_grid[max(_start - 1, 0)]),
                    t_hi=float(_grid[min(j + 1, _last)]),
                    pair=(i + 1, i + 2),
                    min_gap=float(_gaps[_start : j + 1].min()),
                )
            )
            j += 1

    _events.sort(key=lambda event: (event.t_lo, event.pair))
    for _event in _events:
        _LOGGER.info(
            "Crossing of pair %s in [%s, %s], min gap %.3e",
            _event.pair,
            _event.t_lo,
            _event.t_hi,
            _event.min_gap,
        )
    return _events


def predicted_gaps(grid: np.ndarray, gaps: np.ndarray) -> np.ndarray:
    """
    Return the smallest gap the one-sided secants predict around each node.

    Only interior local minima of the sampled gap change: the descending
    secant of each side is extended across the interval on the other side
    and the result is clipped at zero.
    """
    _predicted = np.array(gaps, dtype=float)
    if _predicted.size < 3:
        return _predicted

    _steps = np.diff(grid)
    _slopes = np.diff(_predicted) / _steps
    _inner = _predicted[1:-1]
    _minimum = (_inner <= _predicted[:-2]) & (_inner <= _predicted[2:])
    _reach = np.minimum(
        _inner + _slopes[:-1] * _steps[1:], _inner - _slopes[1:] * _steps[:-1]
    )
    _predicted[1:-1] = np.where(_minimum, np.clip(_reach, 0.0, None), _inner)
    return _predicted


def refine_samples(
    family: ParamFamily,
    samples: Sequence[EigenSample],
    events: Sequence[CrossingEvent],
    threads: int | None = None,
) -> list[EigenSample]:
    """Add the midpoints of every grid interval inside a flagged bracket."""
    _grid = np.array([sample.t for sample in samples])
    _midpoints = set()
    for _event in events:
        _inside = np.flatnonzero((_grid >= _event.t_lo) & (_grid <= _event.t_hi))
        for j in _inside[:-1]:
            _midpoints.add(float((_grid[j] + _grid[j + 1]) / 2))

    _new = sorted(_midpoints - set(_grid.tolist()))
    if not _new:
        return list(samples)

    _LOGGER.debug("Refining %s crossing brackets with %s nodes", len(events), len(_new))
    _merged = list(samples) + sample_grid(family, _new, threads=threads)
    return sorted(_merged, key=lambda sample: sample.t)


def continuous_selection(
    samples: Sequence[EigenSample],
    start_index: int,
    strategy: Strategy = Strategy.SECANT,
    switch_tol: float | None = None,
) -> Branch:
    """
    Follow one eigenvalue from ordered index `start_index` (1-based) at t_0.

    At every node the secant extrapolation from the two previous nodes is
    compared against the ordered values. After a node where the selection
    came within switch_tol of an adjacent ordered value, the closest member
    of that cluster is taken and the switch is recorded at the
    near-degenerate node itself. Otherwise an adjacent ordered value that is
    strictly closer to the extrapolation than the current one means a
    crossing was passed between the two nodes, and the switch is recorded at
    the later node. "ordered" never switches; "strict" raises instead of
    choosing between candidates that are both within switch_tol of the
    extrapolation.
    """
    _dim = _check_samples(samples)
    if not 1 <= start_index <= _dim:
        raise DimensionMismatchException(expected=_dim, actual=start_index)
    _tol = default_tolerance(samples) if switch_tol is None else switch_tol

    _grid = [sample.t for sample in samples]
    _current = start_index - 1
    _values = [float(samples[0].values[_current])]
    _indices = [_current]
    _switches: list[SwitchPoint] = []

    for j in range(1, len(samples)):
        if strategy is not Strategy.ORDERED:
            _previous = samples[j - 1].values
            _cluster = np.flatnonzero(np.abs(_previous - _values[j - 1]) <= _tol)
            _target = _extrapolate(_grid, _values, j)
            if _cluster.size > 1:
                _distances = np.abs(samples[j].values[_cluster] - _target)
                _candidates = _cluster[_distances == _distances.min()]
                if strategy is Strategy.STRICT and np.sum(_distances <= _tol) > 1:
                    raise AmbiguousCrossingException(
                        _grid[j - 1], _grid[j], [int(k) + 1 for k in _cluster]
                    )
                _choice = _current if _current in _candidates else int(_candidates[0])
                if _choice != _current:
                    _record_switch(samples, _values, _indices, _switches, j, _choice)
                    _current = _choice
            elif j >= 2:
                _choice = _passed_neighbor(samples[j].values, _current, _target)
                if _choice != _current:
                    _near = np.abs(samples[j].values[[_current, _choice]] - _target)
                    if strategy is Strategy.STRICT and np.all(_near <= _tol):
                        raise AmbiguousCrossingException(
                            _grid[j - 1], _grid[j], sorted([_current + 1, _choice + 1])
                        )
                    _switches.append(SwitchPoint(j, _current + 1, _choice + 1))
                    _current = _choice

        _values.append(float(samples[j].values[_current]))
        _indices.append(_current)

    return Branch(
        grid=_grid,
        values=_values,
        indices=[index + 1 for index in _indices],
        switch_points=_switches,
    )


def selection_via_projector(
    family: ParamFamily,
    s: float,
    window: tuple[float, float],
    group: Sequence[int] | None = None,
    contour: Contour | None = None,
    nodes: int = DEFAULT_WINDOW_NODES,
) -> list[Branch]:
    """
    Track an enclosed eigenvalue group through the projected block P A P.

    The contour is fixed at the base point s (default: around `group`, itself
    defaulting to the cluster of mu_1(s)). At every window node the rank of
    P(t) must equal the rank at s; an eigenvalue meeting or crossing the
    contour raises ContourHitsSpectrumException with the offending node.
    """
    _base = eig_ordered(family.eval(s)).values
    _tol = DEFAULT_RELATIVE_TOLERANCE * (1 + float(np.abs(_base).max()))

    if contour is None:
        _seed = list(group) if group else [1]
        _seed_values = _base[[index - 1 for index in _seed]]
        _members = np.flatnonzero(
            np.min(np.abs(_base[:, np.newaxis] - _seed_values[np.newaxis, :]), axis=1)
            <= _tol
        )
        contour = Contour.around_group(_base, [int(k) + 1 for k in _members])

    _enclosed = np.flatnonzero(contour.encloses(_base))
    _rank = _enclosed.size
    _first_index = int(_enclosed[0]) + 1 if _rank else 1
    _LOGGER.info("Tracking %s enclosed eigenvalues with %s", _rank, contour)

    _grid = np.linspace(window[0], window[1], nodes)
    _table = []
    for _t in _grid:
        _matrix = family.eval(_t)
        try:
            _projector = contour_projector(_matrix, contour)
        except ContourHitsSpectrumException as e:
            raise ContourHitsSpectrumException(
                e.center, e.radius, e.eigenvalue, t=float(_t)
            ) from e
        if _projector.rank != _rank:
            _values = eig_ordered(_matrix).values
            raise ContourHitsSpectrumException(
                contour.center,
                contour.radius,
                float(_values[int(np.argmin(contour.distance_to(_values)))]),
                t=float(_t),
            )
        _table.append(eig_ordered(project_block(_matrix, _projector)).values)

    _table = np.array(_table).reshape(_grid.size, _rank)
    return [
        Branch(grid=_grid, values=_table[:, k], indices=[_first_index + k] * _grid.size)
        for k in range(_rank)
    ]


def track_family(
    family: ParamFamily,
    grid: Sequence[float],
    strategy: Strategy = Strategy.SECANT,
    start_indices: Sequence[int] = (),
    crossing_tol: float | None = None,
    switch_tol: float | None = None,
    refine: bool = True,
    threads: int | None = None,
) -> TrackResult:
    """Sample, refine around crossings once, and build branches and selections."""
    _samples = sample_grid(family, grid, threads=threads)
    _crossings = detect_crossings(_samples, crossing_tol)
    if refine and _crossings:
        _samples = refine_samples(family, _samples, _crossings, threads=threads)
        _crossings = detect_crossings(_samples, crossing_tol)

    _selections = [
        continuous_selection(_samples, index, strategy, switch_tol)
        for index in start_indices
    ]
    return TrackResult(
        samples=_samples,
        ordered=ordered_branches(_samples),
        crossings=_crossings,
        selections=_selections,
    )


def _check_samples(samples: Sequence[EigenSample]) -> int:
    """Return the common dimension N of a nonempty sample list."""
    if not samples:
        raise DegenerateGridException("no samples")
    _dim = samples[0].values.size
    for _sample in samples:
        if _sample.values.size != _dim:
            raise DimensionMismatchException(expected=_dim, actual=_sample.values.size)
    return _dim


def _extrapolate(grid: Sequence[float], values: Sequence[float], j: int) -> float:
    """Extrapolate the selection linearly from nodes j-2, j-1 to node j."""
    if j < 2:
        return values[j - 1]
    _slope = (values[j - 1] - values[j - 2]) / (grid[j - 1] - grid[j - 2])
    return values[j - 1] + _slope * (grid[j] - grid[j - 1])


def _record_switch(
    samples: Sequence[EigenSample],
    values: list[float],
    indices: list[int],
    switches: list[SwitchPoint],
    j: int,
    choice: int,
):
    """Move the switch onto the near-degenerate node j-1 (node j at the start)."""
    _node = j - 1
    if _node == 0:
        switches.append(SwitchPoint(j, indices[_node] + 1, choice + 1))
        return

    if switches and switches[-1].node == _node:
        switches.pop()
    _before = indices[_node - 1]
    indices[_node] = choice
    values[_node] = float(samples[_node].values[choice])
    if choice != _before:
        switches.append(SwitchPoint(_node, _before + 1, choice + 1))


def _passed_neighbor(values: np.ndarray, current: int, target: float) -> int:
    """Return the ordered index at or next to `current` closest to `target`."""
    _choices = [current]
    _choices += [k for k in (current - 1, current + 1) if 0 <= k < values.size]
    _distances = np.abs(values[_choices] - target)
    return _choices[int(np.argmin(_distances))]
