"""Pair selection shared by every Hölder quotient supremum."""

from collections.abc import Callable, Iterator

import numpy as np

from .bin.pair_policy import PairPolicy
from .exceptions import DegenerateGridException

# "auto" switches from all pairs to dyadic pairs above this many nodes
DEFAULT_ALL_PAIRS_MAX_NODES = 2000


def resolve_policy(policy: PairPolicy, nodes: int) -> PairPolicy:
    """Resolve the auto policy for a grid with `nodes` nodes."""
    if policy is not PairPolicy.AUTO:
        return policy
    return PairPolicy.ALL if nodes <= DEFAULT_ALL_PAIRS_MAX_NODES else PairPolicy.DYADIC


def iter_partner_blocks(
    nodes: int, policy: PairPolicy
) -> Iterator[tuple[int, np.ndarray]]:
    """
    Yield (j, partners) with every partner k > j, in lexicographic order.

    "all" pairs j with every later node. "dyadic" pairs j with j + 2**e for
    every e with j + 2**e < nodes, which gives O(m log m) pairs.
    """
    _policy = resolve_policy(policy, nodes)
    for j in range(nodes - 1):
        if _policy is PairPolicy.ALL:
            _partners = np.arange(j + 1, nodes)
        else:
            _steps = 1 << np.arange(int(np.log2(nodes - 1 - j)) + 1)
            _partners = j + _steps
        yield j, _partners


def count_pairs(nodes: int, policy: PairPolicy) -> int:
    """Return the number of pairs a policy selects."""
    return sum(len(partners) for _, partners in iter_partner_blocks(nodes, policy))


def holder_supremum(
    separations: Callable[[int, np.ndarray], np.ndarray],
    increments: Callable[[int, np.ndarray], np.ndarray],
    nodes: int,
    alpha: float,
    policy: PairPolicy,
) -> tuple[float, tuple[int, int], int]:
    """
    Return (sup, (j, k), pairs) of increments / separations**alpha.

    The reduction visits pairs in lexicographic order and only replaces the
    witness on a strictly larger quotient.
    """
    if nodes < 2:
        raise DegenerateGridException("at least two nodes are required")

    _best = -np.inf
    _witness = (0, 1)
    _pairs = 0
    for j, _partners in iter_partner_blocks(nodes, policy):
        _separations = separations(j, _partners)
        if np.any(_separations <= 0.0):
            raise DegenerateGridException(f"duplicate node at position {j}")
        _quotients = increments(j, _partners) / _separations**alpha
        _k = int(np.argmax(_quotients))
        if _quotients[_k] > _best:
            _best = float(_quotients[_k])
            _witness = (j, int(_partners[_k]))
        _pairs += _partners.size
    return _best, _witness, _pairs
