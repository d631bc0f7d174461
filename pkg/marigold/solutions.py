"""
Weighted tournament solutions: Borda (BO), Split Cycle (SC) and the weighted
Uncovered Set (wUC).

Each solution has a tournament-level API (borda_winners, split_cycle_winners,
wuc_winners) and a raw membership test on a weight matrix. The raw tests are
what the oracle and the exact searches call in their inner loops, so they take
a numpy matrix and skip validation.

Split Cycle and wUC also carry a second characterization each (cycle
enumeration, decreasing paths) that exists to cross-check the first.
"""

import logging
from dataclasses import dataclass
from typing import Callable, Dict, FrozenSet, Iterable, Iterator, List, Set, Tuple

import networkx as nx
import numpy as np

from .core import WeightedTournament, margin_graph
from .utils.config import get_config
from .utils.errors import PreconditionError, ScaleGuardError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class WinningSet:
    """Non-empty set of winning alternatives."""

    members: FrozenSet[int]

    def __post_init__(self) -> None:
        object.__setattr__(self, 'members', frozenset(int(x) for x in self.members))
        if not self.members:
            raise PreconditionError("a winning set is never empty")

    def __contains__(self, x: object) -> bool:
        return x in self.members

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self.members))

    def __len__(self) -> int:
        return len(self.members)

    def labels(self, tournament: WeightedTournament) -> List[str]:
        return [tournament.labels[x] for x in self]


@dataclass(frozen=True)
class StrongestPathMatrix:
    """p[x][y] = strength of the strongest x -> y path in the margin graph (0 if none)."""

    p: np.ndarray


# ======================================================================
# Raw matrix kernels
# ======================================================================

def _strongest_paths(margins: np.ndarray) -> np.ndarray:
    """Floyd closure over the (max, min) semiring, k in index order."""
    p = np.maximum(margins, 0)
    for k in range(p.shape[0]):
        p = np.maximum(p, np.minimum(p[:, k:k + 1], p[k:k + 1, :]))
    np.fill_diagonal(p, 0)
    return p


def _borda_member(w: np.ndarray, x: int) -> bool:
    scores = w.sum(axis=1)
    return bool(scores[x] == scores.max())


def _sc_member(w: np.ndarray, x: int) -> bool:
    margins = w - w.T
    p = _strongest_paths(margins)
    return bool(np.all(margins[:, x] <= p[x, :]))


def _covered_by(w: np.ndarray, x: int) -> np.ndarray:
    """Boolean mask over y: does y w-cover x."""
    at_least = w >= w[x][None, :]
    at_least[:, x] = True
    np.fill_diagonal(at_least, True)
    return (w[:, x] > w[x, :]) & at_least.all(axis=1)


def _wuc_member(w: np.ndarray, x: int) -> bool:
    return not bool(_covered_by(w, x).any())


# ======================================================================
# Borda
# ======================================================================

def borda_scores(tournament: WeightedTournament) -> np.ndarray:
    """Weighted outdegree of every alternative."""
    return tournament.w.sum(axis=1)


def borda_winners(tournament: WeightedTournament) -> WinningSet:
    scores = borda_scores(tournament)
    return WinningSet(frozenset(np.flatnonzero(scores == scores.max()).tolist()))


# ======================================================================
# Split Cycle
# ======================================================================

def strongest_path_matrix(tournament: WeightedTournament) -> StrongestPathMatrix:
    p = _strongest_paths(tournament.margins())
    p.setflags(write=False)
    return StrongestPathMatrix(p)


def split_cycle_winners(tournament: WeightedTournament) -> WinningSet:
    """
    x wins iff no y has margin(y, x) > p[x][y]: every edge into x is at most
    as strong as the strongest path back from x, so some cycle splits it.
    """
    margins = tournament.margins()
    p = _strongest_paths(margins)
    winners = np.flatnonzero(np.all(margins <= p.T, axis=0))
    return WinningSet(frozenset(winners.tolist()))


def dominated_edges(tournament: WeightedTournament) -> Set[Tuple[int, int]]:
    """
    Margin-graph edges that survive Split Cycle deletion.

    (y, x) survives iff margin(y, x) > p[x][y].
    """
    margins = tournament.margins()
    p = _strongest_paths(margins)
    keep = (margins > 0) & (margins > p.T)
    return {(int(y), int(x)) for y, x in np.argwhere(keep)}


def splitting_edges_by_cycle_enumeration(tournament: WeightedTournament) -> Set[Tuple[int, int]]:
    """Union of the splitting edges of every simple cycle in the margin graph."""
    guard = get_config()['guards']['cycle_enumeration_max_m']
    if tournament.m > guard:
        raise ScaleGuardError(f"cycle enumeration is limited to m <= {guard}, got m={tournament.m}")
    mg = margin_graph(tournament)
    graph = mg.to_networkx()
    deleted: Set[Tuple[int, int]] = set()
    cycle_count = 0
    for cycle in nx.simple_cycles(graph):
        cycle_count += 1
        edges = list(zip(cycle, cycle[1:] + cycle[:1]))
        weakest = min(mg.edges[e] for e in edges)
        deleted.update(e for e in edges if mg.edges[e] == weakest)
    logger.debug(f"Enumerated {cycle_count} cycles, {len(deleted)} splitting edges")
    return deleted


def split_cycle_winners_by_cycle_enumeration(tournament: WeightedTournament) -> WinningSet:
    deleted = splitting_edges_by_cycle_enumeration(tournament)
    surviving = set(margin_graph(tournament).edges) - deleted
    dominated = {x for _, x in surviving}
    return WinningSet(frozenset(set(tournament.alternatives) - dominated))


# ======================================================================
# Weighted Uncovered Set
# ======================================================================

def w_covers(tournament: WeightedTournament, y: int, x: int) -> bool:
    """True iff y w-covers x."""
    tournament.check_alternative(x)
    tournament.check_alternative(y)
    if x == y:
        raise PreconditionError("covering compares two distinct alternatives")
    return bool(_covered_by(tournament.w, x)[y])


def wuc_winners(tournament: WeightedTournament) -> WinningSet:
    w = tournament.w
    return WinningSet(frozenset(x for x in tournament.alternatives if _wuc_member(w, x)))


def decreasing_path_exists(tournament: WeightedTournament, x: int, y: int, k: int) -> bool:
    """
    Is there a decreasing path of length at most k from x to y?

    Length 1 needs margin(x, y) >= 0. A longer path x = v1, ..., vk, y needs
    every weight along v1 .. vk to exceed w[y][vk]. Only k <= 2 matters for
    wUC; larger k is answered with a bottleneck sweep over paths avoiding y.
    """
    tournament.check_alternative(x)
    tournament.check_alternative(y)
    if x == y:
        raise PreconditionError("decreasing paths join two distinct alternatives")
    if k < 1:
        raise PreconditionError(f"path length bound must be at least 1, got {k}")
    w = tournament.w
    if w[x, y] >= w[y, x]:
        return True

    # reach[v]: best bottleneck over paths x -> v with at most `steps` edges
    unreached = -1
    reach = np.full(tournament.m, unreached, dtype=np.int64)
    reach[x] = tournament.n + 1
    for _ in range(k - 1):
        extended = np.minimum(reach[:, None], w).max(axis=0)
        reach = np.maximum(reach, extended)
        reach[y] = unreached
        reach[x] = tournament.n + 1
        endpoints = reach > w[y]
        endpoints[x] = endpoints[y] = False
        if endpoints.any():
            return True
    return False


# ======================================================================
# Registry
# ======================================================================

@dataclass(frozen=True)
class Solution:
    key: str
    title: str
    winners: Callable[[WeightedTournament], WinningSet]
    member: Callable[[np.ndarray, int], bool]


SOLUTIONS: Dict[str, Solution] = {
    'BO': Solution('BO', 'Borda', borda_winners, _borda_member),
    'SC': Solution('SC', 'Split Cycle', split_cycle_winners, _sc_member),
    'wUC': Solution('wUC', 'weighted Uncovered Set', wuc_winners, _wuc_member),
}

_ALIASES = {
    'bo': 'BO', 'borda': 'BO',
    'sc': 'SC', 'split-cycle': 'SC', 'splitcycle': 'SC',
    'wuc': 'wUC', 'uncovered': 'wUC', 'weighted-uncovered-set': 'wUC',
}


def get_solution(name: str) -> Solution:
    """Look up a solution by key or alias, case-insensitively."""
    key = _ALIASES.get(name.strip().lower())
    if key is None:
        raise PreconditionError(f"unknown solution {name!r}; choose from {', '.join(SOLUTIONS)}")
    return SOLUTIONS[key]


def winners(tournament: WeightedTournament, solution: str) -> WinningSet:
    return get_solution(solution).winners(tournament)


def is_winner(tournament: WeightedTournament, x: int, solution: str) -> bool:
    tournament.check_alternative(x)
    return get_solution(solution).member(tournament.w, x)


def iter_covering_pairs(tournament: WeightedTournament) -> Iterable[Tuple[int, int]]:
    """(y, x) for every pair where y w-covers x."""
    for x in tournament.alternatives:
        for y in np.flatnonzero(_covered_by(tournament.w, x)):
            yield int(y), x
