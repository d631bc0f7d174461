"""
Margin of victory for the weighted Uncovered Set.

A winner a stays uncovered as long as it reaches every rival d by a
decreasing path of length at most two. Those paths to a fixed d share no
edges, so breaking all of them is a sum of independent costs and the cheapest
rival wins.

Making a non-winner uncovered is NP-hard (Set Cover reduces to it) and is
solved exactly on small instances.
"""

import logging
import math
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Set, Tuple

from .core import MovResult, ReversalFunction, WeightedTournament
from .mov_splitcycle import check_exact_scale, constructive_bounds
from .oracle import minimum_flip
from .solutions import _wuc_member, wuc_winners
from .utils.errors import InvariantFailure, PreconditionError

logger = logging.getLogger(__name__)


def cover_cost(tournament: WeightedTournament, a: int, d: int) -> Tuple[int, Dict[Tuple[int, int], int]]:
    """
    Weight d needs to gain to w-cover a, and the reversal that does it.

    The direct edge is pushed to margin -1 or -2 (by parity); every two-step
    path a -> x -> d loses exactly its excess w[a][x] - w[d][x].
    """
    w, n = tournament.w, tournament.n
    entries: Dict[Tuple[int, int], int] = {}
    if w[a, d] >= w[d, a]:
        direct = max(0, n // 2 + 1 - int(w[d, a]))
        if direct:
            entries[(d, a)] = direct
    for x in tournament.alternatives:
        if x in (a, d):
            continue
        excess = int(w[a, x] - w[d, x])
        if excess > 0:
            entries[(d, x)] = excess
    return sum(entries.values()), entries


def decreasing_paths(tournament: WeightedTournament, a: int, d: int) -> List[List[Tuple[int, int]]]:
    """Edge lists of every decreasing path of length one or two from a to d."""
    w = tournament.w
    paths = []
    if w[a, d] >= w[d, a]:
        paths.append([(a, d)])
    for x in tournament.alternatives:
        if x not in (a, d) and w[a, x] > w[d, x]:
            paths.append([(a, x), (x, d)])
    return paths


def paths_are_disjoint(tournament: WeightedTournament, a: int, d: int) -> bool:
    """Short decreasing paths from a to d share no edge (pairs taken unordered)."""
    seen: Set[frozenset] = set()
    for path in decreasing_paths(tournament, a, d):
        for edge in path:
            key = frozenset(edge)
            if key in seen:
                return False
            seen.add(key)
    return True


def mov_wuc_destructive(tournament: WeightedTournament, a: int) -> MovResult:
    """MoV of a wUC winner: cheapest rival to make cover a. Ties go to the smaller index."""
    tournament.check_alternative(a)
    if a not in wuc_winners(tournament):
        raise PreconditionError(f"{tournament.label(a)} is not in the weighted Uncovered Set")
    if tournament.m == 1:
        raise PreconditionError("the only alternative cannot be removed from the winning set")

    best: Optional[Tuple[int, int, Dict[Tuple[int, int], int]]] = None
    for d in tournament.alternatives:
        if d == a:
            continue
        cost, entries = cover_cost(tournament, a, d)
        logger.debug(f"wUC destructive {tournament.label(a)}: rival {tournament.label(d)} costs {cost}")
        if best is None or cost < best[0]:
            best = (cost, d, entries)

    cost, d, entries = best
    if cost < 1:
        raise InvariantFailure(f"{tournament.label(d)} already covers {tournament.label(a)}")
    witness = ReversalFunction.from_entries(tournament.m, entries)
    return MovResult(cost, witness, "wuc-greedy", a, "wUC", {"rival": d})


def wuc_constructive_cap(n: int, m: int) -> int:
    """ceil(log2(m) * ceil((n + 1) / 2)), the size no constructive MoV exceeds."""
    return math.ceil(math.log2(m) * ((n + 2) // 2))


def mov_wuc_constructive_exact(tournament: WeightedTournament, d: int, budget: Optional[int] = None,
                               method: str = "search", enforce_guard: bool = True) -> MovResult:
    """
    Exact MoV of a covered alternative.

    method="search" deepens over reversal sizes (small instances only);
    method="cp-sat" hands the instance to the CP-SAT model.
    """
    tournament.check_alternative(d)
    if d in wuc_winners(tournament):
        raise PreconditionError(f"{tournament.label(d)} is already in the weighted Uncovered Set")

    if method == "cp-sat":
        from .exact_cpsat import cpsat_wuc_constructive
        return cpsat_wuc_constructive(tournament, d)
    if method != "search":
        raise PreconditionError(f"unknown exact method {method!r}")

    if enforce_guard:
        check_exact_scale(tournament)
    cap = wuc_constructive_cap(tournament.n, tournament.m)
    size, witness = minimum_flip(tournament, d, _wuc_member, cap,
                                 bounds=constructive_bounds(tournament, d), budget=budget)
    return MovResult(-size, witness, "wuc-search", d, "wUC")


# ======================================================================
# Set Cover reduction
# ======================================================================

def set_cover_reduction(r: int, sets: Sequence[Set[int]]) -> WeightedTournament:
    """
    Tournament on x, one alternative per set and one per element, n = 2r.

    w(x, A) = r + 1; w(b, A) = r + 1 when b is in A, else 2r; w(b, x) = 2r;
    pairs inside the sets and inside the elements are tied at r.
    """
    if r < 2:
        raise PreconditionError(f"universe size must be at least 2, got {r}")
    if not sets:
        raise PreconditionError("the set family is empty")
    for subset in sets:
        if not subset:
            raise PreconditionError("every set must be non-empty")
        if min(subset) < 0 or max(subset) >= r:
            raise PreconditionError(f"set elements must lie in 0..{r - 1}")

    s = len(sets)
    x = 0
    set_node = [1 + i for i in range(s)]
    element = [1 + s + e for e in range(r)]
    weights: Dict[Tuple[int, int], int] = {}
    for i, subset in enumerate(sets):
        weights[(x, set_node[i])] = r + 1
        for e in range(r):
            weights[(element[e], set_node[i])] = r + 1 if e in subset else 2 * r
    for e in range(r):
        weights[(element[e], x)] = 2 * r
    labels = ['x'] + [f"S{i}" for i in range(s)] + [f"u{e}" for e in range(r)]
    return WeightedTournament.from_pairs(1 + s + r, 2 * r, weights, labels=labels, default=r)


def minimum_set_cover_size(r: int, sets: Sequence[Set[int]]) -> Optional[int]:
    """Exhaustive optimum, None when the family does not cover 0..r-1."""
    universe = set(range(r))
    for k in range(1, len(sets) + 1):
        for chosen in combinations(sets, k):
            if set().union(*chosen) == universe:
                return k
    return None
