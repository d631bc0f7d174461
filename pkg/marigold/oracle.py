"""
Brute-force ground truth for margins of victory.

A reversal is encoded as one signed delta per unordered pair (i, j), i < j:
w'[i][j] = w[i][j] + delta, bounded by -w[i][j] <= delta <= w[j][i]. Its size
is the sum of |delta|. Enumerating those vectors by increasing size and
stopping at the first one that flips membership gives the exact MoV.
"""

import logging
from typing import Callable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from .core import MovResult, ReversalFunction, WeightedTournament, pairs as all_pairs
from .solutions import get_solution
from .utils.config import get_config
from .utils.errors import BudgetExhaustedError, InvariantFailure, PreconditionError, ScaleGuardError

logger = logging.getLogger(__name__)

Bounds = List[Tuple[int, int]]
Member = Callable[[np.ndarray, int], bool]


def pair_bounds(tournament: WeightedTournament,
                pairs: Optional[Sequence[Tuple[int, int]]] = None) -> Bounds:
    """(lowest, highest) delta for each pair, in pair order."""
    w = tournament.w
    chosen = all_pairs(tournament.m) if pairs is None else pairs
    return [(-int(w[i, j]), int(w[j, i])) for i, j in chosen]


def size_class(bounds: Bounds, size: int) -> Iterator[Tuple[int, ...]]:
    """Every delta vector of exactly `size`, lexicographically ascending."""
    count = len(bounds)
    reach = [0] * (count + 1)
    for i in range(count - 1, -1, -1):
        lo, hi = bounds[i]
        reach[i] = reach[i + 1] + max(-lo, hi)
    if size > reach[0]:
        return
    delta = [0] * count

    def walk(i: int, remaining: int) -> Iterator[Tuple[int, ...]]:
        if i == count:
            if remaining == 0:
                yield tuple(delta)
            return
        lo, hi = bounds[i]
        for value in range(max(lo, -remaining), min(hi, remaining) + 1):
            left = remaining - abs(value)
            if left > reach[i + 1]:
                continue
            delta[i] = value
            yield from walk(i + 1, left)
        delta[i] = 0

    yield from walk(0, size)


def deltas_to_reversal(m: int, pairs: Sequence[Tuple[int, int]], deltas: Sequence[int]) -> ReversalFunction:
    return ReversalFunction.from_entries(m, {pair: d for pair, d in zip(pairs, deltas) if d})


def enumerate_reversals(tournament: WeightedTournament, k: int,
                        pairs: Optional[Sequence[Tuple[int, int]]] = None) -> Iterator[ReversalFunction]:
    """
    Every valid reversal of size <= k, exactly once, smallest sizes first.

    Args:
        tournament: reversals are bounded by its weights.
        k: size bound.
        pairs: restrict changes to these pairs (i < j); all pairs by default.
    """
    if k < 0:
        raise PreconditionError(f"size bound must be non-negative, got {k}")
    chosen = all_pairs(tournament.m) if pairs is None else list(pairs)
    bounds = pair_bounds(tournament, chosen)
    for size in range(k + 1):
        for deltas in size_class(bounds, size):
            yield deltas_to_reversal(tournament.m, chosen, deltas)


def minimum_flip(tournament: WeightedTournament, x: int, member: Member,
                 max_size: int, bounds: Optional[Bounds] = None,
                 budget: Optional[int] = None) -> Tuple[int, ReversalFunction]:
    """
    Smallest reversal that changes whether x is a member.

    Args:
        member: raw membership test on a weight matrix.
        max_size: sizes above this are never tried; reaching it is an error.
        bounds: per-pair delta bounds aligned with all_pairs(m); defaults to
            the full capacity of each pair.
        budget: caller's own cap, reported as BudgetExhaustedError.

    Returns:
        (size, witness)
    """
    m = tournament.m
    chosen = all_pairs(m)
    if bounds is None:
        bounds = pair_bounds(tournament, chosen)
    if not chosen:
        raise PreconditionError("a single alternative has no pairs to reverse")
    rows = np.array([i for i, _ in chosen])
    cols = np.array([j for _, j in chosen])
    base = tournament.w
    currently = member(base, x)
    limit = max_size if budget is None else min(budget, max_size)

    checked = 0
    for size in range(1, limit + 1):
        for deltas in size_class(bounds, size):
            checked += 1
            d = np.array(deltas, dtype=np.int64)
            w = base.copy()
            w[rows, cols] += d
            w[cols, rows] -= d
            if member(w, x) != currently:
                logger.debug(f"Flip for {tournament.label(x)} at size {size} after {checked} candidates")
                return size, deltas_to_reversal(m, chosen, deltas)
        logger.debug(f"Size {size}: no flip among {checked} candidates so far")
    if budget is not None and budget < max_size:
        raise BudgetExhaustedError(f"no flip for {tournament.label(x)} within budget {budget}")
    raise InvariantFailure(f"no flip for {tournament.label(x)} within the bound {max_size}")


def check_oracle_scale(tournament: WeightedTournament) -> None:
    guards = get_config()['guards']
    if tournament.m > guards['oracle_max_m'] or tournament.n > guards['oracle_max_n']:
        raise ScaleGuardError(
            f"oracle is limited to m <= {guards['oracle_max_m']}, n <= {guards['oracle_max_n']}; "
            f"got m={tournament.m}, n={tournament.n}")


def brute_force_mov(tournament: WeightedTournament, x: int, concept: str,
                    enforce_guard: bool = True) -> MovResult:
    """Exact signed MoV of x by exhaustive search, destructive or constructive as x's status demands."""
    tournament.check_alternative(x)
    solution = get_solution(concept)
    if enforce_guard:
        check_oracle_scale(tournament)
    m, n = tournament.m, tournament.n
    winning = solution.member(tournament.w, x)
    if m == 1:
        raise PreconditionError("the only alternative cannot be removed from the winning set")

    budget = n * m * (m - 1) // 2
    size, witness = minimum_flip(tournament, x, solution.member, budget)
    value = size if winning else -size
    logger.debug(f"Oracle {solution.key} MoV of {tournament.label(x)} = {value}")
    return MovResult(value, witness, "oracle", x, solution.key)
