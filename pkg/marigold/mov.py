"""
Solver routing: one entry point for any (alternative, solution) cell.

Polynomial solvers handle Borda in both directions and the destructive side
of Split Cycle and wUC. The constructive side of Split Cycle and wUC goes to
the exact search, CP-SAT, or the brute-force oracle.
"""

import logging
from typing import Dict, List, Optional

from .core import MovResult, WeightedTournament, apply_reversal
from .mov_borda import mov_borda_constructive, mov_borda_destructive
from .mov_splitcycle import mov_sc_constructive_exact, mov_sc_destructive
from .mov_wuc import mov_wuc_constructive_exact, mov_wuc_destructive
from .oracle import brute_force_mov
from .solutions import get_solution
from .utils.errors import InvariantFailure, PreconditionError

logger = logging.getLogger(__name__)

METHODS = ("auto", "search", "cp-sat", "oracle")

DESTRUCTIVE = {
    'BO': mov_borda_destructive,
    'SC': mov_sc_destructive,
    'wUC': mov_wuc_destructive,
}

EXACT_CONSTRUCTIVE = {
    'SC': mov_sc_constructive_exact,
    'wUC': mov_wuc_constructive_exact,
}


def margin_of_victory(tournament: WeightedTournament, x: int, solution: str,
                      method: str = "auto", budget: Optional[int] = None) -> MovResult:
    """
    Signed MoV of x under `solution`.

    Args:
        method: "auto" picks the polynomial solver when one exists and the exact
            search otherwise; "search" and "cp-sat" force an exact constructive
            method; "oracle" runs brute force for every cell.
        budget: size cap for the exact search.
    """
    if method not in METHODS:
        raise PreconditionError(f"unknown method {method!r}; choose from {', '.join(METHODS)}")
    key = get_solution(solution).key
    tournament.check_alternative(x)
    if method == "oracle":
        return brute_force_mov(tournament, x, key)

    if get_solution(key).member(tournament.w, x):
        return DESTRUCTIVE[key](tournament, x)
    if key == 'BO':
        return mov_borda_constructive(tournament, x)
    exact_method = "search" if method == "auto" else method
    return EXACT_CONSTRUCTIVE[key](tournament, x, budget=budget, method=exact_method)


def verify_witness(tournament: WeightedTournament, result: MovResult) -> bool:
    """
    Re-apply the witness and confirm it flips membership with a matching size.

    Raises:
        InvariantFailure: the witness is the wrong size or flips nothing.
    """
    solution = get_solution(result.solution)
    before = solution.member(tournament.w, result.alternative)
    after = solution.member(apply_reversal(tournament, result.witness).w, result.alternative)
    if result.witness.size != abs(result.value):
        raise InvariantFailure(f"witness size {result.witness.size} != |MoV| {abs(result.value)}")
    if before == after:
        raise InvariantFailure(
            f"witness leaves {tournament.label(result.alternative)} "
            f"{'in' if before else 'out of'} {solution.key}")
    if (result.value > 0) != before:
        raise InvariantFailure("MoV sign disagrees with current membership")
    return True


def mov_row(tournament: WeightedTournament, solution: str, method: str = "auto",
            alternatives: Optional[List[int]] = None) -> Dict[int, MovResult]:
    """MoV of every (or the listed) alternative, each witness verified."""
    row = {}
    for x in (tournament.alternatives if alternatives is None else alternatives):
        result = margin_of_victory(tournament, x, solution, method)
        verify_witness(tournament, result)
        row[x] = result
    return row
