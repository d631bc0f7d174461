"""
Marigold: weighted tournament solutions and their margin of victory.

Borda (BO), Split Cycle (SC) and the weighted Uncovered Set (wUC), with exact
solvers for how much pairwise weight must be reversed to remove a winner or
install a non-winner.
"""

__version__ = "0.3.0"

from .core import MovResult, ReversalFunction, WeightedTournament, apply_reversal
from .mov import margin_of_victory, verify_witness
from .solutions import borda_winners, split_cycle_winners, winners, wuc_winners

__all__ = [
    "MovResult",
    "ReversalFunction",
    "WeightedTournament",
    "apply_reversal",
    "borda_winners",
    "margin_of_victory",
    "split_cycle_winners",
    "verify_witness",
    "winners",
    "wuc_winners",
]
