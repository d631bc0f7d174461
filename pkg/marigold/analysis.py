"""
Structural axioms and MoV bounds as executable checks.

Each check_* function looks at one tournament (and one choice of
alternatives) and returns a Verdict. find_counterexample and run_property
drive them over seeded random tournaments; the props command prints the
resulting table.
"""

import logging
import math
from dataclasses import dataclass, field
from itertools import permutations
from typing import Any, Callable, Dict, Iterator, List, Optional, Tuple

import numpy as np

from .core import (ReversalFunction, WeightedTournament, apply_reversal,
                   is_condorcet_loser, is_condorcet_winner)
from .generators import generate, tournament_rng
from .mov import margin_of_victory
from .solutions import borda_scores, get_solution, iter_covering_pairs
from .utils.errors import ParityError, PreconditionError

logger = logging.getLogger(__name__)


@dataclass
class Verdict:
    """Outcome of one property check on one instance."""

    property: str
    solution: str
    holds: bool
    vacuous: bool = False
    detail: str = ""
    witness: Dict[str, Any] = field(default_factory=dict)
    scale: str = ""


def _scale(tournament: WeightedTournament) -> str:
    return f"m={tournament.m} n={tournament.n}"


def _reinforce(tournament: WeightedTournament, entries: Dict[Tuple[int, int], int]) -> WeightedTournament:
    return apply_reversal(tournament, ReversalFunction.from_entries(tournament.m, entries))


# ======================================================================
# Monotonicity family
# ======================================================================

def check_monotonicity(solution: str, tournament: WeightedTournament, a: int, b: int) -> Verdict:
    """a keeps winning after one unit of weight moves to a from b."""
    key = get_solution(solution).key
    if a == b or tournament.w[a, b] >= tournament.n:
        raise PreconditionError("monotonicity needs a != b and w[a][b] < n")
    member = get_solution(key).member
    if not member(tournament.w, a):
        return Verdict("monotonicity", key, True, vacuous=True, scale=_scale(tournament))
    after = _reinforce(tournament, {(a, b): 1})
    holds = member(after.w, a)
    return Verdict("monotonicity", key, holds, witness={"a": a, "b": b}, scale=_scale(tournament),
                   detail="" if holds else f"{tournament.label(a)} drops out after gaining over {tournament.label(b)}")


def check_mov_monotonicity(solution: str, tournament: WeightedTournament, a: int, b: int,
                           method: str = "auto") -> Verdict:
    """MoV(a) never decreases when a gains one unit over b."""
    key = get_solution(solution).key
    if a == b or tournament.w[a, b] >= tournament.n:
        raise PreconditionError("MoV monotonicity needs a != b and w[a][b] < n")
    before = margin_of_victory(tournament, a, key, method).value
    after = margin_of_victory(_reinforce(tournament, {(a, b): 1}), a, key, method).value
    holds = after >= before
    return Verdict("mov-monotonicity", key, holds, witness={"a": a, "b": b, "before": before, "after": after},
                   scale=_scale(tournament), detail=f"MoV {before} -> {after}")


def check_transfer_monotonicity(solution: str, tournament: WeightedTournament, a: int, b: int, c: int) -> Verdict:
    """a keeps winning when one unit over c moves from b to a."""
    key = get_solution(solution).key
    w, n = tournament.w, tournament.n
    if len({a, b, c}) != 3 or w[b, c] <= 0 or w[a, c] >= n:
        raise PreconditionError("transfer needs distinct a, b, c with w[b][c] > 0 and w[a][c] < n")
    member = get_solution(key).member
    if not member(w, a):
        return Verdict("transfer-monotonicity", key, True, vacuous=True, scale=_scale(tournament))
    after = _reinforce(tournament, {(c, b): 1, (a, c): 1})
    holds = member(after.w, a)
    labels = tournament.labels
    return Verdict("transfer-monotonicity", key, holds, witness={"a": a, "b": b, "c": c}, scale=_scale(tournament),
                   detail="" if holds else f"{labels[a]} loses after taking weight over {labels[c]} from {labels[b]}")


# ======================================================================
# Consistency with covering and with Borda scores
# ======================================================================

def mov_profile(tournament: WeightedTournament, solution: str, method: str = "auto",
                alternatives: Optional[List[int]] = None) -> Dict[int, int]:
    chosen = tournament.alternatives if alternatives is None else alternatives
    return {x: margin_of_victory(tournament, x, solution, method).value for x in chosen}


def check_cover_consistency(solution: str, tournament: WeightedTournament, method: str = "auto") -> Verdict:
    """x w-covers y implies MoV(x) >= MoV(y), and y winning implies x winning."""
    key = get_solution(solution).key
    member = get_solution(key).member
    covering = list(iter_covering_pairs(tournament))
    if not covering:
        return Verdict("cover-consistency", key, True, vacuous=True, scale=_scale(tournament))

    for x, y in covering:
        if member(tournament.w, y) and not member(tournament.w, x):
            return Verdict("cover-consistency", key, False, witness={"x": x, "y": y}, scale=_scale(tournament),
                           detail=f"{tournament.label(y)} wins but its coverer {tournament.label(x)} does not")

    involved = sorted({v for pair in covering for v in pair})
    values = mov_profile(tournament, key, method, involved)
    for x, y in covering:
        if values[x] < values[y]:
            return Verdict("cover-consistency", key, False, scale=_scale(tournament),
                           witness={"x": x, "y": y, "mov_x": values[x], "mov_y": values[y]},
                           detail=f"{tournament.label(x)} covers {tournament.label(y)} "
                                  f"but MoV {values[x]} < {values[y]}")
    return Verdict("cover-consistency", key, True, scale=_scale(tournament))


DEGREE_NOTIONS: Dict[str, Tuple[Callable[[int, int], bool], Callable[[int, int], bool]]] = {
    'strict': (lambda s, t: s > t, lambda u, v: u > v),
    'equal': (lambda s, t: s == t, lambda u, v: u == v),
    'strong': (lambda s, t: s >= t, lambda u, v: u >= v),
}


def check_degree_consistency(solution: str, tournament: WeightedTournament,
                             method: str = "auto") -> Dict[str, Verdict]:
    """
    Borda-score order against MoV order, for the strict, equal and strong
    notions. Each verdict carries the first violating ordered pair.
    """
    key = get_solution(solution).key
    scores = borda_scores(tournament)
    values = mov_profile(tournament, key, method)
    verdicts = {}
    for notion, (premise, conclusion) in DEGREE_NOTIONS.items():
        verdict = Verdict(f"degree-consistency:{notion}", key, True, scale=_scale(tournament))
        for x, y in permutations(tournament.alternatives, 2):
            if premise(int(scores[x]), int(scores[y])) and not conclusion(values[x], values[y]):
                verdict.holds = False
                verdict.witness = {"x": x, "y": y, "score_x": int(scores[x]), "score_y": int(scores[y]),
                                   "mov_x": values[x], "mov_y": values[y]}
                verdict.detail = (f"scores {int(scores[x])} vs {int(scores[y])} "
                                  f"but MoV {values[x]} vs {values[y]}")
                break
        verdicts[notion] = verdict
    return verdicts


# ======================================================================
# Bounds
# ======================================================================

def mov_bounds(solution: str, n: int, m: int) -> Tuple[int, int]:
    """(largest destructive MoV, smallest constructive MoV) over all n-weighted tournaments on m alternatives."""
    key = get_solution(solution).key
    if m < 2:
        raise PreconditionError(f"bounds need at least two alternatives, got m={m}")
    if n < 1:
        raise PreconditionError(f"n must be positive, got {n}")
    if m == 2:
        flip = n // 2 + 1
        return flip, -flip
    if key == 'BO':
        return n * (m - 2) // 2 + 1, -n * (m - 2)
    if key == 'SC':
        return n + math.ceil((m - 2) / 2), -math.ceil(n / 2) * (m - 1)
    half = (n + 2) // 2
    return half + n * (m - 2) // 2, -math.ceil(math.log2(m) * half)


def _condorcet_winner_over_ties(n: int, m: int) -> WeightedTournament:
    if n % 2:
        raise ParityError("this construction needs even n")
    w = np.full((m, m), n // 2, dtype=np.int64)
    w[0, :] = n
    w[:, 0] = 0
    np.fill_diagonal(w, 0)
    return WeightedTournament(n=n, w=w)


def _condorcet_winner_and_loser(n: int, m: int) -> WeightedTournament:
    w = np.zeros((m, m), dtype=np.int64)
    rows, cols = np.triu_indices(m, k=1)
    w[rows, cols] = (n + 1) // 2
    w[cols, rows] = n - (n + 1) // 2
    w[0, 1:] = n
    w[1:, 0] = 0
    w[:m - 1, m - 1] = n
    w[m - 1, :m - 1] = 0
    np.fill_diagonal(w, 0)
    return WeightedTournament(n=n, w=w)


def _condorcet_winner_over_circulant(n: int, m: int) -> WeightedTournament:
    if m % 2:
        raise ParityError("this construction needs even m")
    w = np.zeros((m, m), dtype=np.int64)
    w[0, 1:] = n
    ring = m - 1
    reach = (m - 2) // 2
    for i in range(ring):
        for step in range(1, reach + 1):
            w[1 + i, 1 + (i + step) % ring] = n
    return WeightedTournament(n=n, w=w)


def _condorcet_loser_over_ties(n: int, m: int) -> WeightedTournament:
    if n % 2:
        raise ParityError("this construction needs even n")
    w = np.full((m, m), n // 2, dtype=np.int64)
    w[m - 1, :] = 0
    w[:, m - 1] = n
    np.fill_diagonal(w, 0)
    return WeightedTournament(n=n, w=w)


EXTREMAL: Dict[Tuple[str, str], Tuple[Callable[[int, int], WeightedTournament], Callable[[int], int]]] = {
    ('BO', 'destructive'): (_condorcet_winner_over_ties, lambda m: 0),
    ('BO', 'constructive'): (_condorcet_winner_and_loser, lambda m: m - 1),
    ('SC', 'destructive'): (_condorcet_winner_over_circulant, lambda m: 0),
    ('SC', 'constructive'): (_condorcet_loser_over_ties, lambda m: m - 1),
    ('wUC', 'destructive'): (_condorcet_winner_over_ties, lambda m: 0),
}


def extremal_tournament(solution: str, direction: str, n: int, m: int) -> Tuple[WeightedTournament, int]:
    """
    Tournament and alternative whose MoV meets the bound exactly.

    Raises:
        ParityError: the construction needs a different parity of n or m.
        PreconditionError: no construction exists for this cell (constructive wUC).
    """
    key = get_solution(solution).key
    if direction not in ('destructive', 'constructive'):
        raise PreconditionError(f"direction must be destructive or constructive, got {direction!r}")
    if m < 3:
        raise PreconditionError(f"extremal constructions need m > 2, got m={m}")
    entry = EXTREMAL.get((key, direction))
    if entry is None:
        raise PreconditionError(f"no tight construction is known for {direction} {key}")
    build, designated = entry
    tournament = build(n, m)
    x = designated(m)
    if direction == 'destructive' and not is_condorcet_winner(tournament, x):
        raise PreconditionError("construction lost its Condorcet winner")
    if direction == 'constructive' and not is_condorcet_loser(tournament, x):
        raise PreconditionError("construction lost its Condorcet loser")
    return tournament, x


# ======================================================================
# Seeded search
# ======================================================================

PROPERTIES = ('monotonicity', 'mov-monotonicity', 'transfer-monotonicity',
              'cover-consistency', 'degree-consistency')


def _instance_checks(prop: str, solution: str, tournament: WeightedTournament,
                     method: str) -> Iterator[Verdict]:
    w, n = tournament.w, tournament.n
    if prop == 'monotonicity':
        for a, b in permutations(tournament.alternatives, 2):
            if w[a, b] < n:
                yield check_monotonicity(solution, tournament, a, b)
    elif prop == 'mov-monotonicity':
        for a, b in permutations(tournament.alternatives, 2):
            if w[a, b] < n:
                yield check_mov_monotonicity(solution, tournament, a, b, method)
    elif prop == 'transfer-monotonicity':
        for a, b, c in permutations(tournament.alternatives, 3):
            if w[b, c] > 0 and w[a, c] < n:
                yield check_transfer_monotonicity(solution, tournament, a, b, c)
    elif prop == 'cover-consistency':
        yield check_cover_consistency(solution, tournament, method)
    elif prop.startswith('degree-consistency'):
        _, _, notion = prop.partition(':')
        verdicts = check_degree_consistency(solution, tournament, method)
        for name, verdict in verdicts.items():
            if not notion or name == notion:
                yield verdict
    else:
        raise PreconditionError(f"unknown property {prop!r}; choose from {', '.join(PROPERTIES)}")


@dataclass
class Counterexample:
    trial: int
    tournament: WeightedTournament
    verdict: Verdict


@dataclass
class PropertyReport:
    property: str
    solution: str
    trials: int
    checks: int = 0
    violations: int = 0
    first: Optional[Counterexample] = None
    m: int = 0
    n: int = 0
    seed: int = 0


def run_property(prop: str, solution: str, trials: int, m: int, n: int, seed: int,
                 model: str = "uniform", method: str = "auto", stop_at_first: bool = False) -> PropertyReport:
    """
    Check `prop` on `trials` seeded random tournaments, every applicable
    argument tuple of each.
    """
    key = get_solution(solution).key
    report = PropertyReport(prop, key, 0, m=m, n=n, seed=seed)
    for trial in range(trials):
        tournament = generate(model, m, n, tournament_rng(seed, prop, key, m, n, trial))
        report.trials += 1
        for verdict in _instance_checks(prop, key, tournament, method):
            report.checks += 1
            if not verdict.holds:
                report.violations += 1
                if report.first is None:
                    report.first = Counterexample(trial, tournament, verdict)
                    logger.debug(f"{prop} {key}: violation at trial {trial}: {verdict.detail}")
        if stop_at_first and report.first is not None:
            break
    logger.info(f"{prop} {key}: {report.violations} violations in {report.checks} checks "
                f"over {report.trials} tournaments (m={m}, n={n})")
    return report


def find_counterexample(prop: str, solution: str, trials: int, m: int, n: int, seed: int,
                        model: str = "uniform", method: str = "auto") -> Optional[Counterexample]:
    """First violation of `prop` among seeded random tournaments, or None."""
    return run_property(prop, solution, trials, m, n, seed, model, method, stop_at_first=True).first
