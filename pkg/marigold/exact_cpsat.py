"""
CP-SAT models for the two NP-hard cases: constructive Split Cycle and
constructive wUC.

Both share one integer delta per pair (i < j) with w'[i][j] = w[i][j] + delta
and minimise the sum of |delta|. What differs is the certificate that the
target d ends up winning:

- Split Cycle: for every rival y, either y no longer beats d, or a unit flow
  from d to y uses only edges at least as strong as margin'(y, d).
- wUC: for every rival y, some decreasing path of length one or two from d
  to y exists after the change.
"""

import logging
from typing import Dict, Tuple

from ortools.sat.python import cp_model

from .core import MovResult, ReversalFunction, WeightedTournament, apply_reversal, pairs
from .solutions import split_cycle_winners, wuc_winners
from .utils.config import get_config
from .utils.errors import BudgetExhaustedError, InvariantFailure

logger = logging.getLogger(__name__)


class _ReversalModel:
    """Pair deltas plus weight and margin expressions over them."""

    def __init__(self, tournament: WeightedTournament, d: int):
        self.tournament = tournament
        self.d = d
        self.model = cp_model.CpModel()
        w = tournament.w
        self.delta: Dict[Tuple[int, int], cp_model.IntVar] = {}
        magnitudes = []
        for i, j in pairs(tournament.m):
            lo, hi = -int(w[i, j]), int(w[j, i])
            # pairs at d only ever move weight towards d
            if i == d:
                lo = 0
            elif j == d:
                hi = 0
            var = self.model.NewIntVar(lo, hi, f"delta_{i}_{j}")
            size = self.model.NewIntVar(0, max(-lo, hi), f"abs_{i}_{j}")
            self.model.AddAbsEquality(size, var)
            self.delta[(i, j)] = var
            magnitudes.append(size)
        self.model.Minimize(sum(magnitudes))

    def weight(self, x: int, y: int):
        w = self.tournament.w
        if x < y:
            return int(w[x, y]) + self.delta[(x, y)]
        return int(w[x, y]) - self.delta[(y, x)]

    def margin(self, x: int, y: int):
        m = int(self.tournament.w[x, y] - self.tournament.w[y, x])
        if x < y:
            return m + 2 * self.delta[(x, y)]
        return m - 2 * self.delta[(y, x)]

    def solve(self, solver_name: str, solution: str) -> MovResult:
        settings = get_config()['cpsat']
        solver = cp_model.CpSolver()
        solver.parameters.max_time_in_seconds = float(settings['time_limit_seconds'])
        solver.parameters.num_workers = int(settings['workers'])
        solver.parameters.random_seed = int(settings['random_seed'])
        status = solver.Solve(self.model)
        if status != cp_model.OPTIMAL:
            raise BudgetExhaustedError(
                f"CP-SAT stopped with status {solver.StatusName(status)} "
                f"after {solver.WallTime():.1f}s (limit {settings['time_limit_seconds']}s)")

        entries = {pair: int(solver.Value(var)) for pair, var in self.delta.items()
                   if solver.Value(var)}
        witness = ReversalFunction.from_entries(self.tournament.m, entries)
        size = int(round(solver.ObjectiveValue()))
        if witness.size != size:
            raise InvariantFailure(f"CP-SAT objective {size} but witness size {witness.size}")
        logger.debug(f"CP-SAT {solution} for {self.tournament.label(self.d)}: size {size} "
                     f"in {solver.WallTime():.2f}s")
        return MovResult(-size, witness, solver_name, self.d, solution)


def cpsat_sc_constructive(tournament: WeightedTournament, d: int) -> MovResult:
    """Exact constructive Split Cycle MoV of d."""
    rm = _ReversalModel(tournament, d)
    model, m = rm.model, tournament.m
    for y in range(m):
        if y == d:
            continue
        beats = model.NewBoolVar(f"path_{y}")
        model.Add(rm.margin(y, d) <= 0).OnlyEnforceIf(beats.Not())

        arcs = {}
        for i in range(m):
            for j in range(m):
                if i == j or j == d or i == y:
                    continue
                used = model.NewBoolVar(f"arc_{y}_{i}_{j}")
                model.Add(rm.margin(i, j) >= rm.margin(y, d)).OnlyEnforceIf(used)
                model.Add(rm.margin(i, j) >= 1).OnlyEnforceIf(used)
                arcs[(i, j)] = used
        for v in range(m):
            out_flow = sum(var for (i, _), var in arcs.items() if i == v)
            in_flow = sum(var for (_, j), var in arcs.items() if j == v)
            if isinstance(out_flow, int) and isinstance(in_flow, int):
                continue
            if v == d:
                model.Add(out_flow - in_flow == beats)
            elif v == y:
                model.Add(in_flow - out_flow == beats)
            else:
                model.Add(out_flow == in_flow)

    result = rm.solve("sc-cpsat", "SC")
    if d not in split_cycle_winners(apply_reversal(tournament, result.witness)):
        raise InvariantFailure("CP-SAT Split Cycle witness does not install the alternative")
    return result


def cpsat_wuc_constructive(tournament: WeightedTournament, d: int) -> MovResult:
    """Exact constructive wUC MoV of d."""
    rm = _ReversalModel(tournament, d)
    model, m = rm.model, tournament.m
    for y in range(m):
        if y == d:
            continue
        options = []
        direct = model.NewBoolVar(f"direct_{y}")
        model.Add(rm.margin(d, y) >= 0).OnlyEnforceIf(direct)
        options.append(direct)
        for z in range(m):
            if z in (d, y):
                continue
            via = model.NewBoolVar(f"via_{y}_{z}")
            model.Add(rm.weight(d, z) >= rm.weight(y, z) + 1).OnlyEnforceIf(via)
            options.append(via)
        model.AddBoolOr(options)

    result = rm.solve("wuc-cpsat", "wUC")
    if d not in wuc_winners(apply_reversal(tournament, result.witness)):
        raise InvariantFailure("CP-SAT wUC witness does not install the alternative")
    return result
