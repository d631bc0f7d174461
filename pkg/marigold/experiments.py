"""
Experiment harness and property suite.

An experiment cell is (model, m, n): `count` seeded tournaments, each scored
by every requested solution. For a tournament the harness records the winning
set size, how many winners share the largest MoV, how many distinct MoV values
the winners have, and that largest MoV. A record averages these over the cell.

Cells run in a process pool when workers > 1. Every replicate draws from
tournament_rng(seed, model, m, n, index), and records are written in grid
order, so the output does not depend on the worker count.
"""

import logging
import time
from concurrent.futures import FIRST_COMPLETED, ProcessPoolExecutor, wait
from dataclasses import asdict, dataclass, fields
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from .analysis import PROPERTIES, run_property
from .core import WeightedTournament
from .generators import canonical_model, generate, tournament_rng
from .mov import margin_of_victory
from .solutions import get_solution
from .utils.config import get_config, set_config
from .utils.errors import PreconditionError

logger = logging.getLogger(__name__)

CSV_VERSION = "marigold-experiment/1"
STATISTICS = ("avg_winners", "avg_argmax", "avg_distinct", "avg_max_mov")


@dataclass
class ExperimentRecord:
    model: str
    m: int
    n: int
    solution: str
    avg_winners: float
    avg_argmax: float
    avg_distinct: float
    avg_max_mov: float
    tournaments: int
    seed: int


def tournament_statistics(tournament: WeightedTournament, solution: str,
                          constructive_borda: bool = False) -> Tuple[int, int, int, int]:
    """
    (winning set size, count of argmax-MoV alternatives, distinct MoV values, max MoV).

    Only winners are scored unless constructive_borda is set and the solution is Borda.
    """
    key = get_solution(solution).key
    winners = list(get_solution(key).winners(tournament))
    scored = list(tournament.alternatives) if (constructive_borda and key == 'BO') else winners
    values = [margin_of_victory(tournament, x, key).value for x in scored]
    best = max(values)
    return len(winners), values.count(best), len(set(values)), best


def _run_cell(task: Dict[str, Any]) -> List[ExperimentRecord]:
    """One (model, m, n) cell; top-level so the process pool can pickle it."""
    if task.get('config') is not None:
        set_config(task['config'])
    model, m, n, count, seed = task['model'], task['m'], task['n'], task['count'], task['seed']
    solutions = task['solutions']
    totals = {key: np.zeros(4) for key in solutions}
    for index in range(count):
        tournament = generate(model, m, n, tournament_rng(seed, model, m, n, index))
        for key in solutions:
            totals[key] += tournament_statistics(tournament, key, task['constructive_borda'])
    records = []
    for key in solutions:
        averages = totals[key] / count
        records.append(ExperimentRecord(model, m, n, key, *[float(v) for v in averages], count, seed))
    return records


def experiment_grid(models: Sequence[str], ms: Sequence[int], ns: Sequence[int]) -> List[Tuple[str, int, int]]:
    return [(canonical_model(model), m, n) for model in models for m in ms for n in ns]


def run_experiment(models: Sequence[str], ms: Sequence[int], ns: Sequence[int], count: int,
                   solutions: Sequence[str], seed: int, workers: int = 1,
                   max_seconds: Optional[float] = None,
                   constructive_borda: bool = False) -> Tuple[List[ExperimentRecord], bool]:
    """
    Run the grid.

    Returns:
        (records in grid order, True if every cell finished before max_seconds)
    """
    keys = [get_solution(s).key for s in solutions]
    grid = experiment_grid(models, ms, ns)
    tasks = [{'model': model, 'm': m, 'n': n, 'count': count, 'seed': seed, 'solutions': keys,
              'constructive_borda': constructive_borda, 'config': get_config()}
             for model, m, n in grid]
    started = time.monotonic()
    results: Dict[int, List[ExperimentRecord]] = {}

    def expired() -> bool:
        return max_seconds is not None and time.monotonic() - started >= max_seconds

    if workers <= 1:
        for index, task in enumerate(tasks):
            if expired():
                break
            results[index] = _run_cell(task)
            logger.info(f"Cell {index + 1}/{len(tasks)} done: {task['model']} m={task['m']} n={task['n']}")
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            pending = {pool.submit(_run_cell, task): index for index, task in enumerate(tasks)}
            while pending:
                timeout = None if max_seconds is None else max(0.0, max_seconds - (time.monotonic() - started))
                done, _ = wait(pending, timeout=timeout, return_when=FIRST_COMPLETED)
                for future in done:
                    index = pending.pop(future)
                    results[index] = future.result()
                    logger.info(f"Cell {len(results)}/{len(tasks)} done: {tasks[index]['model']} "
                                f"m={tasks[index]['m']} n={tasks[index]['n']}")
                if expired() and pending:
                    for future in pending:
                        future.cancel()
                    break

    complete = len(results) == len(tasks)
    if not complete:
        logger.warning(f"Time limit reached: {len(results)} of {len(tasks)} cells finished")
    records = [record for index in sorted(results) for record in results[index]]
    return records, complete


def records_frame(records: Sequence[ExperimentRecord]) -> pd.DataFrame:
    columns = [f.name for f in fields(ExperimentRecord)]
    return pd.DataFrame([asdict(r) for r in records], columns=columns)


def plot_frame(records: Sequence[ExperimentRecord]) -> pd.DataFrame:
    """Long format: one row per (model, m, n, solution, statistic)."""
    frame = records_frame(records)
    tidy = frame.melt(id_vars=["model", "m", "n", "solution"], value_vars=list(STATISTICS),
                      var_name="statistic", value_name="value")
    return tidy.sort_values(["statistic", "n", "m", "model", "solution"], kind="stable").reset_index(drop=True)


def write_records(path: str, records: Sequence[ExperimentRecord], complete: bool = True) -> None:
    """Versioned CSV: one '#' header line, then the ExperimentRecord columns."""
    status = "complete" if complete else "partial"
    with open(path, 'w', encoding='utf-8', newline='') as f:
        f.write(f"# {CSV_VERSION} {status}\n")
        records_frame(records).to_csv(f, index=False, float_format="%.6f", lineterminator="\n")
    logger.info(f"Wrote {len(records)} records to {path}")


def write_plot_data(path: str, records: Sequence[ExperimentRecord]) -> None:
    with open(path, 'w', encoding='utf-8', newline='') as f:
        f.write(f"# {CSV_VERSION} plot-data\n")
        plot_frame(records).to_csv(f, index=False, float_format="%.6f", lineterminator="\n")
    logger.info(f"Wrote plot data to {path}")


def read_records(path: str) -> pd.DataFrame:
    return pd.read_csv(path, comment='#')


# ======================================================================
# Property suite
# ======================================================================

def property_table(properties: Sequence[str], solutions: Sequence[str], trials: int,
                   m: int, n: int, seed: int, method: str = "auto",
                   stop_at_first: bool = False) -> pd.DataFrame:
    """
    Verdict table: property x solution -> tournaments, checks, violations, first counterexample.

    With stop_at_first each row ends at its first violation, so `trials` is a search budget.
    """
    rows = []
    for prop in properties:
        if prop.partition(':')[0] not in PROPERTIES:
            raise PreconditionError(f"unknown property {prop!r}")
        for solution in solutions:
            report = run_property(prop, solution, trials, m, n, seed, method=method,
                                  stop_at_first=stop_at_first)
            first = report.first
            rows.append({
                "property": prop,
                "solution": report.solution,
                "trials": report.trials,
                "checks": report.checks,
                "violations": report.violations,
                "first_trial": first.trial if first else -1,
                "detail": first.verdict.detail if first else "",
            })
    return pd.DataFrame(rows)
