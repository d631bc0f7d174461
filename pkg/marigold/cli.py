"""
Marigold command line.

    python -m marigold [global flags] <command> ...

Commands: generate, solve, mov, oracle, experiment, props, reduce, bounds.
Exit codes: 0 ok, 1 usage, 2 parse, 3 scale guard or time limit, 4 internal
invariant failure.
"""

import argparse
import logging
import os
import sys
import traceback
from typing import List, Optional, Sequence

import pandas as pd

from . import __version__
from .analysis import PROPERTIES, extremal_tournament, mov_bounds
from .core import MovResult, WeightedTournament
from .experiments import property_table, run_experiment, write_plot_data, write_records
from .generators import canonical_model, generate, tournament_rng
from .mov import METHODS, margin_of_victory, verify_witness
from .mov_splitcycle import dominating_set_reduction
from .mov_wuc import set_cover_reduction
from .oracle import brute_force_mov
from .solutions import (SOLUTIONS, borda_scores, dominated_edges, get_solution,
                        iter_covering_pairs, strongest_path_matrix)
from .utils.config import get_config, load_config, set_config
from .utils.errors import (EXIT_OK, EXIT_SCALE, EXIT_USAGE, MarigoldError,
                           PreconditionError, exit_code_for)
from .utils.log_config import configure_logging
from .utils.textio import (format_tournament, parse_graph, parse_set_system, read_text,
                           read_tournament, write_tournament)

logger = logging.getLogger(__name__)


class MarigoldArgumentParser(argparse.ArgumentParser):
    """argparse exits with 2 on bad usage; 2 is reserved for parse errors here."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _int_list(text: str) -> List[int]:
    try:
        return [int(part) for part in text.split(',') if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _str_list(text: str) -> List[str]:
    return [part.strip() for part in text.split(',') if part.strip()]


def _alternative(tournament: WeightedTournament, token: Optional[str]) -> List[int]:
    if token is None:
        return list(tournament.alternatives)
    return [tournament.index(token)]


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, 'w', encoding='utf-8', newline='') as f:
            f.write(text)
        logger.info(f"Wrote {out}")
    else:
        sys.stdout.write(text)


def _csv(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    return pd.DataFrame(rows, columns=list(header)).to_csv(index=False, lineterminator="\n")


def _seed(args, section: str) -> int:
    """--seed when given, else the section's configured seed."""
    if args.seed is not None:
        return args.seed
    return int(get_config()[section]['seed'])


# ======================================================================
# Commands
# ======================================================================

def cmd_generate(args) -> int:
    model = canonical_model(args.model)
    seed = _seed(args, 'generators')
    out_dir = args.out or "."
    os.makedirs(out_dir, exist_ok=True)
    stem = model.replace(':', '_').replace('=', '')
    for index in range(args.count):
        tournament = generate(model, args.m, args.n, tournament_rng(seed, model, args.m, args.n, index))
        path = os.path.join(out_dir, f"{stem}_m{args.m}_n{args.n}_{index:03d}.txt")
        write_tournament(path, tournament, comments=[
            f"model={model} m={args.m} n={args.n} seed={seed} index={index}"])
        print(path)
    logger.info(f"Generated {args.count} tournaments from {model}")
    return EXIT_OK


def cmd_solve(args) -> int:
    tournament = read_tournament(args.file)
    solution = get_solution(args.solution)
    winning = solution.winners(tournament)
    scores = borda_scores(tournament)

    if args.format == 'csv':
        rows = [(x, tournament.label(x), int(x in winning.members), int(scores[x]))
                for x in tournament.alternatives]
        _emit(_csv(["alternative", "label", "winner", "borda_score"], rows), args.out)
        return EXIT_OK

    lines = [f"{solution.key}: {' '.join(winning.labels(tournament))}"]
    if args.explain:
        lines.append("borda scores: " + " ".join(
            f"{tournament.label(x)}={int(scores[x])}" for x in tournament.alternatives))
        if solution.key == 'SC':
            edges = sorted(dominated_edges(tournament))
            lines.append("surviving edges: " + (" ".join(
                f"{tournament.label(x)}>{tournament.label(y)}" for x, y in edges) or "(none)"))
            paths = strongest_path_matrix(tournament).p
            for x in tournament.alternatives:
                lines.append(f"  strongest paths from {tournament.label(x)}: "
                             + " ".join(str(int(v)) for v in paths[x]))
        elif solution.key == 'wUC':
            covering = sorted(iter_covering_pairs(tournament))
            lines.append("covering: " + (" ".join(
                f"{tournament.label(y)} covers {tournament.label(x)}" for y, x in covering) or "(none)"))
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def _mov_lines(tournament: WeightedTournament, results: Sequence[MovResult], fmt: str) -> str:
    if fmt == 'csv':
        rows = [(r.alternative, tournament.label(r.alternative), r.value, r.solver,
                 r.witness.describe(tournament.labels), "verified") for r in results]
        return _csv(["alternative", "label", "mov", "solver", "witness", "check"], rows)
    width = max(len(tournament.label(r.alternative)) for r in results)
    lines = [f"{tournament.label(r.alternative):<{width}} {r.value:>4}  {r.witness.describe(tournament.labels)}"
             f"  [{r.solver}] verified" for r in results]
    return "\n".join(lines) + "\n"


def cmd_mov(args) -> int:
    tournament = read_tournament(args.file)
    method = "oracle" if args.oracle else args.method
    results = []
    for x in _alternative(tournament, args.alternative):
        result = margin_of_victory(tournament, x, args.solution, method=method, budget=args.budget)
        verify_witness(tournament, result)
        results.append(result)
    _emit(_mov_lines(tournament, results, args.format), args.out)
    return EXIT_OK


def cmd_oracle(args) -> int:
    tournament = read_tournament(args.file)
    x = tournament.index(args.alternative)
    result = brute_force_mov(tournament, x, args.solution)
    verify_witness(tournament, result)
    _emit(_mov_lines(tournament, [result], args.format), args.out)
    return EXIT_OK


def cmd_experiment(args) -> int:
    settings = get_config()['experiment']
    models = args.models or settings['models']
    ms = args.m or settings['m']
    ns = args.n or settings['n']
    count = args.count if args.count is not None else settings['count']
    solutions = args.solutions or settings['solutions']
    out = args.out or "experiment.csv"

    records, complete = run_experiment(models, ms, ns, count, solutions, _seed(args, 'experiment'),
                                       workers=args.workers, max_seconds=args.max_seconds,
                                       constructive_borda=args.constructive_borda)
    write_records(out, records, complete)
    root, _ = os.path.splitext(out)
    write_plot_data(f"{root}.plot.csv", records)
    if not complete:
        logger.error(f"Experiment stopped after {args.max_seconds}s; {out} holds partial results")
        return EXIT_SCALE
    return EXIT_OK


def cmd_props(args) -> int:
    settings = get_config()['props']
    budget_key = 'search_trials' if args.search else 'trials'
    trials = args.trials if args.trials is not None else settings[budget_key]
    properties = args.properties or list(PROPERTIES)
    solutions = args.solutions or list(SOLUTIONS)
    table = property_table(properties, solutions, trials, args.m, args.n, _seed(args, 'props'),
                           method=args.method, stop_at_first=args.search)
    _emit(table.to_csv(index=False, lineterminator="\n"), args.out)
    return EXIT_OK


def cmd_reduce(args) -> int:
    text = read_text(args.file)
    if args.kind == 'dominating-set':
        graph = parse_graph(text, source=args.file)
        tournament = dominating_set_reduction(graph)
        provenance = (f"dominating-set reduction of {args.file}: "
                      f"{graph.number_of_nodes()} vertices, {graph.number_of_edges()} edges; target x")
    else:
        r, sets = parse_set_system(text, source=args.file)
        tournament = set_cover_reduction(r, sets)
        provenance = f"set-cover reduction of {args.file}: universe {r}, {len(sets)} sets; target x"
    if args.out:
        write_tournament(args.out, tournament, comments=[provenance])
    else:
        sys.stdout.write(format_tournament(tournament, comments=[provenance]))
    return EXIT_OK


def cmd_bounds(args) -> int:
    key = get_solution(args.solution).key
    upper, lower = mov_bounds(key, args.n, args.m)
    rows = [("destructive", upper), ("constructive", lower)]
    computed = {}
    if args.verify:
        for direction, _ in rows:
            try:
                tournament, x = extremal_tournament(key, direction, args.n, args.m)
            except PreconditionError as e:
                logger.info(f"No {direction} construction for {key} at n={args.n}, m={args.m}: {e}")
                continue
            # constructions outgrow the exhaustive search
            method = "cp-sat" if direction == "constructive" and key != 'BO' else "auto"
            result = margin_of_victory(tournament, x, key, method=method)
            verify_witness(tournament, result)
            computed[direction] = result.value

    if args.format == 'csv':
        table = [(key, args.n, args.m, direction, bound, computed.get(direction, ""))
                 for direction, bound in rows]
        _emit(_csv(["solution", "n", "m", "direction", "bound", "computed"], table), args.out)
    else:
        lines = []
        for direction, bound in rows:
            line = f"{key} {direction:<12} bound {bound:>5}"
            if direction in computed:
                mark = "tight" if computed[direction] == bound else "NOT TIGHT"
                line += f"  computed {computed[direction]:>5}  {mark}"
            lines.append(line)
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


# ======================================================================
# Parser
# ======================================================================

def build_parser() -> argparse.ArgumentParser:
    parser = MarigoldArgumentParser(
        prog="marigold",
        description="Weighted tournament solutions and their margin of victory")
    parser.add_argument('--seed', type=int, default=None,
                        help="Base seed (default: the command's configured seed, 0)")
    parser.add_argument('--out', '-o', default=None, help="Output file or directory")
    parser.add_argument('--format', choices=('text', 'csv'), default='text', help="Printed output format")
    parser.add_argument('--verbose', '-v', action='store_true', help="Enable debug logging")
    parser.add_argument('--log-json', action='store_true', help="Log one JSON object per line")
    parser.add_argument('--log-file', default=None, help="Also append log records to this file")
    parser.add_argument('--config', default=None, help="JSON file overriding utils/defaults.json")
    parser.add_argument('--version', action='version', version=f"marigold {__version__}")
    sub = parser.add_subparsers(dest='command', metavar='command')
    sub.required = True

    p = sub.add_parser('generate', help="Draw seeded tournaments from a stochastic model")
    p.add_argument('model', help="e.g. uniform, mallows:phi=0.95, urn:alpha=10")
    p.add_argument('m', type=int)
    p.add_argument('n', type=int)
    p.add_argument('count', type=int, nargs='?', default=1)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser('solve', help="Print the winning set")
    p.add_argument('file')
    p.add_argument('solution', help="BO, SC or wUC")
    p.add_argument('--explain', action='store_true', help="Show scores and the solution's diagnostics")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser('mov', help="Margin of victory with verified witnesses")
    p.add_argument('file')
    p.add_argument('solution')
    p.add_argument('alternative', nargs='?', default=None, help="Label or index; all when omitted")
    p.add_argument('--method', choices=METHODS, default='auto')
    p.add_argument('--oracle', action='store_true', help="Same as --method oracle")
    p.add_argument('--budget', type=int, default=None, help="Size cap for the exact constructive search")
    p.set_defaults(func=cmd_mov)

    p = sub.add_parser('oracle', help="Brute-force MoV of one alternative")
    p.add_argument('file')
    p.add_argument('solution')
    p.add_argument('alternative')
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser('experiment', help="Run the randomized experiment grid")
    p.add_argument('--models', type=_str_list, default=None, help="Comma-separated model strings")
    p.add_argument('--m', type=_int_list, default=None, help="Comma-separated alternative counts")
    p.add_argument('--n', type=_int_list, default=None, help="Comma-separated voter counts")
    p.add_argument('--count', type=int, default=None, help="Tournaments per cell")
    p.add_argument('--solutions', type=_str_list, default=None)
    p.add_argument('--workers', type=int, default=1)
    p.add_argument('--max-seconds', type=float, default=None)
    p.add_argument('--constructive-borda', action='store_true',
                   help="Score every alternative under Borda, not only winners")
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser('props', help="Seeded property checks as a CSV table")
    p.add_argument('--properties', type=_str_list, default=None,
                   help=f"Any of {', '.join(PROPERTIES)}; degree-consistency:strict|equal|strong")
    p.add_argument('--solutions', type=_str_list, default=None)
    p.add_argument('--trials', type=int, default=None)
    p.add_argument('--m', type=int, default=4)
    p.add_argument('--n', type=int, default=4)
    p.add_argument('--search', action='store_true',
                   help="Stop each row at its first counterexample; trials default to props.search_trials")
    p.add_argument('--method', choices=METHODS, default='auto')
    p.set_defaults(func=cmd_props)

    p = sub.add_parser('reduce', help="Build a hardness-reduction tournament")
    p.add_argument('kind', choices=('dominating-set', 'set-cover'))
    p.add_argument('file')
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser('bounds', help="Worst-case MoV bounds")
    p.add_argument('solution')
    p.add_argument('n', type=int)
    p.add_argument('m', type=int)
    p.add_argument('--verify', action='store_true', help="Solve the tight constructions and compare")
    p.set_defaults(func=cmd_bounds)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.verbose, args.log_json, args.log_file)

    try:
        set_config(load_config(args.config))
        return args.func(args)
    except MarigoldError as e:
        logger.error(f"{args.command} failed: {e}")
        return exit_code_for(e)
    except (OSError, ValueError) as e:
        logger.error(f"{args.command} failed: {e}")
        logger.debug(traceback.format_exc())
        return EXIT_USAGE


if __name__ == '__main__':
    sys.exit(main())
