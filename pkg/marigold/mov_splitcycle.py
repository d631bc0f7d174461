"""
Margin of victory for Split Cycle.

Destructive MoV is polynomial: for a rival d and a target margin l, a must lose
the edge (d, a) at margin l while every a -> d path is cut below l. Each (d, l)
is a min-cut problem on CutNetwork; the cheapest pair wins.

All quantities are weight units: moving q units of weight changes a margin
by 2q.

Constructive MoV is NP-hard (Dominating Set reduces to it), so it is solved by
exact search or CP-SAT on small instances only.
"""

import logging
import math
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, List, Optional, Tuple

import networkx as nx

from .core import MovResult, ReversalFunction, WeightedTournament, margin_graph, pairs
from .flow import FlowNetwork, max_flow
from .oracle import minimum_flip, pair_bounds
from .solutions import _sc_member, split_cycle_winners
from .utils.config import get_config
from .utils.errors import InvariantFailure, PreconditionError, ScaleGuardError

logger = logging.getLogger(__name__)


@dataclass
class CutNetwork:
    """Min-cut instance for one (d, l): nodes are alternatives, source a, sink d."""

    network: FlowNetwork
    source: int
    sink: int
    l: int
    base_cost: int
    edge_pairs: List[Tuple[int, int]]


def target_margins(n: int) -> range:
    """Positive margins with n's parity, smallest first."""
    return range(2 if n % 2 == 0 else 1, n + 1, 2)


def build_sc_cut_network(tournament: WeightedTournament, a: int, d: int, l: int) -> CutNetwork:
    tournament.check_alternative(a)
    tournament.check_alternative(d)
    if a == d:
        raise PreconditionError("source and sink alternatives must differ")
    n = tournament.n
    if (l - n) % 2:
        raise PreconditionError(f"l={l} must have the parity of n={n}")
    if l not in target_margins(n):
        raise PreconditionError(f"l={l} outside {target_margins(n).start}..{n}")

    margins = tournament.margins()
    net = FlowNetwork()
    for x in tournament.alternatives:
        net.add_node(0, tournament.label(x))
    edge_pairs = []
    for x in tournament.alternatives:
        for y in tournament.alternatives:
            if x == y or {x, y} == {a, d} or margins[x, y] < l:
                continue
            net.add_edge(x, y, int(margins[x, y] - (l - 2)) // 2, 0)
            edge_pairs.append((x, y))
    base = max(0, int(l - margins[d, a]) // 2)
    return CutNetwork(net, a, d, l, base, edge_pairs)


def mov_sc_destructive(tournament: WeightedTournament, a: int) -> MovResult:
    """
    MoV of a Split Cycle winner.

    Args:
        tournament: the weighted tournament.
        a: a current Split Cycle winner.

    Returns:
        MovResult with the cheapest (d, l) in details; ties go to smaller l, then smaller d.
    """
    tournament.check_alternative(a)
    if a not in split_cycle_winners(tournament):
        raise PreconditionError(f"{tournament.label(a)} is not a Split Cycle winner")
    if tournament.m == 1:
        raise PreconditionError("the only alternative cannot be removed from the winning set")

    best: Optional[Tuple[int, int, int, Dict[Tuple[int, int], int]]] = None
    for l in target_margins(tournament.n):
        for d in tournament.alternatives:
            if d == a:
                continue
            cut_net = build_sc_cut_network(tournament, a, d, l)
            if best is not None and cut_net.base_cost >= best[0]:
                continue
            flow = max_flow(cut_net.network, a, d)
            cost = cut_net.base_cost + flow.value
            if best is None or cost < best[0]:
                entries: Dict[Tuple[int, int], int] = {}
                if cut_net.base_cost:
                    entries[(d, a)] = cut_net.base_cost
                for index in flow.cut:
                    edge = cut_net.network.edges[index]
                    if edge.capacity:
                        entries[(edge.head, edge.tail)] = edge.capacity
                best = (cost, l, d, entries)
                logger.debug(f"SC destructive {tournament.label(a)}: d={tournament.label(d)} l={l} cost {cost}")

    if best is None:
        raise InvariantFailure(f"no rival can dominate {tournament.label(a)}")
    cost, l, d, entries = best
    witness = ReversalFunction.from_entries(tournament.m, entries)
    if witness.size != cost:
        raise InvariantFailure(f"cut cost {cost} but witness size {witness.size}")
    return MovResult(cost, witness, "sc-mincut", a, "SC", {"rival": d, "l": l})


# ======================================================================
# Constructive (exact, exponential)
# ======================================================================

def constructive_bounds(tournament: WeightedTournament, d: int):
    """Full pair bounds, except that pairs touching d may only move weight to d."""
    bounds = []
    for (i, j), (lo, hi) in zip(pairs(tournament.m), pair_bounds(tournament)):
        if i == d:
            lo = 0
        elif j == d:
            hi = 0
        bounds.append((lo, hi))
    return bounds


def check_exact_scale(tournament: WeightedTournament) -> None:
    guards = get_config()['guards']
    if tournament.m > guards['exact_max_m'] or tournament.n > guards['exact_max_n']:
        raise ScaleGuardError(
            f"constructive MoV is NP-hard; exact search is limited to m <= {guards['exact_max_m']}, "
            f"n <= {guards['exact_max_n']} (got m={tournament.m}, n={tournament.n}); try method='cp-sat'")


def sc_constructive_cap(n: int, m: int) -> int:
    return math.ceil(n / 2) * (m - 1)


def mov_sc_constructive_exact(tournament: WeightedTournament, d: int, budget: Optional[int] = None,
                              method: str = "search", enforce_guard: bool = True) -> MovResult:
    """
    Exact MoV of a Split Cycle non-winner.

    method="search" deepens over reversal sizes (small instances only);
    method="cp-sat" hands the instance to the CP-SAT model.
    """
    tournament.check_alternative(d)
    if d in split_cycle_winners(tournament):
        raise PreconditionError(f"{tournament.label(d)} is already a Split Cycle winner")

    if method == "cp-sat":
        from .exact_cpsat import cpsat_sc_constructive
        return cpsat_sc_constructive(tournament, d)
    if method != "search":
        raise PreconditionError(f"unknown exact method {method!r}")

    if enforce_guard:
        check_exact_scale(tournament)
    cap = sc_constructive_cap(tournament.n, tournament.m)
    size, witness = minimum_flip(tournament, d, _sc_member, cap,
                                 bounds=constructive_bounds(tournament, d), budget=budget)
    return MovResult(-size, witness, "sc-search", d, "SC")


# ======================================================================
# Dominating Set reduction
# ======================================================================

def dominating_set_reduction(graph: nx.Graph) -> WeightedTournament:
    """
    Tournament on x, a_0..a_{r-1}, b_0..b_{r-1} with n = 2r whose constructive
    Split Cycle MoV for x equals the minimum dominating set size of `graph`.

    Vertices of `graph` must be 0..r-1 and r >= 2.
    """
    r = graph.number_of_nodes()
    if sorted(graph.nodes) != list(range(r)):
        raise PreconditionError("graph vertices must be 0..r-1")
    if r < 2:
        raise PreconditionError("the reduction needs at least two vertices (w(b, x) = r + 2 must not exceed 2r)")

    n = 2 * r
    x = 0
    a = [1 + i for i in range(r)]
    b = [1 + r + i for i in range(r)]
    weights: Dict[Tuple[int, int], int] = {}
    for i in range(r):
        weights[(x, a[i])] = r + 1
        weights[(b[i], x)] = r + 2
        for j in range(r):
            if i == j or graph.has_edge(i, j):
                weights[(a[i], b[j])] = 2 * r
            else:
                weights[(a[i], b[j])] = r
    labels = ['x'] + [f"a{i}" for i in range(r)] + [f"b{i}" for i in range(r)]
    # pairs inside A and inside B stay at r : r
    return WeightedTournament.from_pairs(1 + 2 * r, n, weights, labels=labels, default=r)


def minimum_dominating_set_size(graph: nx.Graph) -> int:
    """Exhaustive minimum dominating set size, for cross-checks on small graphs."""

    nodes = list(graph.nodes)
    for k in range(1, len(nodes) + 1):
        for chosen in combinations(nodes, k):
            if nx.is_dominating_set(graph, chosen):
                return k
    return 0


def verify_reduction_cycles(tournament: WeightedTournament) -> bool:
    """Every simple margin-graph cycle is x -> a_i -> b_j -> x with splitting edge (x, a_i)."""

    mg = margin_graph(tournament)
    r = (tournament.m - 1) // 2
    for cycle in nx.simple_cycles(mg.to_networkx()):
        if len(cycle) != 3:
            return False
        start = cycle.index(0) if 0 in cycle else None
        if start is None:
            return False
        x, ai, bj = cycle[start:] + cycle[:start]
        if not (1 <= ai <= r and r < bj <= 2 * r):
            return False
        strengths = [mg.edges[(x, ai)], mg.edges[(ai, bj)], mg.edges[(bj, x)]]
        if strengths[0] != 2 or min(strengths[1:]) <= 2:
            return False
    return True
