"""
Margin of victory for Borda.

Destructive: greedy. Pick a rival b, push weight from a to b two score points
at a time, then single points over third alternatives, and keep the cheapest
rival.

Constructive: for every candidate winning score l of d, a min-cost b-flow on
G_{d,l} redistributes each pair's n units of weight so d ends with exactly l
and nobody exceeds l. Red edges carry reversed weight at cost 1.
"""

import logging
from typing import Dict, Optional, Tuple

from .core import MovResult, ReversalFunction, WeightedTournament, apply_reversal, pairs
from .flow import FlowNetwork, min_cost_b_flow
from .solutions import borda_scores, borda_winners
from .utils.errors import InvariantFailure, PreconditionError

logger = logging.getLogger(__name__)


def min_winning_borda_score(n: int, m: int) -> int:
    """Smallest score that can still be maximal: ceil(n (m-1) / 2)."""
    if n < 1 or m < 1:
        raise PreconditionError(f"need n >= 1 and m >= 1, got n={n}, m={m}")
    return (n * (m - 1) + 1) // 2


# ======================================================================
# Destructive
# ======================================================================

def _demote_below(tournament: WeightedTournament, a: int, b: int,
                  scores) -> Optional[Dict[Tuple[int, int], int]]:
    """Cheapest reversal leaving b strictly above a, as {(gainer, loser): amount}."""
    w = tournament.w
    gap = int(scores[a] - scores[b])
    direct = min(int(w[a, b]), gap // 2 + 1)
    entries: Dict[Tuple[int, int], int] = {}
    if direct:
        entries[(b, a)] = direct
    need = gap + 1 - 2 * direct
    for x in tournament.alternatives:
        if need <= 0:
            break
        if x in (a, b):
            continue
        # weight of a over x, then weight of x over b
        for gainer, loser, available in ((x, a, int(w[a, x])), (b, x, int(w[x, b]))):
            take = min(need, available)
            if take:
                entries[(gainer, loser)] = entries.get((gainer, loser), 0) + take
                need -= take
            if need <= 0:
                break
    return entries if need <= 0 else None


def mov_borda_destructive(tournament: WeightedTournament, a: int) -> MovResult:
    """
    MoV of a Borda winner.

    Args:
        tournament: the weighted tournament.
        a: a current Borda winner.

    Returns:
        MovResult with a positive value and a minimum destructive witness.
    """
    tournament.check_alternative(a)
    winning = borda_winners(tournament)
    if a not in winning:
        raise PreconditionError(f"{tournament.label(a)} is not a Borda winner")
    if tournament.m == 1:
        raise PreconditionError("the only alternative cannot be removed from the winning set")

    m = tournament.m
    if len(winning) > 1:
        x = next(x for x in tournament.alternatives if x != a and tournament.w[a, x] > 0)
        witness = ReversalFunction.from_entries(m, {(x, a): 1})
        logger.debug(f"BO destructive {tournament.label(a)}: shared win, one unit to {tournament.label(x)}")
        return MovResult(1, witness, "borda-greedy", a, "BO", {"rival": x})

    scores = borda_scores(tournament)
    best: Optional[Tuple[int, int, Dict[Tuple[int, int], int]]] = None
    for b in tournament.alternatives:
        if b == a:
            continue
        entries = _demote_below(tournament, a, b, scores)
        if entries is None:
            continue
        cost = sum(entries.values())
        if best is None or cost < best[0]:
            best = (cost, b, entries)
    if best is None:
        raise InvariantFailure(f"no rival can overtake {tournament.label(a)}")

    cost, b, entries = best
    logger.debug(f"BO destructive {tournament.label(a)}: rival {tournament.label(b)}, cost {cost}")
    return MovResult(cost, ReversalFunction.from_entries(m, entries), "borda-greedy", a, "BO", {"rival": b})


# ======================================================================
# Constructive
# ======================================================================

def build_borda_flow_network(tournament: WeightedTournament, d: int, l: int) -> FlowNetwork:
    """
    G_{d,l}: s feeds every pair node n units; each pair node splits them between
    its endpoints over green (kept weight, free) and red (reversed weight, cost 1)
    edges; every vertex but d drains at most l into t, and d keeps exactly l.
    """
    tournament.check_alternative(d)
    n, m = tournament.n, tournament.m
    low, high = min_winning_borda_score(n, m), n * (m - 1)
    if not low <= l <= high:
        raise PreconditionError(f"l={l} outside {low}..{high}")

    total = n * m * (m - 1) // 2
    w = tournament.w
    net = FlowNetwork()
    s = net.add_node(-total, "s")
    pair_nodes = {}
    for v, u in pairs(m):
        pair_nodes[(v, u)] = net.add_node(0, f"e{v}_{u}")
    vertex = [net.add_node(l if x == d else 0, f"v{x}") for x in range(m)]
    t = net.add_node(total - l, "t")

    for node in pair_nodes.values():
        net.add_edge(s, node, n, 0)
    for (v, u), node in pair_nodes.items():
        net.add_edge(node, vertex[v], int(w[v, u]), 0)
        net.add_edge(node, vertex[v], int(w[u, v]), 1)
        net.add_edge(node, vertex[u], int(w[u, v]), 0)
        net.add_edge(node, vertex[u], int(w[v, u]), 1)
    for x in range(m):
        if x != d:
            net.add_edge(vertex[x], t, l, 0)
    return net


def _reversal_from_flow(tournament: WeightedTournament, net: FlowNetwork, values) -> ReversalFunction:
    """R(v, u) = weight v ends up with on pair (v, u) minus weight it had."""
    m = tournament.m
    inflow: Dict[Tuple[int, int], int] = {}
    for e, f in zip(net.edges, values):
        tail, head = net.names[e.tail], net.names[e.head]
        if tail.startswith('e') and head.startswith('v'):
            key = (tail, int(head[1:]))
            inflow[key] = inflow.get(key, 0) + f
    entries = {}
    for v, u in pairs(m):
        gained = inflow[(f"e{v}_{u}", v)] - int(tournament.w[v, u])
        if gained:
            entries[(v, u)] = gained
    return ReversalFunction.from_entries(m, entries)


def mov_borda_constructive(tournament: WeightedTournament, d: int, backend: str = "native") -> MovResult:
    """
    MoV of a Borda non-winner: negative of the cheapest flow over all target scores l.
    """
    tournament.check_alternative(d)
    if d in borda_winners(tournament):
        raise PreconditionError(f"{tournament.label(d)} is already a Borda winner")

    n, m = tournament.n, tournament.m
    scores = borda_scores(tournament)
    s_d = int(scores[d])
    best: Optional[Tuple[int, int, object]] = None
    solved = 0
    for l in range(min_winning_borda_score(n, m), n * (m - 1) + 1):
        if best is not None and l - s_d >= best[0]:
            break
        excess = sum(max(0, int(scores[v]) - l) for v in range(m) if v != d)
        if best is not None and max(l - s_d, excess) >= best[0]:
            continue
        net = build_borda_flow_network(tournament, d, l)
        flow = min_cost_b_flow(net, backend=backend)
        solved += 1
        if flow is None:
            continue
        logger.debug(f"BO constructive {tournament.label(d)}: l={l} cost {flow.cost}")
        if best is None or flow.cost < best[0]:
            best = (flow.cost, l, (net, flow))
    if best is None:
        raise InvariantFailure(f"no target score makes {tournament.label(d)} a Borda winner")

    cost, l, (net, flow) = best
    witness = _reversal_from_flow(tournament, net, flow.values)
    if witness.size != cost:
        raise InvariantFailure(f"flow cost {cost} but extracted reversal has size {witness.size}")
    if d not in borda_winners(apply_reversal(tournament, witness)):
        raise InvariantFailure("constructive Borda witness does not install the alternative")
    logger.debug(f"BO constructive {tournament.label(d)}: best l={l}, cost {cost}, {solved} flows solved")
    return MovResult(-cost, witness, "borda-flow", d, "BO", {"l": l, "flows_solved": solved})
