"""
Integer network-flow kernel.

Two solvers over a FlowNetwork that allows parallel edges:

- max_flow: s-t maximum flow with a minimum cut, via networkx's Edmonds-Karp.
- min_cost_b_flow: minimum-cost flow meeting node balances. The native solver
  is a primal-dual successive-shortest-path method (Dijkstra with potentials,
  then a blocking flow on the zero-reduced-cost arcs). A networkx backend
  (network simplex on the multiedge-expanded network) is kept for cross-checks.

Balances follow the networkx demand convention: balance = inflow - outflow,
so a supply node has a negative balance.
"""

import heapq
import logging
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Tuple

import networkx as nx
from networkx.algorithms.flow import edmonds_karp

from .utils.errors import InvariantFailure, PreconditionError

logger = logging.getLogger(__name__)

INF = float('inf')


@dataclass(frozen=True)
class FlowEdge:
    tail: int
    head: int
    capacity: int
    cost: int = 0


class FlowNetwork:
    """
    Directed multigraph with node balances, edge capacities and edge costs.

    Nodes are dense integers handed out by add_node; edges keep insertion order,
    which is also the tie-break order of the solvers.
    """

    def __init__(self):
        self.balances: List[int] = []
        self.names: List[str] = []
        self.edges: List[FlowEdge] = []

    def add_node(self, balance: int = 0, name: Optional[str] = None) -> int:
        self.balances.append(int(balance))
        self.names.append(name if name is not None else str(len(self.names)))
        return len(self.balances) - 1

    def add_edge(self, tail: int, head: int, capacity: int, cost: int = 0) -> int:
        if capacity < 0:
            raise PreconditionError(f"negative capacity {capacity} on edge {tail}->{head}")
        for node in (tail, head):
            if not 0 <= node < self.node_count:
                raise PreconditionError(f"edge endpoint {node} is not a node")
        self.edges.append(FlowEdge(int(tail), int(head), int(capacity), int(cost)))
        return len(self.edges) - 1

    @property
    def node_count(self) -> int:
        return len(self.balances)

    def node(self, name: str) -> int:
        return self.names.index(name)

    def is_simple(self) -> bool:
        seen = set()
        for e in self.edges:
            if (e.tail, e.head) in seen:
                return False
            seen.add((e.tail, e.head))
        return True

    def validate(self) -> None:
        if sum(self.balances) != 0:
            raise PreconditionError(f"balances sum to {sum(self.balances)}, expected 0")

    def __repr__(self) -> str:
        return f"FlowNetwork(nodes={self.node_count}, edges={len(self.edges)})"


@dataclass
class Flow:
    """
    Per-edge flow aligned with FlowNetwork.edges.

    For s-t flows `value` is the flow value and `cut` lists the indices of the
    edges leaving `source_side`. For b-flows `value` is the total supply shipped.
    """

    values: List[int]
    cost: int
    value: int = 0
    cut: List[int] = field(default_factory=list)
    source_side: FrozenSet[int] = frozenset()


def check_flow(net: FlowNetwork, flow: Flow, use_balances: bool = True) -> None:
    """Raise InvariantFailure unless flow respects capacities (and balances)."""
    if len(flow.values) != len(net.edges):
        raise InvariantFailure("flow is not aligned with the edge list")
    excess = [0] * net.node_count
    for e, f in zip(net.edges, flow.values):
        if not 0 <= f <= e.capacity:
            raise InvariantFailure(f"flow {f} outside 0..{e.capacity} on {e.tail}->{e.head}")
        excess[e.head] += f
        excess[e.tail] -= f
    if use_balances and excess != net.balances:
        raise InvariantFailure("flow does not meet node balances")


# ======================================================================
# Max flow / min cut
# ======================================================================

def _split_aggregate(net: FlowNetwork, aggregate: Dict[Tuple[int, int], int]) -> List[int]:
    """Hand aggregated pair flows back to parallel edges, lowest index first."""
    remaining = dict(aggregate)
    values = []
    for e in net.edges:
        take = min(e.capacity, remaining.get((e.tail, e.head), 0))
        values.append(take)
        if take:
            remaining[(e.tail, e.head)] -= take
    return values


def max_flow(net: FlowNetwork, s: int, t: int) -> Flow:
    """
    Maximum s-t flow and a minimum cut. Node balances are ignored.

    Raises:
        PreconditionError: s == t or either is not a node.
        InvariantFailure: flow value differs from the cut capacity.
    """
    if s == t:
        raise PreconditionError("source and sink must differ")
    for node in (s, t):
        if not 0 <= node < net.node_count:
            raise PreconditionError(f"{node} is not a node")

    graph = nx.DiGraph()
    graph.add_nodes_from(range(net.node_count))
    for e in net.edges:
        if e.tail == e.head:
            continue
        if graph.has_edge(e.tail, e.head):
            graph[e.tail][e.head]['capacity'] += e.capacity
        else:
            graph.add_edge(e.tail, e.head, capacity=e.capacity)

    residual = edmonds_karp(graph, s, t, capacity='capacity')
    value = int(residual.graph['flow_value'])

    source_side = {s}
    frontier = [s]
    while frontier:
        u = frontier.pop()
        for v, attr in residual[u].items():
            if v not in source_side and attr['capacity'] - attr['flow'] > 0:
                source_side.add(v)
                frontier.append(v)

    aggregate = {(u, v): int(residual[u][v]['flow']) for u, v in graph.edges
                 if residual[u][v]['flow'] > 0}
    values = _split_aggregate(net, aggregate)
    cut = [i for i, e in enumerate(net.edges) if e.tail in source_side and e.head not in source_side]
    cut_capacity = sum(net.edges[i].capacity for i in cut)
    if cut_capacity != value:
        raise InvariantFailure(f"max flow {value} != min cut capacity {cut_capacity}")

    cost = sum(f * e.cost for f, e in zip(values, net.edges))
    logger.debug(f"max_flow {s}->{t} on {net!r}: value {value}, cut {cut}")
    return Flow(values=values, cost=cost, value=value, cut=cut, source_side=frozenset(source_side))


# ======================================================================
# Min-cost b-flow
# ======================================================================

class _Residual:
    """Adjacency-list residual graph; arc i and i ^ 1 are mates."""

    def __init__(self, node_count: int):
        self.head: List[int] = []
        self.cap: List[int] = []
        self.cost: List[int] = []
        self.out: List[List[int]] = [[] for _ in range(node_count)]

    def add(self, u: int, v: int, capacity: int, cost: int) -> int:
        index = len(self.head)
        self.head += [v, u]
        self.cap += [capacity, 0]
        self.cost += [cost, -cost]
        self.out[u].append(index)
        self.out[v].append(index + 1)
        return index


def _dijkstra(res: _Residual, source: int, potential: List[float]) -> List[float]:
    dist = [INF] * len(res.out)
    dist[source] = 0
    heap = [(0, source)]
    while heap:
        d, u = heapq.heappop(heap)
        if d > dist[u]:
            continue
        for arc in res.out[u]:
            if res.cap[arc] <= 0:
                continue
            v = res.head[arc]
            nd = d + res.cost[arc] + potential[u] - potential[v]
            if nd < dist[v]:
                dist[v] = nd
                heapq.heappush(heap, (nd, v))
    return dist


def _blocking_flow(res: _Residual, source: int, sink: int, potential: List[float], limit: int) -> int:
    """Dinic phases restricted to arcs with zero reduced cost."""

    def admissible(arc: int, u: int) -> bool:
        v = res.head[arc]
        return res.cap[arc] > 0 and res.cost[arc] + potential[u] - potential[v] == 0

    pushed = 0
    while pushed < limit:
        level = [-1] * len(res.out)
        level[source] = 0
        queue = [source]
        for u in queue:
            for arc in res.out[u]:
                v = res.head[arc]
                if level[v] < 0 and admissible(arc, u):
                    level[v] = level[u] + 1
                    queue.append(v)
        if level[sink] < 0:
            break

        pointer = [0] * len(res.out)

        def push(u: int, amount: int) -> int:
            if u == sink:
                return amount
            arcs = res.out[u]
            while pointer[u] < len(arcs):
                arc = arcs[pointer[u]]
                v = res.head[arc]
                if level[v] == level[u] + 1 and admissible(arc, u):
                    sent = push(v, min(amount, res.cap[arc]))
                    if sent:
                        res.cap[arc] -= sent
                        res.cap[arc ^ 1] += sent
                        return sent
                pointer[u] += 1
            return 0

        while pushed < limit:
            sent = push(source, limit - pushed)
            if not sent:
                break
            pushed += sent
    return pushed


def _min_cost_native(net: FlowNetwork) -> Optional[Flow]:
    for e in net.edges:
        if e.cost < 0:
            raise PreconditionError(
                f"native min-cost solver needs non-negative costs, edge {e.tail}->{e.head} has {e.cost}")

    nodes = net.node_count
    source, sink = nodes, nodes + 1
    res = _Residual(nodes + 2)
    arcs = [res.add(e.tail, e.head, e.capacity, e.cost) for e in net.edges]
    required = 0
    for v, b in enumerate(net.balances):
        if b < 0:
            res.add(source, v, -b, 0)
            required += -b
        elif b > 0:
            res.add(v, sink, b, 0)

    potential: List[float] = [0] * (nodes + 2)
    shipped = 0
    phases = 0
    while shipped < required:
        dist = _dijkstra(res, source, potential)
        if dist[sink] == INF:
            break
        for v in range(nodes + 2):
            if dist[v] < INF:
                potential[v] += dist[v]
        shipped += _blocking_flow(res, source, sink, potential, required - shipped)
        phases += 1

    if shipped < required:
        logger.debug(f"min_cost_b_flow infeasible: shipped {shipped} of {required}")
        return None
    values = [e.capacity - res.cap[arc] for e, arc in zip(net.edges, arcs)]
    cost = sum(f * e.cost for f, e in zip(values, net.edges))
    logger.debug(f"min_cost_b_flow on {net!r}: cost {cost} after {phases} phases")
    return Flow(values=values, cost=cost, value=required)


def _expand(net: FlowNetwork) -> Tuple[FlowNetwork, List[int]]:
    """Expanded network plus, per original edge, the index of the edge carrying its flow."""
    groups: Dict[Tuple[int, int], int] = defaultdict(int)
    for e in net.edges:
        groups[(e.tail, e.head)] += 1

    expanded = FlowNetwork()
    for balance, name in zip(net.balances, net.names):
        expanded.add_node(balance, name)
    carrier = []
    for i, e in enumerate(net.edges):
        if groups[(e.tail, e.head)] == 1:
            carrier.append(expanded.add_edge(e.tail, e.head, e.capacity, e.cost))
            continue
        mid = expanded.add_node(0, f"mid{i}")
        carrier.append(expanded.add_edge(e.tail, mid, e.capacity, e.cost))
        expanded.add_edge(mid, e.head, e.capacity, 0)
    return expanded, carrier


def expand_multiedges(net: FlowNetwork) -> FlowNetwork:
    """
    Replace every edge of a parallel group with a path through a fresh
    zero-balance midpoint. The first half-edge keeps the cost, the second is
    free, so every flow keeps its cost. Simple networks come back as-is.
    """
    if net.is_simple():
        return net
    return _expand(net)[0]


def _min_cost_networkx(net: FlowNetwork) -> Optional[Flow]:
    expanded, carrier = _expand(net)
    graph = nx.DiGraph()
    for v, b in enumerate(expanded.balances):
        graph.add_node(v, demand=b)
    for e in expanded.edges:
        graph.add_edge(e.tail, e.head, capacity=e.capacity, weight=e.cost)
    try:
        flow_dict = nx.min_cost_flow(graph, demand='demand', capacity='capacity', weight='weight')
    except nx.NetworkXUnfeasible:
        return None
    values = []
    for index in carrier:
        e = expanded.edges[index]
        values.append(int(flow_dict[e.tail][e.head]))
    cost = sum(f * e.cost for f, e in zip(values, net.edges))
    return Flow(values=values, cost=cost, value=sum(-b for b in net.balances if b < 0))


def min_cost_b_flow(net: FlowNetwork, backend: str = "native") -> Optional[Flow]:
    """
    Minimum-cost b-flow, or None when no feasible flow exists.

    Parameters
    ----------
    net : FlowNetwork
        Balances must sum to zero.
    backend : str
        "native" (successive shortest paths, non-negative costs only) or
        "networkx" (network simplex on the expanded network).
    """
    net.validate()
    if backend == "native":
        flow = _min_cost_native(net)
    elif backend == "networkx":
        flow = _min_cost_networkx(net)
    else:
        raise PreconditionError(f"unknown min-cost backend {backend!r}")
    if flow is not None:
        check_flow(net, flow)
    return flow
