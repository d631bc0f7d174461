import numpy as np
import pytest

from marigold.flow import (FlowNetwork, check_flow, expand_multiedges, max_flow, min_cost_b_flow)
from marigold.utils.errors import InvariantFailure, PreconditionError


def diamond():
    net = FlowNetwork()
    s, a, b, t = (net.add_node(name=name) for name in "sabt")
    net.add_edge(s, a, 3)
    net.add_edge(s, b, 2)
    net.add_edge(a, b, 1)
    net.add_edge(a, t, 2)
    net.add_edge(b, t, 3)
    return net, s, t


def test_max_flow_equals_cut():
    net, s, t = diamond()
    flow = max_flow(net, s, t)
    assert flow.value == 5
    assert sum(net.edges[i].capacity for i in flow.cut) == 5
    assert s in flow.source_side and t not in flow.source_side
    check_flow(net, flow, use_balances=False)


def test_max_flow_parallel_edges_split_in_order():
    net = FlowNetwork()
    s, t = net.add_node(), net.add_node()
    net.add_edge(s, t, 2)
    net.add_edge(s, t, 3)
    flow = max_flow(net, s, t)
    assert flow.value == 5
    assert flow.values == [2, 3]
    assert sorted(flow.cut) == [0, 1]


def test_max_flow_rejects_same_endpoints():
    net, s, _ = diamond()
    with pytest.raises(PreconditionError):
        max_flow(net, s, s)


def test_min_cost_prefers_cheap_parallel_edge():
    net = FlowNetwork()
    s = net.add_node(-3)
    t = net.add_node(3)
    net.add_edge(s, t, 2, 1)
    net.add_edge(s, t, 2, 0)
    flow = min_cost_b_flow(net)
    assert flow.values == [1, 2]
    assert flow.cost == 1


def test_min_cost_infeasible_returns_none():
    net = FlowNetwork()
    s = net.add_node(-3)
    t = net.add_node(3)
    net.add_edge(s, t, 2, 0)
    assert min_cost_b_flow(net) is None
    assert min_cost_b_flow(net, backend="networkx") is None


def test_unbalanced_network_rejected():
    net = FlowNetwork()
    net.add_node(-1)
    net.add_node(2)
    with pytest.raises(PreconditionError):
        min_cost_b_flow(net)


def test_negative_cost_rejected_by_native_solver():
    net = FlowNetwork()
    s = net.add_node(-1)
    t = net.add_node(1)
    net.add_edge(s, t, 1, -1)
    with pytest.raises(PreconditionError):
        min_cost_b_flow(net)


def test_expand_multiedges():
    net = FlowNetwork()
    s = net.add_node(-2)
    t = net.add_node(2)
    net.add_edge(s, t, 1, 1)
    net.add_edge(s, t, 1, 0)
    expanded = expand_multiedges(net)
    assert expanded.is_simple()
    assert expanded.node_count == 4
    assert sorted(e.cost for e in expanded.edges) == [0, 0, 0, 1]
    assert sum(expanded.balances) == 0


def test_expand_keeps_simple_networks():
    net, _, _ = diamond()
    assert expand_multiedges(net) is net


def test_check_flow_catches_capacity_violation():
    net, s, t = diamond()
    flow = max_flow(net, s, t)
    flow.values[0] = 99
    with pytest.raises(InvariantFailure):
        check_flow(net, flow, use_balances=False)


def random_network(rng, nodes=6, edges=14):
    net = FlowNetwork()
    supply = int(rng.integers(1, 6))
    for v in range(nodes):
        balance = -supply if v == 0 else (supply if v == nodes - 1 else 0)
        net.add_node(balance)
    for _ in range(edges):
        u, v = rng.choice(nodes, size=2, replace=False)
        net.add_edge(int(u), int(v), int(rng.integers(0, 4)), int(rng.integers(0, 2)))
    return net


def test_native_matches_network_simplex():
    rng = np.random.default_rng(5)
    feasible = 0
    for _ in range(150):
        net = random_network(rng)
        native = min_cost_b_flow(net)
        reference = min_cost_b_flow(net, backend="networkx")
        assert (native is None) == (reference is None)
        if native is not None:
            feasible += 1
            assert native.cost == reference.cost
    assert feasible > 0
