import pytest

from marigold.core import WeightedTournament, apply_reversal
from marigold.mov_borda import (build_borda_flow_network, min_winning_borda_score,
                                mov_borda_constructive, mov_borda_destructive)
from marigold.oracle import brute_force_mov
from marigold.solutions import borda_winners
from marigold.utils.errors import PreconditionError


def test_min_winning_score():
    assert min_winning_borda_score(10, 4) == 15
    assert min_winning_borda_score(3, 4) == 5


def test_destructive_example(t_ex):
    result = mov_borda_destructive(t_ex, 0)
    assert result.value == 3
    assert result.witness.describe(t_ex.labels) == "R(d,a)=3"
    assert result.details["rival"] == 3
    assert 0 not in borda_winners(apply_reversal(t_ex, result.witness))


@pytest.mark.parametrize("d, value", [(1, -5), (2, -5), (3, -3)])
def test_constructive_example(t_ex, d, value):
    result = mov_borda_constructive(t_ex, d)
    assert result.value == value
    assert result.witness.size == -value
    assert d in borda_winners(apply_reversal(t_ex, result.witness))


def test_backends_agree(t_ex):
    for d in (1, 2, 3):
        native = mov_borda_constructive(t_ex, d)
        simplex = mov_borda_constructive(t_ex, d, backend="networkx")
        assert native.value == simplex.value


def test_shared_win_costs_one():
    t = WeightedTournament.tied(3, 4)
    result = mov_borda_destructive(t, 0)
    assert result.value == 1
    assert result.witness.describe(t.labels) == "R(b,a)=1"


def test_direction_preconditions(t_ex):
    with pytest.raises(PreconditionError):
        mov_borda_destructive(t_ex, 1)
    with pytest.raises(PreconditionError):
        mov_borda_constructive(t_ex, 0)


def test_flow_network_shape(t_ex):
    net = build_borda_flow_network(t_ex, 3, 19)
    assert net.node_count == 1 + 6 + 4 + 1
    assert len(net.edges) == 6 + 4 * 6 + 3
    assert net.balances[net.node("v3")] == 19
    assert sum(net.balances) == 0
    with pytest.raises(PreconditionError):
        build_borda_flow_network(t_ex, 3, 14)


def test_matches_oracle_on_small_tournaments(random_tournaments):
    for m, n in ((3, 2), (3, 3), (4, 2), (4, 3)):
        for t in random_tournaments(6, m, n, seed=21):
            for x in t.alternatives:
                if x in borda_winners(t):
                    fast = mov_borda_destructive(t, x)
                else:
                    fast = mov_borda_constructive(t, x)
                assert fast.value == brute_force_mov(t, x, "BO").value, (t, x)
