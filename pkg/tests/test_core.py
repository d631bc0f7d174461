import numpy as np
import pytest
from hypothesis import given, settings

from marigold.core import (MovResult, ReversalFunction, WeightedTournament, apply_reversal,
                           is_condorcet_loser, is_condorcet_winner, margin, margin_graph,
                           remove_alternative, reversal_size)
from marigold.solutions import borda_scores
from marigold.utils.errors import PreconditionError, TournamentError
from strategies import tournament_and_reversal, tournaments


def test_example_margins(t_ex):
    assert margin(t_ex, 0, 1) == 8
    assert margin(t_ex, 3, 0) == 2
    assert margin(t_ex, 0, 3) == -2


def test_example_margin_graph(t_ex):
    assert margin_graph(t_ex).edges == {(0, 1): 8, (0, 2): 6, (1, 2): 6, (2, 3): 4, (3, 0): 2, (3, 1): 4}


def test_margin_graph_to_networkx(t_ex):
    graph = margin_graph(t_ex).to_networkx()
    assert graph.number_of_edges() == 6
    assert graph[3][0]["margin"] == 2


def test_labels_default_to_letters(t_ex):
    assert t_ex.labels == ("a", "b", "c", "d")
    assert t_ex.index("c") == 2
    assert t_ex.index("3") == 3
    with pytest.raises(PreconditionError):
        t_ex.index("z")


@pytest.mark.parametrize("w, n", [
    ([[0, 3], [2, 0]], 4),       # pair does not sum to n
    ([[1, 3], [1, 0]], 4),       # non-zero diagonal
    ([[0, 5], [-1, 0]], 4),      # outside 0..n
    ([[0, 1, 2]], 3),            # not square
])
def test_invalid_tournaments_rejected(w, n):
    with pytest.raises(TournamentError):
        WeightedTournament(n=n, w=w)


def test_duplicate_labels_rejected():
    with pytest.raises(TournamentError):
        WeightedTournament(n=2, w=[[0, 1], [1, 0]], labels=("x", "x"))


def test_weights_are_read_only(t_ex):
    with pytest.raises(ValueError):
        t_ex.w[0, 1] = 3


def test_from_pairs_fills_ties():
    t = WeightedTournament.from_pairs(3, 4, {(0, 1): 3})
    assert t.weight(1, 0) == 1
    assert t.weight(0, 2) == 2 and t.weight(2, 1) == 2


def test_tied_needs_even_n():
    assert WeightedTournament.tied(3, 4).weight(2, 0) == 2
    with pytest.raises(TournamentError):
        WeightedTournament.tied(3, 5)


def test_reversal_lowers_borda_score(t_ex):
    after = apply_reversal(t_ex, ReversalFunction.from_entries(4, {(3, 0): 3}))
    assert borda_scores(t_ex)[0] == 21
    assert borda_scores(after)[0] == 18


def test_reversal_raises_margin(t_ex):
    after = apply_reversal(t_ex, ReversalFunction.from_entries(4, {(3, 0): 2}))
    assert margin(after, 3, 0) == 6


def test_reversal_beyond_capacity_rejected(t_ex):
    with pytest.raises(TournamentError):
        apply_reversal(t_ex, ReversalFunction.from_entries(4, {(3, 0): 5}))


def test_reversal_must_be_antisymmetric():
    with pytest.raises(TournamentError):
        ReversalFunction(np.array([[0, 1], [1, 0]]))


def test_reversal_describe(t_ex):
    reversal = ReversalFunction.from_entries(4, {(3, 0): 3, (2, 1): 1})
    assert reversal.describe(t_ex.labels) == "R(c,b)=1, R(d,a)=3"
    assert reversal.size == 4
    assert ReversalFunction.zero(4).describe() == "(empty)"


def test_remove_alternative(t_ex):
    sub = remove_alternative(t_ex, 0)
    assert sub.labels == ("b", "c", "d")
    assert sub.weight(0, 1) == 8 and sub.weight(0, 2) == 3 and sub.weight(1, 2) == 7


def test_condorcet_checks(t_ex):
    assert not is_condorcet_winner(t_ex, 0)
    assert not is_condorcet_loser(t_ex, 1)
    single = WeightedTournament(n=3, w=[[0]])
    assert is_condorcet_winner(single, 0)


def test_mov_result_direction():
    zero = ReversalFunction.zero(2)
    assert MovResult(1, zero, "x", 0, "BO").destructive
    assert not MovResult(-1, zero, "x", 0, "BO").destructive


@given(tournaments())
def test_margins_are_antisymmetric(tournament):
    margins = tournament.margins()
    assert np.array_equal(margins, -margins.T)
    assert np.all(np.abs(margins) <= tournament.n)


@given(tournament_and_reversal())
def test_reversal_round_trip(case):
    tournament, reversal = case
    after = apply_reversal(tournament, reversal)
    assert ReversalFunction.between(tournament, after) == reversal
    assert apply_reversal(after, -reversal) == tournament
    assert reversal_size(reversal) == int(np.abs(reversal.r).sum()) // 2


@settings(max_examples=50)
@given(tournaments(min_m=2))
def test_relabel_preserves_margins(tournament):
    perm = list(reversed(range(tournament.m)))
    relabeled = tournament.relabel(perm)
    for i in range(tournament.m):
        for j in range(tournament.m):
            assert relabeled.w[i, j] == tournament.w[perm[i], perm[j]]
    assert relabeled.labels[0] == tournament.labels[-1]
