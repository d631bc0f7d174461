import numpy as np
import pytest
from hypothesis import given, settings

from marigold.core import WeightedTournament
from marigold.solutions import (SOLUTIONS, borda_scores, borda_winners, decreasing_path_exists,
                                dominated_edges, get_solution, is_winner, iter_covering_pairs,
                                split_cycle_winners, split_cycle_winners_by_cycle_enumeration,
                                splitting_edges_by_cycle_enumeration, strongest_path_matrix,
                                w_covers, winners, wuc_winners)
from marigold.utils.config import get_config
from marigold.utils.errors import PreconditionError, ScaleGuardError
from strategies import tournaments


def test_example_borda(t_ex):
    assert list(borda_scores(t_ex)) == [21, 12, 11, 16]
    assert borda_winners(t_ex).labels(t_ex) == ["a"]


def test_example_split_cycle(t_ex):
    assert split_cycle_winners(t_ex).labels(t_ex) == ["a", "d"]
    assert strongest_path_matrix(t_ex).p[0, 3] == 4


def test_example_deleted_edges(t_ex):
    assert splitting_edges_by_cycle_enumeration(t_ex) == {(2, 3), (3, 1), (3, 0)}
    assert dominated_edges(t_ex) == {(0, 1), (0, 2), (1, 2)}


def test_example_uncovered_set(t_ex):
    assert wuc_winners(t_ex).labels(t_ex) == ["a", "c", "d"]
    assert w_covers(t_ex, 0, 1)
    assert not w_covers(t_ex, 3, 0)
    assert list(iter_covering_pairs(t_ex)) == [(0, 1)]


def test_example_decreasing_paths(t_ex):
    assert decreasing_path_exists(t_ex, 2, 0, 2)
    assert not decreasing_path_exists(t_ex, 2, 0, 1)
    assert not decreasing_path_exists(t_ex, 1, 0, 2)


def test_acyclic_margin_graph_deletes_nothing():
    t = WeightedTournament.from_pairs(3, 4, {(0, 1): 3, (0, 2): 4, (1, 2): 3})
    assert splitting_edges_by_cycle_enumeration(t) == set()
    assert split_cycle_winners(t).labels(t) == ["a"]


def test_all_tied_everyone_wins():
    t = WeightedTournament.tied(4, 6)
    for key in SOLUTIONS:
        assert len(winners(t, key)) == 4


def test_registry_aliases():
    assert get_solution("borda").key == "BO"
    assert get_solution("split-cycle").key == "SC"
    assert get_solution("WUC").key == "wUC"
    with pytest.raises(PreconditionError):
        get_solution("copeland")


def test_is_winner(t_ex):
    assert is_winner(t_ex, 3, "SC")
    assert not is_winner(t_ex, 1, "wUC")


def test_cycle_enumeration_guard():
    big = get_config()['guards']['cycle_enumeration_max_m'] + 1
    with pytest.raises(ScaleGuardError):
        splitting_edges_by_cycle_enumeration(WeightedTournament.tied(big, 2))


@settings(max_examples=200)
@given(tournaments(min_m=1, max_m=6))
def test_split_cycle_matches_cycle_enumeration(tournament):
    assert split_cycle_winners(tournament) == split_cycle_winners_by_cycle_enumeration(tournament)


@settings(max_examples=200)
@given(tournaments(min_m=2, max_m=6))
def test_uncovered_set_matches_decreasing_paths(tournament):
    by_paths = {x for x in tournament.alternatives
                if all(decreasing_path_exists(tournament, x, y, 2)
                       for y in tournament.alternatives if y != x)}
    assert set(wuc_winners(tournament)) == by_paths


@settings(max_examples=200)
@given(tournaments())
def test_winning_sets_are_nonempty_and_nested(tournament):
    bo, wuc = borda_winners(tournament), wuc_winners(tournament)
    assert len(bo) >= 1 and len(split_cycle_winners(tournament)) >= 1
    assert set(bo) <= set(wuc)


@settings(max_examples=100)
@given(tournaments(min_m=2))
def test_relabeling_permutes_winners(tournament):
    perm = list(reversed(range(tournament.m)))
    relabeled = tournament.relabel(perm)
    for key, solution in SOLUTIONS.items():
        moved = {perm[x] for x in solution.winners(relabeled)}
        assert moved == set(solution.winners(tournament)), key


def test_containment_gaps_exist(random_tournaments):
    """Split Cycle and wUC are incomparable: each one has a winner the other rejects."""
    sc_only = wuc_only = False
    for t in random_tournaments(300, 5, 6, seed=3):
        sc, wuc = set(split_cycle_winners(t)), set(wuc_winners(t))
        sc_only = sc_only or bool(sc - wuc)
        wuc_only = wuc_only or bool(wuc - sc)
        if sc_only and wuc_only:
            break
    assert sc_only and wuc_only


@pytest.mark.slow
def test_definitional_equivalence_sweep(random_tournaments):
    for m in range(2, 7):
        for t in random_tournaments(100, m, 7, seed=11):
            assert split_cycle_winners(t) == split_cycle_winners_by_cycle_enumeration(t)
            for x in t.alternatives:
                uncovered = not any(w_covers(t, y, x) for y in t.alternatives if y != x)
                reaches = all(decreasing_path_exists(t, x, y, 2) for y in t.alternatives if y != x)
                assert uncovered == reaches
    for t in random_tournaments(1000, 6, 9, seed=12):
        assert set(borda_winners(t)) <= set(wuc_winners(t))


def test_borda_scores_sum():
    t = WeightedTournament.tied(5, 4)
    assert int(np.sum(borda_scores(t))) == 4 * 5 * 4 // 2
