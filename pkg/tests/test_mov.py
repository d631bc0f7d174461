import pytest

from marigold.core import MovResult, ReversalFunction
from marigold.mov import margin_of_victory, mov_row, verify_witness
from marigold.oracle import brute_force_mov
from marigold.utils.errors import InvariantFailure, PreconditionError

EXAMPLE_ROWS = {
    "BO": [3, -5, -5, -3],
    "SC": [2, -3, -3, 1],
    "wUC": [3, -1, 3, 2],
}


@pytest.mark.parametrize("solution", sorted(EXAMPLE_ROWS))
def test_example_rows(t_ex, solution):
    row = mov_row(t_ex, solution)
    assert [row[x].value for x in t_ex.alternatives] == EXAMPLE_ROWS[solution]


def test_solver_routing(t_ex):
    assert margin_of_victory(t_ex, 0, "BO").solver == "borda-greedy"
    assert margin_of_victory(t_ex, 1, "BO").solver == "borda-flow"
    assert margin_of_victory(t_ex, 0, "SC").solver == "sc-mincut"
    assert margin_of_victory(t_ex, 1, "SC").solver == "sc-search"
    assert margin_of_victory(t_ex, 1, "SC", method="cp-sat").solver == "sc-cpsat"
    assert margin_of_victory(t_ex, 0, "wUC").solver == "wuc-greedy"
    assert margin_of_victory(t_ex, 0, "wUC", method="oracle").solver == "oracle"


def test_solution_names_are_case_insensitive(t_ex):
    assert margin_of_victory(t_ex, 3, "split-cycle").value == 1


def test_unknown_method(t_ex):
    with pytest.raises(PreconditionError):
        margin_of_victory(t_ex, 0, "BO", method="guess")


def test_verify_rejects_wrong_size(t_ex):
    witness = ReversalFunction.from_entries(4, {(3, 0): 3})
    assert verify_witness(t_ex, MovResult(3, witness, "test", 0, "BO"))
    with pytest.raises(InvariantFailure):
        verify_witness(t_ex, MovResult(2, witness, "test", 0, "BO"))


def test_verify_rejects_witness_that_flips_nothing(t_ex):
    witness = ReversalFunction.from_entries(4, {(3, 0): 2})
    with pytest.raises(InvariantFailure):
        verify_witness(t_ex, MovResult(2, witness, "test", 0, "BO"))


def test_verify_rejects_wrong_sign(t_ex):
    witness = ReversalFunction.from_entries(4, {(3, 0): 3})
    with pytest.raises(InvariantFailure):
        verify_witness(t_ex, MovResult(-3, witness, "test", 0, "BO"))


def test_row_subset(t_ex):
    assert sorted(mov_row(t_ex, "wUC", alternatives=[0, 2])) == [0, 2]


@pytest.mark.slow
@pytest.mark.parametrize("m", [3, 4])
@pytest.mark.parametrize("n", [2, 3, 4])
def test_every_solver_matches_oracle(random_tournaments, m, n):
    for t in random_tournaments(35, m, n, seed=71):
        for solution in EXAMPLE_ROWS:
            for x in t.alternatives:
                result = margin_of_victory(t, x, solution)
                expected = brute_force_mov(t, x, solution)
                assert result.value == expected.value, (solution, t, x, result.solver)
                assert result.witness.size == expected.witness.size
                assert verify_witness(t, result)
