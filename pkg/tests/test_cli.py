import networkx as nx
import pandas as pd
import pytest

from marigold import __version__
from marigold.cli import main
from marigold.core import WeightedTournament
from marigold.mov_splitcycle import dominating_set_reduction
from marigold.utils.errors import EXIT_PARSE, EXIT_SCALE, EXIT_USAGE
from marigold.utils.textio import read_tournament, write_tournament


def test_solve(t_ex_file, capsys):
    for key, expected in (("BO", "BO: a"), ("SC", "SC: a d"), ("wUC", "wUC: a c d")):
        assert main(["solve", t_ex_file, key]) == 0
        assert capsys.readouterr().out == expected + "\n"


def test_solve_explain(t_ex_file, capsys):
    assert main(["solve", t_ex_file, "wUC", "--explain"]) == 0
    out = capsys.readouterr().out
    assert "borda scores: a=21 b=12 c=11 d=16" in out
    assert "covering: a covers b" in out

    assert main(["solve", t_ex_file, "SC", "--explain"]) == 0
    assert "surviving edges: a>b a>c b>c" in capsys.readouterr().out


def test_solve_csv(t_ex_file, capsys):
    assert main(["--format", "csv", "solve", t_ex_file, "SC"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "alternative,label,winner,borda_score"
    assert lines[1] == "0,a,1,21"
    assert lines[4] == "3,d,1,16"


def test_mov_row(t_ex_file, capsys):
    assert main(["mov", t_ex_file, "BO"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert [int(line.split()[1]) for line in lines] == [3, -5, -5, -3]
    assert all(line.endswith("verified") for line in lines)


def test_mov_single_alternative(t_ex_file, capsys):
    assert main(["mov", t_ex_file, "SC", "d"]) == 0
    assert capsys.readouterr().out.startswith("d    1  ")


def test_mov_csv(t_ex_file, capsys):
    assert main(["--format", "csv", "mov", t_ex_file, "wUC", "c"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "alternative,label,mov,solver,witness,check"
    assert lines[1] == "2,c,3,wuc-greedy,\"R(a,d)=3\",verified"


def test_oracle_command(t_ex_file, capsys):
    assert main(["oracle", t_ex_file, "SC", "a"]) == 0
    assert "[oracle]" in capsys.readouterr().out


def test_oracle_scale_guard(tmp_path):
    path = str(tmp_path / "big.txt")
    write_tournament(path, WeightedTournament.tied(10, 2))
    assert main(["oracle", path, "BO", "a"]) == EXIT_SCALE


def test_parse_error_exit_code(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("2 4\n0 2\n")
    assert main(["solve", str(path), "BO"]) == EXIT_PARSE


def test_unknown_solution_is_usage_error(t_ex_file):
    assert main(["solve", t_ex_file, "copeland"]) == EXIT_USAGE


def test_argparse_errors_exit_with_usage_code():
    with pytest.raises(SystemExit) as info:
        main(["solve"])
    assert info.value.code == EXIT_USAGE


def test_version(capsys):
    with pytest.raises(SystemExit) as info:
        main(["--version"])
    assert info.value.code == 0
    assert __version__ in capsys.readouterr().out


def test_generate_is_deterministic(tmp_path, capsys):
    first, second = tmp_path / "one", tmp_path / "two"
    assert main(["--seed", "3", "--out", str(first), "generate", "mallows", "4", "5", "2"]) == 0
    assert main(["--seed", "3", "--out", str(second), "generate", "mallows", "4", "5", "2"]) == 0
    printed = capsys.readouterr().out.split()
    assert len(printed) == 4
    for name in ("mallows_phi0.95_m4_n5_000.txt", "mallows_phi0.95_m4_n5_001.txt"):
        assert (first / name).read_text() == (second / name).read_text()
        assert read_tournament(str(first / name)).n == 5


def test_generate_bad_model(tmp_path):
    assert main(["--out", str(tmp_path), "generate", "zipf", "3", "3"]) == EXIT_USAGE


def test_reduce_dominating_set(tmp_path):
    graph_file = tmp_path / "path.txt"
    graph_file.write_text("0 1\n1 2\n")
    out = str(tmp_path / "reduced.txt")
    assert main(["--out", out, "reduce", "dominating-set", str(graph_file)]) == 0
    assert read_tournament(out) == dominating_set_reduction(nx.path_graph(3))


def test_reduce_set_cover_to_stdout(tmp_path, capsys):
    sets_file = tmp_path / "sets.txt"
    sets_file.write_text("2 1\n0 1\n")
    assert main(["reduce", "set-cover", str(sets_file)]) == 0
    out = capsys.readouterr().out
    assert out.startswith("# set-cover reduction")
    assert "labels: x S0 u0 u1" in out


def test_bounds_verify(capsys):
    assert main(["bounds", "BO", "4", "4", "--verify"]) == 0
    out = capsys.readouterr().out
    assert out.count("tight") == 2 and "NOT TIGHT" not in out


def test_bounds_csv(capsys):
    assert main(["--format", "csv", "bounds", "wUC", "10", "4"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[1] == "wUC,10,4,destructive,16,"
    assert lines[2] == "wUC,10,4,constructive,-12,"


def test_experiment(tmp_path):
    out = tmp_path / "exp.csv"
    args = ["--out", str(out), "experiment", "--models", "uniform", "--m", "3", "--n", "3", "--count", "2"]
    assert main(args) == 0
    assert out.read_text().startswith("# marigold-experiment/1 complete\n")
    assert (tmp_path / "exp.plot.csv").exists()


def test_experiment_time_limit(tmp_path):
    out = tmp_path / "exp.csv"
    args = ["--out", str(out), "experiment", "--models", "uniform", "--m", "3", "--n", "3",
            "--count", "2", "--max-seconds", "0"]
    assert main(args) == EXIT_SCALE
    assert out.read_text().startswith("# marigold-experiment/1 partial\n")


def test_props(tmp_path):
    out = tmp_path / "props.csv"
    assert main(["--out", str(out), "props", "--properties", "monotonicity",
                 "--solutions", "BO", "--trials", "3"]) == 0
    lines = out.read_text().splitlines()
    assert lines[0].startswith("property,solution,trials")
    assert lines[1].startswith("monotonicity,BO,3,")


def test_config_override(tmp_path, t_ex_file):
    config = tmp_path / "config.json"
    config.write_text('{"guards": {"oracle_max_m": 3}}')
    assert main(["--config", str(config), "oracle", t_ex_file, "BO", "a"]) == EXIT_SCALE


def test_configured_seed_matches_explicit_seed(tmp_path, capsys):
    config = tmp_path / "config.json"
    config.write_text('{"generators": {"seed": 3}}')
    first, second = tmp_path / "flag", tmp_path / "config"
    assert main(["--seed", "3", "--out", str(first), "generate", "uniform", "4", "5"]) == 0
    assert main(["--config", str(config), "--out", str(second), "generate", "uniform", "4", "5"]) == 0
    capsys.readouterr()
    name = "uniform_m4_n5_000.txt"
    assert (first / name).read_text() == (second / name).read_text()
    assert "seed=3 index=0" in (second / name).read_text()


def test_props_search_stops_at_first_counterexample(tmp_path):
    out = tmp_path / "search.csv"
    assert main(["--seed", "3", "--out", str(out), "props", "--search", "--properties",
                 "degree-consistency:strict", "--solutions", "SC", "--trials", "500"]) == 0
    row = pd.read_csv(out).iloc[0]
    assert row["violations"] >= 1
    assert row["trials"] == row["first_trial"] + 1
