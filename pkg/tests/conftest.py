"""Shared fixtures: the worked example tournament, seeded factories, config reset."""

import pytest
from hypothesis import HealthCheck, settings

from marigold.core import WeightedTournament
from marigold.generators import generate, tournament_rng
from marigold.utils.config import load_defaults, set_config

# w(a,b)=9, w(a,c)=8, w(a,d)=4, w(b,c)=8, w(b,d)=3, w(c,d)=7 with n = 10
T_EX_WEIGHTS = {(0, 1): 9, (0, 2): 8, (0, 3): 4, (1, 2): 8, (1, 3): 3, (2, 3): 7}

settings.register_profile("marigold", deadline=None,
                          suppress_health_check=[HealthCheck.function_scoped_fixture, HealthCheck.too_slow])
settings.load_profile("marigold")

T_EX_TEXT = """\
# worked example, n = 10
4 10
 0  9  8  4
 1  0  8  3
 2  2  0  7
 6  7  3  0
"""


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False,
                     help="also run the long acceptance sweeps")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture(autouse=True)
def default_config():
    set_config(load_defaults())
    yield
    set_config(load_defaults())


@pytest.fixture
def t_ex():
    return WeightedTournament.from_pairs(4, 10, T_EX_WEIGHTS)


@pytest.fixture
def t_ex_file(tmp_path):
    path = tmp_path / "t_ex.txt"
    path.write_text(T_EX_TEXT)
    return str(path)


@pytest.fixture
def random_tournaments():
    """factory(count, m, n, seed=0, model="uniform") -> list of seeded tournaments."""
    def factory(count, m, n, seed=0, model="uniform"):
        return [generate(model, m, n, tournament_rng(seed, "fixture", model, m, n, i))
                for i in range(count)]
    return factory
