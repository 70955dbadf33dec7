import pytest

from alontarsi.graphs import make_complete, make_complete_bipartite, make_cycle, make_torus


@pytest.fixture(scope="session")
def small_graphs():
    return {
        "C3": make_cycle(3),
        "C4": make_cycle(4),
        "C5": make_cycle(5),
        "K4": make_complete(4),
        "K23": make_complete_bipartite(2, 3),
    }


@pytest.fixture(scope="session")
def t33():
    return make_torus((3, 3))


@pytest.fixture(scope="session")
def t34():
    return make_torus((3, 4))
