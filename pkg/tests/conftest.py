import pytest

from covers.graph_core import from_edge_list
from covers.theorems import enumerate_connected

# triangle 0-1-2 with one pendant vertex on each corner
TRIANGLE_WITH_PENDANTS = (6, [(0, 1), (0, 2), (1, 2), (2, 5), (1, 3), (0, 4)])


@pytest.fixture(scope="session")
def corpus5():
    return enumerate_connected(5)


@pytest.fixture(scope="session")
def corpus6():
    return enumerate_connected(6)


@pytest.fixture(scope="session")
def triangle_with_pendants():
    return from_edge_list(*TRIANGLE_WITH_PENDANTS)
