import pytest

from gccm import Graph, gen_named


@pytest.fixture
def p5():
    return gen_named("path", 5)


@pytest.fixture
def star5():
    return gen_named("star", 5)


@pytest.fixture
def k3():
    return gen_named("complete", 3)


@pytest.fixture
def fig1a():
    # 4-path 0-1-2-3 with the triangle 3-4-5 hanging off vertex 3
    return Graph.from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (3, 5), (4, 5)])


@pytest.fixture
def fig1c():
    # 0 - {1,2} - 3 - {4,5}, 4-5, 4-6, 5-7, 6-7
    return Graph.from_edges(8, [(0, 1), (0, 2), (1, 3), (2, 3), (3, 4), (3, 5), (4, 5),
                                (4, 6), (5, 7), (6, 7)])
