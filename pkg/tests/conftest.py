import numpy as np
import pytest

from regmatch.graph import build_graph


def complete_bipartite(a, b):
    return build_graph(a, b, [(u, v) for u in range(a) for v in range(b)])


def random_bipartite(rng, max_side=6, density=0.5):
    """Random bipartite graph: independent edges at the given density."""
    nl = int(rng.integers(1, max_side + 1))
    nr = int(rng.integers(1, max_side + 1))
    mat = rng.random((nl, nr)) < density
    edges = [(int(u), int(v)) for u, v in zip(*np.nonzero(mat))]
    return build_graph(nl, nr, edges)


@pytest.fixture
def k22():
    return complete_bipartite(2, 2)


@pytest.fixture
def k33():
    return complete_bipartite(3, 3)


@pytest.fixture
def k44():
    return complete_bipartite(4, 4)
