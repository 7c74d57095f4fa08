import numpy as np
import pytest

import tricount as tc


def graph_from_pairs(pairs, n=None):
    return tc.build_graph(tc.normalize(tc.RawGraph.from_pairs(pairs, n=n)))


def er_graph(n, p, seed):
    """Erdos-Renyi test graph: each pair kept with probability p."""
    rng = np.random.default_rng(seed)
    iu, iv = np.triu_indices(n, 1)
    mask = rng.random(len(iu)) < p
    return graph_from_pairs(list(zip(iu[mask], iv[mask])))


def pa_graph(n, d, seed):
    return tc.build_graph(tc.normalize(tc.generate_pa(tc.PaParams(n=n, d=d, seed=seed))))


def complete_graph(n):
    return graph_from_pairs([(a, b) for a in range(n) for b in range(a + 1, n)])


@pytest.fixture
def k3():
    return complete_graph(3)


@pytest.fixture
def k4():
    return complete_graph(4)
