"""Shared fixtures and the --runslow switch"""

import numpy as np
import pytest

from webgraph import DirectedGraph, GraphModelConfig, generate_graph


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False,
                     help="run the long ensemble and evolution tests")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def two_cycle():
    """0 -> 1 -> 0"""
    return DirectedGraph(2, frozenset({(0, 1), (1, 0)}))


@pytest.fixture
def dangling_pair():
    """0 -> 1 with node 1 dangling"""
    return DirectedGraph(2, frozenset({(0, 1)}))


@pytest.fixture
def dangling_pagerank():
    """PageRank of the dangling pair at alpha = 0.85"""
    return np.array([0.5 / 1.425, 0.925 / 1.425])


@pytest.fixture
def pa_graph():
    return generate_graph(GraphModelConfig(model='preferential_attachment', n=32, m=2, seed=11))


@pytest.fixture
def mixed_graph():
    return generate_graph(GraphModelConfig(model='mixed', n=12, m=2, seed=5))


@pytest.fixture
def write_graph(tmp_path):
    """Write a graph to an edge-list file and return its path"""
    from webgraph import write_edgelist

    def _write(g, name="g.edges"):
        path = tmp_path / name
        write_edgelist(g, path)
        return str(path)

    return _write
