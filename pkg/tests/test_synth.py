import statistics

import pytest

from _oracles import count_paths, layered_analytic_mean, layered_sigma
from flowfilter.graph import serialize_edge_list, topological_order
from flowfilter.path_stats import compute_stats
from flowfilter.placement import eligible_nodes
from flowfilter.propagation import objective_f
from flowfilter.synth import LayeredConfig, layered_graph, random_ctree, random_dag


# --- layered generator ---------------------------------------------------------


def test_layered_node_count_and_source():
    g = layered_graph(LayeredConfig(4, 10, 1.0, 4.0, 3))
    assert g.n == 41
    assert {g.labels[s] for s in g.sources} == {"s"}


@pytest.mark.parametrize("seed", range(5))
def test_layered_always_acyclic(seed):
    g = layered_graph(LayeredConfig(4, 10, 2.0, 3.0, seed))
    topological_order(g)


def test_layered_reproducible_from_seed():
    cfg = LayeredConfig(4, 10, 1.0, 4.0, 9)
    a, b = layered_graph(cfg), layered_graph(cfg)
    assert serialize_edge_list(a) == serialize_edge_list(b)
    c = layered_graph(LayeredConfig(4, 10, 1.0, 4.0, 10))
    assert serialize_edge_list(a) != serialize_edge_list(c)


def test_layered_degenerate_two_levels_one_node_each():
    # p = 1/1**gap = 1 everywhere: the realized structure is pinned by the
    # level assignment alone
    g = layered_graph(LayeredConfig(2, 1, 1.0, 1.0, 0))
    assert g.n == 3  # 2 nodes + source
    s = g.index("s")
    level0 = set(g.out_adj[s])
    level1 = {v for v in range(g.n) if v != s and v not in level0}
    assert g.m == len(level0) + len(level0) * len(level1)


def test_layered_config_validation():
    with pytest.raises(ValueError):
        LayeredConfig(1, 10, 1.0, 4.0, 0)
    with pytest.raises(ValueError):
        LayeredConfig(5, 0, 1.0, 4.0, 0)
    with pytest.raises(ValueError):
        LayeredConfig(5, 10, 0.0, 4.0, 0)


def test_layered_small_config_calibration():
    # cheap version of the full calibration: 40 seeds on a 3x5 config
    cfg = LayeredConfig(3, 5, 1.0, 2.0, 0)
    counts = [
        layered_graph(LayeredConfig(3, 5, 1.0, 2.0, seed)).m for seed in range(40)
    ]
    mean = statistics.fmean(counts)
    mu = layered_analytic_mean(cfg)
    sigma = layered_sigma(cfg, node_count_noise=False, draws=2000)
    assert abs(mean - mu) <= 3 * sigma / 40**0.5


# --- random DAGs ----------------------------------------------------------------


def test_random_dag_no_edges_is_star():
    g = random_dag(5, 0.0, 4)
    assert len(g.sources) == 1
    src = next(iter(g.sources))
    assert set(g.out_adj[src]) == {v for v in range(g.n) if v != src}
    assert objective_f(g, eligible_nodes(g)) == 0  # nothing to remove


def test_random_dag_complete_path_counts():
    g = random_dag(5, 1.0, 123)
    stats = compute_stats(g, ())
    src = next(iter(g.sources))
    assert max(stats.prefix) == 2 ** (5 - 2)
    for v in range(g.n):
        if v != src:
            assert stats.prefix[v] == count_paths(g, src, v)


@pytest.mark.parametrize("seed", range(6))
def test_random_dag_acyclic_single_source(seed):
    g = random_dag(9, 0.5, seed)
    topological_order(g)
    assert len(g.sources) == 1


def test_random_dag_reproducible():
    assert serialize_edge_list(random_dag(8, 0.4, 7)) == serialize_edge_list(
        random_dag(8, 0.4, 7)
    )


def test_random_dag_validation():
    with pytest.raises(ValueError):
        random_dag(0, 0.5, 1)
    with pytest.raises(ValueError):
        random_dag(5, 1.5, 1)


# --- random c-trees --------------------------------------------------------------


def test_random_ctree_single_node():
    t = random_ctree(1, 0.5, 0)
    g = t.graph
    assert g.n == 2  # source + the node
    assert g.m == 1


def test_random_ctree_no_extra_source_edges_means_no_redundancy():
    t = random_ctree(10, 0.0, 3)
    g = t.graph
    assert all(g.in_degree(v) == 1 for v in range(g.n) if v not in g.sources)
    assert objective_f(g, eligible_nodes(g)) == 0


def test_random_ctree_reproducible():
    a = random_ctree(9, 0.5, 21)
    b = random_ctree(9, 0.5, 21)
    assert a.graph.edges == b.graph.edges


def test_random_ctree_certified():
    # construction went through the certifier; spot-check the annotations
    t = random_ctree(12, 0.6, 5)
    g = t.graph
    for v, parent in enumerate(t.parent):
        if parent is not None:
            assert v in g.out_adj[parent]
    for r in t.roots:
        assert t.has_source_edge[r]
