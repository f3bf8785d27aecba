import random

import pytest

from _oracles import count_nonempty_paths_from, count_paths
from flowfilter.fixtures import g_diamond, g_fanin, g_degree_trap
from flowfilter.graph import build_graph
from flowfilter.path_stats import (
    AlreadyFilterError,
    compute_prefix,
    compute_stats,
    impact,
    impact_from_stats,
    impact_table,
)
from flowfilter.placement import eligible_nodes
from flowfilter.propagation import objective_f, phi_total, simulate
from flowfilter.synth import random_dag


def test_fanin_prefix_matches_received_counts():
    g = g_fanin()
    stats = compute_stats(g, ())
    got = {g.labels[v]: p for v, p in enumerate(stats.prefix)}
    assert got == {"s": 1, "x": 1, "y": 1, "z1": 1, "z2": 2, "z3": 1, "w": 4}


def test_fanin_suffix_against_path_enumeration():
    g = g_fanin()
    stats = compute_stats(g, ())
    for v in range(g.n):
        assert stats.suffix[v] == count_nonempty_paths_from(g, v), g.labels[v]
    # frozen expectations from the enumeration: x has 4 nonempty paths
    # (x->z1, x->z2, x->z1->w, x->z2->w)
    assert stats.suffix[g.index("x")] == 4
    assert stats.suffix[g.index("z2")] == 1
    assert stats.suffix[g.index("w")] == 0


def test_fanin_prefix_with_filter_reset():
    g = g_fanin()
    stats = compute_stats(g, {g.index("z2")})
    assert stats.prefix[g.index("w")] == 3


def test_compute_prefix_agrees_with_full_stats():
    g = g_degree_trap()
    for filters in [(), {g.index("A")}, {g.index("B"), g.index("u1")}]:
        assert compute_prefix(g, filters) == list(compute_stats(g, filters).prefix)


@pytest.mark.parametrize("seed", range(8))
def test_plist_counts_distinct_paths(seed):
    rng = random.Random(seed)
    g = random_dag(rng.randint(2, 10), rng.uniform(0.2, 0.9), seed + 300)
    stats = compute_stats(g, ())
    for v in range(g.n):
        for x, c in stats.plist[v].items():
            assert c == count_paths(g, x, v)


def test_impact_examples():
    g1, g2 = g_fanin(), g_degree_trap()
    assert impact(g1, (), g1.index("z2")) == 1
    assert impact(g1, (), g1.index("x")) == 0
    assert impact(g2, (), g2.index("A")) == 2


def test_impact_rejects_existing_filter():
    g = g_fanin()
    with pytest.raises(AlreadyFilterError):
        impact(g, {g.index("z2")}, g.index("z2"))


def test_impact_table_fanin_chain_diamond():
    g1 = g_fanin()
    table = impact_table(g1, ())
    assert table[g1.index("z2")] == 1
    assert all(c == 0 for v, c in table.items() if v != g1.index("z2"))

    chain = build_graph([("s", "a"), ("a", "b"), ("b", "c")])
    assert all(c == 0 for c in impact_table(chain, ()).values())

    gd = g_diamond()
    table = impact_table(gd, ())
    assert table[gd.index("c")] == 1
    assert all(c == 0 for v, c in table.items() if v != gd.index("c"))


def test_impact_of_source_and_filters_is_zero():
    g = g_fanin()
    table = impact_table(g, {g.index("z2")})
    assert table[g.index("s")] == 0
    assert table[g.index("z2")] == 0


def test_impact_zero_for_unreachable_node():
    g = build_graph([("s", "b"), ("a", "b"), ("b", "c")], sources=["s"])
    a = g.index("a")
    assert impact(g, (), a) == 0
    assert impact(g, (), a) == objective_f(g, {a}) - objective_f(g, ())


@pytest.mark.parametrize("seed", range(25))
def test_impact_equals_objective_difference(seed):
    # the module's master property, against the simulator
    rng = random.Random(seed)
    g = random_dag(rng.randint(2, 12), rng.uniform(0.1, 0.9), seed + 400)
    elig = eligible_nodes(g)
    for _ in range(3):
        members = frozenset(rng.sample(elig, rng.randint(0, max(0, len(elig) - 1))))
        stats = compute_stats(g, members)
        base = objective_f(g, members)
        for v in elig:
            if v in members:
                continue
            assert impact_from_stats(g, stats, v) == objective_f(g, members | {v}) - base


@pytest.mark.parametrize("seed", range(10))
def test_prefix_sums_match_phi(seed):
    rng = random.Random(seed)
    g = random_dag(rng.randint(2, 10), rng.uniform(0.2, 0.8), seed + 500)
    elig = eligible_nodes(g)
    members = frozenset(rng.sample(elig, rng.randint(0, len(elig))))
    stats = compute_stats(g, members)
    total = sum(stats.prefix[v] for v in range(g.n) if v not in g.sources)
    assert total == phi_total(g, members)
    # and prefix agrees with the simulator node by node
    assert list(stats.prefix[v] for v in elig) == [
        simulate(g, members).received[v] for v in elig
    ]
