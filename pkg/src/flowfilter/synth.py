"""Random graph generators: layered benchmark graphs, DAGs, and c-trees.

All generators are pure functions of their config and seed.
"""

import random
from dataclasses import dataclass

from .graph import CGraph, add_super_source, build_graph
from .placement import CTree, as_ctree


@dataclass(frozen=True)
class LayeredConfig:
    """Config of the layered benchmark generator.

    Nodes are spread uniformly over ``levels`` levels (expected
    ``expected_width`` nodes per level); an edge runs from a level-i node
    to a level-j node (j > i) with probability min(1, x / y**(j - i)), so
    nearby levels connect densely and distant ones rarely.
    """

    levels: int = 10
    expected_width: int = 100
    x: float = 1.0
    y: float = 4.0
    seed: int = 0

    def __post_init__(self):
        if self.levels < 2:
            raise ValueError("levels must be >= 2")
        if self.expected_width < 1:
            raise ValueError("expected_width must be >= 1")
        if self.x <= 0 or self.y <= 0:
            raise ValueError("x and y must be positive")


def layered_edge_probability(cfg: LayeredConfig, gap: int) -> float:
    return min(1.0, cfg.x / cfg.y**gap)


def layered_graph(cfg: LayeredConfig) -> CGraph:
    """Generate a layered graph plus a source node feeding level 1.

    The node count is exactly levels * expected_width (+1 for the source);
    level membership is random, edges are independent draws per
    cross-level pair.
    """
    rng = random.Random(cfg.seed)
    n = cfg.levels * cfg.expected_width
    level = [rng.randrange(cfg.levels) for _ in range(n)]  # 0-based levels

    names = [f"n{i}" for i in range(n)]
    edges: list[tuple[str, str]] = []
    for v in range(n):
        for u in range(n):
            gap = level[u] - level[v]
            if gap <= 0:
                continue
            if rng.random() < layered_edge_probability(cfg, gap):
                edges.append((names[v], names[u]))
    source_edges = [("s", names[v]) for v in range(n) if level[v] == 0]
    return build_graph(source_edges + edges, nodes=["s"] + names, sources=["s"])


def random_dag(n: int, edge_prob: float, seed: int) -> CGraph:
    """Random DAG on n nodes: forward edges over a random permutation.

    A super source is attached to every in-degree-zero node, so the result
    always has a single source and every node is reachable from it.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if not 0.0 <= edge_prob <= 1.0:
        raise ValueError("edge_prob must be in [0, 1]")
    rng = random.Random(seed)
    perm = list(range(n))
    rng.shuffle(perm)
    names = [f"v{i}" for i in range(n)]
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < edge_prob:
                edges.append((names[perm[i]], names[perm[j]]))
    g = build_graph(edges, nodes=names)
    return add_super_source(g)


def random_ctree(n: int, source_edge_prob: float, seed: int) -> CTree:
    """Random communication tree: a recursive tree plus random source edges.

    Node i attaches below a uniformly random earlier node; each node
    independently gains a direct source edge with the given probability
    (the tree root always has one, keeping the graph reachable).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = random.Random(seed)
    names = [f"t{i}" for i in range(n)]
    edges = [("s", names[0])]
    for i in range(1, n):
        parent = rng.randrange(i)
        edges.append((names[parent], names[i]))
    for i in range(1, n):
        if rng.random() < source_edge_prob:
            edges.append(("s", names[i]))
    g = build_graph(edges, nodes=["s"] + names, sources=["s"])
    return as_ctree(g)
