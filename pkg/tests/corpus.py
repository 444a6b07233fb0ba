"""Graph corpus shared by the property and acceptance tests."""

import random
from fractions import Fraction

from firstarrival import MultiGraph
from firstarrival.graphs import (
    complete_graph,
    cycle_graph,
    parallel_paths_graph,
    path_graph,
    random_multigraph,
)

CORPUS_SEED = 20240611


def random_corpus(count=50, max_vertices=7, p="1/3", seed=CORPUS_SEED):
    """``count`` connected random multigraphs with 2..max_vertices vertices."""
    rng = random.Random(seed)
    out = []
    for k in range(count):
        n = rng.randint(2, max_vertices)
        m = rng.randint(n - 1, min(n + 5, 12))
        g = random_multigraph(n, m, rng, p=p)
        out.append((f"rand{k}(n={n},m={m})", g))
    return out


def family_corpus(p="1/3"):
    out = [(f"K{n}", complete_graph(n, p=p)) for n in range(2, 7)]
    out += [(f"C{n}", cycle_graph(n, p=p)) for n in range(3, 8)]
    for lengths in [(1, 1), (1, 2), (2, 2), (2, 3), (1, 1, 2), (1, 2, 3), (3, 3)]:
        out.append((f"H{lengths}", parallel_paths_graph(lengths, p=p)))
    out += [(f"P{n}", path_graph(n, p=p)) for n in (1, 3)]
    return out


def full_corpus(p="1/3"):
    return random_corpus(p=p) + family_corpus(p=p)


def per_edge_corpus(count=30, seed=7):
    """Random multigraphs whose edges carry different probabilities."""
    rng = random.Random(seed)
    choices = [Fraction(1, 4), Fraction(1, 3), Fraction(1, 2), Fraction(2, 3), Fraction(1)]
    out = []
    for k in range(count):
        n = rng.randint(2, 6)
        m = rng.randint(n - 1, n + 4)
        g = random_multigraph(n, m, rng, p="1/2")
        edges = [(g.vertices[u], g.vertices[v], rng.choice(choices)) for u, v, _ in g.edges]
        out.append((f"edge{k}", MultiGraph.from_edges(edges, vertices=g.vertices)))
    return out
