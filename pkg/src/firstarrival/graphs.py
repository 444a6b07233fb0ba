"""Constructors for the graph families used throughout the package.

Terminal vertices are always named ``s`` and ``t`` so callers can look them
up with ``g.index("s")``.
"""

from __future__ import annotations

import random
from typing import Sequence

from .multigraph import RATIONAL, MultiGraph


def path_graph(n: int, p=None, mode: str = RATIONAL) -> MultiGraph:
    """Path with ``n`` edges from ``s`` to ``t``; ``n = 0`` is the single vertex ``s``."""
    if n < 0:
        raise ValueError("path length must be nonnegative")
    if n == 0:
        return MultiGraph(("s",), (), mode)
    names = ["s"] + [f"v{i}" for i in range(1, n)] + ["t"]
    return MultiGraph.from_edges(zip(names, names[1:]), p=_p(p), mode=mode)


def cycle_graph(n: int, p=None, mode: str = RATIONAL) -> MultiGraph:
    """Cycle on ``n >= 3`` vertices with ``t`` opposite ``s`` (at hop distance n // 2)."""
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    names = [f"v{i}" for i in range(n)]
    names[0], names[n // 2] = "s", "t"
    ring = [(names[i], names[(i + 1) % n]) for i in range(n)]
    return MultiGraph.from_edges(ring, p=_p(p), mode=mode, vertices=names)


def complete_graph(n: int, p=None, mode: str = RATIONAL) -> MultiGraph:
    """K_n with vertices ``s``, ``t``, ``v2``, ..."""
    if n < 2:
        raise ValueError("K_n needs n >= 2")
    names = ["s", "t"] + [f"v{i}" for i in range(2, n)]
    pairs = [(names[i], names[j]) for i in range(n) for j in range(i + 1, n)]
    return MultiGraph.from_edges(pairs, p=_p(p), mode=mode, vertices=names)


def parallel_paths_graph(lengths: Sequence[int], p=None, mode: str = RATIONAL) -> MultiGraph:
    """``len(lengths)`` internally disjoint s-t paths; a length-1 path is a direct edge."""
    if not lengths or any(m < 1 for m in lengths):
        raise ValueError("need at least one path, each of length >= 1")
    edges = []
    for k, m in enumerate(lengths):
        names = ["s"] + [f"b{k}_{i}" for i in range(1, m)] + ["t"]
        edges += list(zip(names, names[1:]))
    return MultiGraph.from_edges(edges, p=_p(p), mode=mode, vertices=["s", "t"])


def star_graph(leaves: int, p=None, mode: str = RATIONAL) -> MultiGraph:
    """Star with center ``s``; the first leaf is ``t``."""
    names = ["t"] + [f"l{i}" for i in range(1, leaves)]
    return MultiGraph.from_edges([("s", x) for x in names], p=_p(p), mode=mode)


def random_multigraph(
    n: int,
    m: int,
    rng: random.Random,
    p=None,
    mode: str = RATIONAL,
    connected: bool = True,
) -> MultiGraph:
    """Random loopless multigraph on ``n`` vertices with ``m`` edges.

    With ``connected`` a random spanning tree is laid down first, so
    ``m >= n - 1`` is required.  Remaining edges pick endpoint pairs
    uniformly, so parallel edges occur naturally.
    """
    names = ["s", "t"] + [f"v{i}" for i in range(2, n)]
    edges = []
    if connected:
        if m < n - 1:
            raise ValueError("a connected graph needs m >= n - 1")
        order = list(range(n))
        rng.shuffle(order)
        for i in range(1, n):
            edges.append((order[i], order[rng.randrange(i)]))
    while len(edges) < m:
        u, v = rng.sample(range(n), 2)
        edges.append((u, v))
    named = [(names[u], names[v]) for u, v in edges]
    return MultiGraph.from_edges(named, p=_p(p), mode=mode, vertices=names)


def glue_series(g1: MultiGraph, g2: MultiGraph) -> MultiGraph:
    """Identify ``t`` of ``g1`` with ``s`` of ``g2`` (the articulation ``a``).

    The result has terminals ``s`` (from ``g1``) and ``t`` (from ``g2``).
    """
    return _glue(g1, g2, {"t": "a"}, {"s": "a"})


def glue_parallel(g1: MultiGraph, g2: MultiGraph) -> MultiGraph:
    """Union of two graphs sharing exactly the terminals ``s`` and ``t``."""
    return _glue(g1, g2, {}, {})


def _glue(g1, g2, ren1, ren2) -> MultiGraph:
    if g1.mode != g2.mode:
        raise ValueError("cannot glue graphs of different modes")

    def name(g, i, ren, tag):
        v = g.vertices[i]
        if v in ren:
            return ren[v]
        if v in ("s", "t"):
            return v
        return f"{tag}.{v}"

    edges = [(name(g1, u, ren1, "L"), name(g1, v, ren1, "L"), p) for u, v, p in g1.edges]
    edges += [(name(g2, u, ren2, "R"), name(g2, v, ren2, "R"), p) for u, v, p in g2.edges]
    verts = ["s", "t"]
    verts += [name(g1, i, ren1, "L") for i in range(g1.n)]
    verts += [name(g2, i, ren2, "R") for i in range(g2.n)]
    verts = list(dict.fromkeys(verts))
    return MultiGraph.from_edges(edges, mode=g1.mode, vertices=verts)


def _p(p):
    return "1/2" if p is None else p
