"""Loopless undirected multigraphs with per-edge infection probabilities.

Vertex subsets are plain ``int`` bitmasks: bit ``i`` is set iff the vertex
with index ``i`` belongs to the set.  Indices follow the order in which
vertices were first mentioned, so bitmask states are reproducible.

Numbers ("scalars") are either :class:`fractions.Fraction` (rational mode)
or ``float`` (float mode).  The mode is fixed when a graph is built and all
downstream computations on that graph stay in it.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence, Union

from .errors import EmptyMergeSet, GraphFormatError, UnknownVertex

Scalar = Union[Fraction, float]
Vertex = Union[int, str]

RATIONAL = "rational"
FLOAT = "float"
MODES = (RATIONAL, FLOAT)

MAX_VERTICES = 30


def to_scalar(value, mode: str = RATIONAL) -> Scalar:
    """Convert ``value`` to a scalar of the given mode.

    Strings may be fractions (``"1/3"``) or decimals (``"0.25"``).  Floats
    are read through their shortest decimal repr in rational mode, so
    ``0.1`` becomes ``1/10`` rather than the nearest binary fraction.
    """
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    if isinstance(value, str):
        text = value.strip()
        try:
            exact = Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise GraphFormatError(f"not a number: {value!r}") from exc
        return exact if mode == RATIONAL else float(exact)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise GraphFormatError(f"not a finite number: {value!r}")
        return Fraction(repr(value)) if mode == RATIONAL else value
    if isinstance(value, (int, Fraction)):
        return Fraction(value) if mode == RATIONAL else float(value)
    raise TypeError(f"cannot convert {type(value).__name__} to a scalar")


def mode_of(x: Scalar) -> str:
    return FLOAT if isinstance(x, float) else RATIONAL


def format_scalar(x: Scalar) -> str | float:
    """Rationals as ``"num/den"`` strings, floats unchanged."""
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, int):
        return f"{x}/1"
    return float(x)


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def iter_bits(mask: int):
    """Yield the indices of set bits in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class MultiGraph:
    """Immutable loopless multigraph.

    ``edges`` holds ``(u, v, p)`` triples with vertex indices ``u != v`` and
    infection probability ``0 < p <= 1``.  Parallel edges are allowed.
    """

    vertices: tuple[str, ...]
    edges: tuple[tuple[int, int, Scalar], ...]
    mode: str = RATIONAL
    _index: dict = field(init=False, repr=False, compare=False)
    _adj: tuple = field(init=False, repr=False, compare=False)
    _nbr_mask: tuple = field(init=False, repr=False, compare=False)
    uniform_p: Scalar | None = field(init=False, compare=False)

    def __post_init__(self):
        n = len(self.vertices)
        if n > MAX_VERTICES:
            raise GraphFormatError(f"{n} vertices exceeds the cap of {MAX_VERTICES}")
        if len(set(self.vertices)) != n:
            raise GraphFormatError("duplicate vertex names")
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}")
        adj = [[] for _ in range(n)]
        nbr = [0] * n
        for k, (u, v, p) in enumerate(self.edges):
            if not (0 <= u < n and 0 <= v < n):
                raise GraphFormatError(f"edge {k} has an endpoint outside the vertex range")
            if u == v:
                raise GraphFormatError(f"loop at vertex {self.vertices[u]!r}")
            if mode_of(p) != self.mode:
                raise GraphFormatError(f"edge {k} probability is not in {self.mode} mode")
            if not 0 < p <= 1:
                raise GraphFormatError(f"edge {k} probability {p} outside (0, 1]")
            adj[u].append((v, p, k))
            adj[v].append((u, p, k))
            nbr[u] |= 1 << v
            nbr[v] |= 1 << u
        probs = {p for _, _, p in self.edges}
        object.__setattr__(self, "_index", {name: i for i, name in enumerate(self.vertices)})
        object.__setattr__(self, "_adj", tuple(tuple(a) for a in adj))
        object.__setattr__(self, "_nbr_mask", tuple(nbr))
        object.__setattr__(self, "uniform_p", probs.pop() if len(probs) == 1 else None)

    @classmethod
    def from_edges(
        cls,
        edges: Iterable[Sequence],
        p=None,
        mode: str = RATIONAL,
        vertices: Iterable[str] = (),
    ) -> "MultiGraph":
        """Build a graph from ``(u, v)`` or ``(u, v, p_e)`` tuples of vertex names.

        ``p`` is the default probability for edges without their own.
        ``vertices`` may pre-declare names (useful for isolated vertices or
        to fix the index order).
        """
        names = [str(v) for v in vertices]
        index = {name: i for i, name in enumerate(names)}
        default = None if p is None else to_scalar(p, mode)
        out = []
        for e in edges:
            if len(e) not in (2, 3):
                raise GraphFormatError(f"bad edge tuple {e!r}")
            ends = []
            for name in map(str, e[:2]):
                if name not in index:
                    index[name] = len(names)
                    names.append(name)
                ends.append(index[name])
            pe = e[2] if len(e) == 3 and e[2] is not None else None
            if pe is None:
                if default is None:
                    raise GraphFormatError(f"edge {e[0]}-{e[1]} has no probability and no default")
                pe = default
            else:
                pe = to_scalar(pe, mode)
            out.append((ends[0], ends[1], pe))
        return cls(tuple(names), tuple(out), mode)

    # -- lookups -----------------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def index(self, v: Vertex) -> int:
        if isinstance(v, str):
            try:
                return self._index[v]
            except KeyError:
                raise UnknownVertex(f"no vertex named {v!r}") from None
        if not 0 <= v < self.n:
            raise IndexError(f"vertex index {v} out of range")
        return v

    def vset(self, vs: Iterable[Vertex] | Vertex) -> int:
        """Bitmask of the given vertex names/indices."""
        if isinstance(vs, (int, str)):
            vs = [vs]
        mask = 0
        for v in vs:
            mask |= 1 << self.index(v)
        return mask

    def names(self, mask: int) -> list[str]:
        return [self.vertices[i] for i in iter_bits(mask)]

    def incident(self, v: int):
        """``(neighbor, p, edge_index)`` for every edge at ``v``."""
        return self._adj[v]

    def neighbors(self, v: int) -> int:
        return self._nbr_mask[v]

    def scalar(self, value) -> Scalar:
        return to_scalar(value, self.mode)

    def with_probability(self, p) -> "MultiGraph":
        """Copy with every edge probability set to ``p``."""
        p = self.scalar(p)
        return MultiGraph(self.vertices, tuple((u, v, p) for u, v, _ in self.edges), self.mode)

    def with_mode(self, mode: str) -> "MultiGraph":
        edges = tuple((u, v, to_scalar(p, mode)) for u, v, p in self.edges)
        return MultiGraph(self.vertices, edges, mode)

    def without_edge(self, k: int) -> "MultiGraph":
        return MultiGraph(self.vertices, self.edges[:k] + self.edges[k + 1 :], self.mode)

    def edge_count(self, a: int, b: int) -> int:
        """Number of edges with one endpoint in ``a`` and the other in ``b``."""
        return len(cut_edges(self, a, b))


# -- structural operations ---------------------------------------------------


def open_neighborhood(g: MultiGraph, a: int) -> int:
    """Vertices outside ``a`` adjacent to some vertex of ``a``."""
    out = 0
    for v in iter_bits(a):
        out |= g.neighbors(v)
    return out & ~a


def cut_edges(g: MultiGraph, a: int, b: int) -> list[int]:
    """Indices of edges joining ``a`` and ``b``; parallel edges listed individually."""
    out = []
    for k, (u, v, _) in enumerate(g.edges):
        bu, bv = 1 << u, 1 << v
        if (a & bu and b & bv) or (a & bv and b & bu):
            out.append(k)
    return out


def merge_vertices(g: MultiGraph, x: int, name: str | None = None) -> MultiGraph:
    """Contract the vertex set ``x`` into a single vertex.

    The merged vertex takes the index position of the lowest member of ``x``
    and is named ``name`` (default: member names joined by ``+``).  Each edge
    from ``x`` to the outside survives as an edge at the merged vertex; edges
    inside ``x`` are dropped.
    """
    if x == 0:
        raise EmptyMergeSet("cannot merge an empty vertex set")
    if x & ~g.full:
        raise IndexError("merge set exceeds the vertex range")
    first = (x & -x).bit_length() - 1
    merged_name = name if name is not None else "+".join(g.names(x))
    remap = {}
    names = []
    for i, vname in enumerate(g.vertices):
        if x >> i & 1:
            if i == first:
                remap[i] = len(names)
                names.append(merged_name)
            else:
                remap[i] = remap[first]
        else:
            remap[i] = len(names)
            names.append(vname)
    edges = []
    for u, v, p in g.edges:
        if x >> u & 1 and x >> v & 1:
            continue
        edges.append((remap[u], remap[v], p))
    return MultiGraph(tuple(names), tuple(edges), g.mode)


def simplify_parallel(g: MultiGraph) -> MultiGraph:
    """Replace every class of parallel edges by one edge with p = 1 - prod(1 - p_i)."""
    stay = {}
    order = []
    for u, v, p in g.edges:
        key = (min(u, v), max(u, v))
        if key not in stay:
            stay[key] = 1 - p
            order.append((u, v, key))
        else:
            stay[key] *= 1 - p
    one = g.scalar(1)
    edges = tuple((u, v, one - stay[key]) for u, v, key in order)
    return MultiGraph(g.vertices, edges, g.mode)


def distance(g: MultiGraph, s: Vertex, t: Vertex) -> int | None:
    """Hop distance from ``s`` to ``t``; ``None`` when ``t`` is unreachable."""
    s, t = g.index(s), g.index(t)
    if s == t:
        return 0
    dist = {s: 0}
    queue = deque([s])
    while queue:
        u = queue.popleft()
        for w in iter_bits(g.neighbors(u)):
            if w not in dist:
                dist[w] = dist[u] + 1
                if w == t:
                    return dist[w]
                queue.append(w)
    return None


def component(g: MultiGraph, s: Vertex) -> int:
    """Bitmask of the connected component containing ``s``."""
    seen = 1 << g.index(s)
    frontier = seen
    while frontier:
        reach = open_neighborhood(g, frontier) & ~seen
        seen |= reach
        frontier = reach
    return seen


def is_tree(g: MultiGraph) -> bool:
    return g.n > 0 and g.m == g.n - 1 and component(g, 0) == g.full


# -- text format ---------------------------------------------------------------


def parse_graph(text: str, mode: str = RATIONAL, default_p=None) -> MultiGraph:
    """Parse the line-oriented graph format.

    ::

        # comment
        p 1/2
        edge s a
        edge a t 0.25

    A ``p`` line sets the default probability for edges without their own.
    ``default_p`` is used when neither is present.
    """
    default = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        if tok[0] == "p":
            if len(tok) != 2:
                raise GraphFormatError(f"line {lineno}: expected 'p <probability>'")
            if default is not None:
                raise GraphFormatError(f"line {lineno}: duplicate default probability")
            default = tok[1]
        elif tok[0] == "edge":
            if len(tok) not in (3, 4):
                raise GraphFormatError(f"line {lineno}: expected 'edge <u> <v> [<p>]'")
            if tok[1] == tok[2]:
                raise GraphFormatError(f"line {lineno}: loop at {tok[1]!r}")
            edges.append((tok[1], tok[2], tok[3] if len(tok) == 4 else None))
        else:
            raise GraphFormatError(f"line {lineno}: unknown directive {tok[0]!r}")
    if default is None:
        default = default_p
    try:
        return MultiGraph.from_edges(edges, p=default, mode=mode)
    except GraphFormatError as exc:
        raise GraphFormatError(str(exc)) from None


def load_graph(path, mode: str = RATIONAL, default_p=None) -> MultiGraph:
    return parse_graph(Path(path).read_text(encoding="utf-8"), mode=mode, default_p=default_p)


def format_graph(g: MultiGraph) -> str:
    lines = []
    if g.uniform_p is not None:
        lines.append(f"p {_prob_text(g.uniform_p)}")
        lines += [f"edge {g.vertices[u]} {g.vertices[v]}" for u, v, _ in g.edges]
    else:
        lines += [f"edge {g.vertices[u]} {g.vertices[v]} {_prob_text(p)}" for u, v, p in g.edges]
    return "\n".join(lines) + "\n"


def _prob_text(p: Scalar) -> str:
    return str(p) if isinstance(p, Fraction) else repr(p)
