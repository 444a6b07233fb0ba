"""Closed forms and fast recurrences for paths, trees, complete graphs and
bundles of parallel paths."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import comb, factorial, prod
from typing import Sequence

from .errors import DomainError, NonUniformProbabilities, NotATree, UnreachableTarget
from .multigraph import MultiGraph, Scalar, Vertex, distance, is_tree, to_scalar


@dataclass(frozen=True)
class ParallelPathSpec:
    """Lengths of the internally disjoint s-t paths of an H-graph."""

    lengths: tuple[int, ...]

    def __post_init__(self):
        lengths = tuple(int(m) for m in self.lengths)
        if not lengths or any(m < 1 for m in lengths):
            raise ValueError("need at least one path, each of length >= 1")
        object.__setattr__(self, "lengths", lengths)


def kn_expected(n: int, q, i: int = 1) -> Scalar:
    """Expected time for K_n to reach ``t`` from ``i`` labelled vertices.

    Uses the cardinality-indexed recurrence: on the complete graph the
    transition probability between labelled sets depends only on their
    sizes, so ``n - 1`` unknowns replace the ``2^(n-2)`` subset states.
    Exact when ``q`` is a Fraction.
    """
    if isinstance(q, str):
        q = to_scalar(q)
    if n < 2:
        raise DomainError("K_n needs n >= 2")
    if not 0 < q < 1:
        raise DomainError("q must lie in (0, 1)")
    if not 1 <= i <= n - 1:
        raise DomainError(f"i must lie in [1, {n - 1}]")
    T = {}
    for k in range(n - 1, i - 1, -1):
        acc = q**0
        for j in range(k + 1, n):
            acc += comb(n - 1 - k, j - k) * q ** (k * (n - j)) * (1 - q**k) ** (j - k) * T[j]
        T[k] = acc / (1 - q ** (k * (n - k)))
    return T[i]


def harmonic(n: int) -> Fraction:
    return sum((Fraction(1, k) for k in range(1, n + 1)), Fraction(0))


def kn_resistance(n: int) -> Fraction:
    """Spreading resistance of K_n between two vertices: ``H_(n-1) / (n-1)``."""
    if n < 2:
        raise DomainError("K_n needs n >= 2")
    return harmonic(n - 1) / (n - 1)


def parallel_paths_resistance(spec: ParallelPathSpec | Sequence[int]) -> Fraction:
    """Spreading resistance of ``len(lengths)`` parallel s-t paths.

    Sum over ``j`` of ``multinomial(j; i_1..i_n) / n^(j+1)`` restricted to
    ``i_k < m_k``; the restriction leaves finitely many terms.
    """
    if not isinstance(spec, ParallelPathSpec):
        spec = ParallelPathSpec(tuple(spec))
    n = len(spec.lengths)
    total = Fraction(0)
    for idx in product(*(range(m) for m in spec.lengths)):
        j = sum(idx)
        multinomial = factorial(j) // prod(factorial(i) for i in idx)
        total += Fraction(multinomial, n ** (j + 1))
    return total


def tree_expected(g: MultiGraph, s: Vertex, t: Vertex, p=None) -> Scalar:
    """``d(s, t) / p`` on a tree; ``p`` defaults to the graph's common probability."""
    if not is_tree(g):
        raise NotATree("graph is not a tree")
    if p is None:
        if g.uniform_p is None:
            raise NonUniformProbabilities("tree edges carry different probabilities")
        p = g.uniform_p
    p = to_scalar(p, g.mode)
    d = distance(g, s, t)
    if d is None:
        raise UnreachableTarget("no s-t path")
    return d / p
