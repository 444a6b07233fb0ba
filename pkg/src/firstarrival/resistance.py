"""Spreading resistance and the exponential-model expectation.

Both quantities satisfy the same edge-counting recursion over labelled sets,
differing only in the per-step constant (1 for the resistance, ``1/p`` for
the exponential model), so one solver serves both.  Edge multiplicities
drive the recursion, which is why graphs must carry a single probability.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import NonUniformProbabilities, StateSpaceExceeded, UnreachableTarget
from .exact import DEFAULT_MAX_STATES, build_state_space, expected_arrival
from .multigraph import MultiGraph, Scalar, Vertex, component, iter_bits, to_scalar


def _source(g: MultiGraph, a0) -> int:
    return g.vset(a0) if isinstance(a0, str) else a0


def _edge_count_recursion(g: MultiGraph, a0: int, t: int, unit, max_states: int):
    if g.m and g.uniform_p is None:
        raise NonUniformProbabilities("the recursion requires identical edge probabilities")
    tmask = 1 << t
    if a0 & tmask:
        return unit * 0
    if not any(component(g, s) & tmask for s in iter_bits(a0)):
        raise UnreachableTarget(f"{g.vertices[t]!r} is not reachable from the source")

    memo: dict[int, object] = {}

    # Iterative post-order DFS over labelled sets; depth is at most |V|.
    stack = [a0]
    while stack:
        a = stack[-1]
        if a in memo:
            stack.pop()
            continue
        counts: dict[int, int] = {}
        for v in iter_bits(a):
            for w, _, _ in g.incident(v):
                if not a >> w & 1:
                    counts[w] = counts.get(w, 0) + 1
        pending = [a | 1 << c for c in counts if c != t and (a | 1 << c) not in memo]
        if pending:
            stack.extend(pending)
            if len(memo) + len(stack) > max_states:
                raise StateSpaceExceeded(f"more than {max_states} states")
            continue
        stack.pop()
        total = sum(counts.values())
        acc = unit
        for c, k in counts.items():
            if c != t:
                acc += k * memo[a | 1 << c]
        memo[a] = acc / total
    return memo[a0]


def spreading_resistance(
    g: MultiGraph, a0: int | Vertex, t: Vertex, max_states: int = DEFAULT_MAX_STATES
) -> Fraction:
    """Exact ``A``-``t`` spreading resistance (a rational number)."""
    return _edge_count_recursion(g, _source(g, a0), g.index(t), Fraction(1), max_states)


def exponential_expectation(
    g: MultiGraph, a0: int | Vertex, t: Vertex, p, max_states: int = DEFAULT_MAX_STATES
) -> Scalar:
    """Expected shortest ``A``-``t`` path length with Exp(``p``) edge weights.

    Computed with the same recursion as the resistance, using ``1/p`` per
    step; exact whenever ``p`` is rational.
    """
    p = to_scalar(p, g.mode)
    if not 0 < p <= 1:
        raise ValueError("intensity must lie in (0, 1]")
    return _edge_count_recursion(g, _source(g, a0), g.index(t), 1 / p, max_states)


def resistance_limit_check(g: MultiGraph, s: Vertex, t: Vertex, epsilon) -> tuple[Scalar, Fraction]:
    """``((1-q) T_st, rho_st)`` with ``q = 1 - epsilon``.

    A diagnostic for the limit characterisation of the resistance: the first
    component tends to the second as ``epsilon`` shrinks.
    """
    eps = to_scalar(epsilon, g.mode)
    if not 0 < eps < 1:
        raise ValueError("epsilon must lie in (0, 1)")
    h = g.with_probability(eps)
    T = expected_arrival(build_state_space(h, h.vset(s), t)).value
    return eps * T, spreading_resistance(h, h.vset(s), t)
