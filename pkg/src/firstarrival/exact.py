"""Exact solvers on the labelled-subset Markov chain.

A state is the set of labelled vertices.  From state ``A`` the chain moves
to a superset ``B`` with ``B \\ A`` inside the open neighbourhood of ``A``;
every state containing the target is collapsed into one absorbing state.
Because transitions only ever grow the set, ordering states by popcount
makes the transition matrix triangular and every solver is a single
backward (or forward) sweep.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np
from scipy import sparse

from .errors import (
    DivergentDiagonal,
    NotSuperset,
    StateSpaceExceeded,
    UnreachableTarget,
)
from .multigraph import (
    FLOAT,
    MultiGraph,
    Scalar,
    Vertex,
    distance,
    iter_bits,
    open_neighborhood,
    popcount,
)

DEFAULT_MAX_STATES = 1 << 22
TAIL_TARGET = 1e-9
MAX_AUTO_N = 1 << 16


def _stay_probability(g: MultiGraph, x: int, a: int) -> Scalar:
    """Probability that no edge between ``x`` and the set ``a`` fires in one step."""
    if g.uniform_p is not None:
        k = sum(1 for w, _, _ in g.incident(x) if a >> w & 1)
        return (1 - g.uniform_p) ** k
    stay = g.scalar(1)
    for w, p, _ in g.incident(x):
        if a >> w & 1:
            stay *= 1 - p
    return stay


def transition_probability(g: MultiGraph, a: int, b: int) -> Scalar:
    """One-step probability that the labelled set grows from ``a`` to exactly ``b``."""
    if a & ~b:
        raise NotSuperset("transition requires a to be a subset of b")
    nbr = open_neighborhood(g, a)
    if b & ~(a | nbr):
        return g.scalar(0)
    prob = g.scalar(1)
    for x in iter_bits(nbr):
        stay = _stay_probability(g, x, a)
        prob *= (1 - stay) if b >> x & 1 else stay
    return prob


def successors(g: MultiGraph, a: int, target_mask: int = 0) -> tuple[list[tuple[int, Scalar]], Scalar]:
    """All positive-probability successors of state ``a``.

    Returns ``(moves, absorb)`` where ``moves`` lists ``(b, P(a, b))`` for
    successors not meeting ``target_mask`` and ``absorb`` is the total
    probability of landing in a state that does.
    """
    nbr = open_neighborhood(g, a)
    one = g.scalar(1)
    free = []
    hit_stay = one
    for x in iter_bits(nbr):
        stay = _stay_probability(g, x, a)
        if target_mask >> x & 1:
            hit_stay *= stay
        else:
            free.append((x, stay))
    moves = [(a, hit_stay)]
    for x, stay in free:
        grown = []
        bit = 1 << x
        for b, pr in moves:
            if stay:
                grown.append((b, pr * stay))
            if stay != 1:
                grown.append((b | bit, pr * (1 - stay)))
        moves = grown
    return [(b, pr) for b, pr in moves if pr], one - hit_stay


@dataclass(frozen=True)
class StateSpace:
    """Reachable non-absorbed states, in an order compatible with inclusion.

    ``moves[i]`` lists ``(j, P(i, j))`` for successor states ``j >= i``
    (including the self-loop ``j == i``); ``absorb[i]`` is the probability
    of entering the absorbing state from ``i``.  ``source_index`` is
    ``None`` when the source already contains the target.
    """

    graph: MultiGraph
    source: int
    target: int
    states: tuple[int, ...]
    moves: tuple[tuple[tuple[int, Scalar], ...], ...]
    absorb: tuple[Scalar, ...]
    index: dict = field(repr=False, compare=False)

    @property
    def source_index(self) -> int | None:
        return self.index.get(self.source)

    @property
    def absorbed_at_start(self) -> bool:
        return bool(self.source >> self.target & 1)

    def self_loop(self, i: int) -> Scalar:
        for j, pr in self.moves[i]:
            if j == i:
                return pr
        return self.graph.scalar(0)

    def __len__(self):
        return len(self.states) + 1


def build_state_space(
    g: MultiGraph,
    a0: int | Vertex,
    t: Vertex,
    max_states: int = DEFAULT_MAX_STATES,
) -> StateSpace:
    """Breadth-first closure of ``a0`` under one-step transitions.

    ``a0`` is a vertex bitmask or a single vertex name.  The count checked
    against ``max_states`` includes the absorbing state.
    """
    if isinstance(a0, str):
        a0 = g.vset(a0)
    if a0 == 0:
        raise ValueError("source set must be nonempty")
    if a0 & ~g.full:
        raise IndexError("source set exceeds the vertex range")
    t = g.index(t)
    tmask = 1 << t
    if a0 & tmask:
        return StateSpace(g, a0, t, (), (), (), {})
    if not any(distance(g, s, t) is not None for s in iter_bits(a0)):
        raise UnreachableTarget(f"{g.vertices[t]!r} is not reachable from the source")

    raw = {}
    frontier = [a0]
    seen = {a0}
    while frontier:
        nxt = []
        for a in frontier:
            moves, absorb = successors(g, a, tmask)
            raw[a] = (moves, absorb)
            for b, _ in moves:
                if b not in seen:
                    seen.add(b)
                    if len(seen) + 1 > max_states:
                        raise StateSpaceExceeded(f"more than {max_states} states")
                    nxt.append(b)
        frontier = nxt
    if not any(absorb for _, absorb in raw.values()):
        raise UnreachableTarget(f"{g.vertices[t]!r} is never labelled")

    states = sorted(raw, key=lambda s: (popcount(s), s))
    index = {s: i for i, s in enumerate(states)}
    moves = tuple(tuple((index[b], pr) for b, pr in raw[s][0]) for s in states)
    absorb = tuple(raw[s][1] for s in states)
    return StateSpace(g, a0, t, tuple(states), moves, absorb, index)


class ExpectationResult(NamedTuple):
    value: Scalar
    mode: str


def _check_lower(space: StateSpace, value: Scalar) -> None:
    d = min(
        (d for d in (distance(space.graph, s, space.target) for s in iter_bits(space.source)) if d is not None),
        default=0,
    )
    if value < d - 1e-9 * max(1, d):
        raise ArithmeticError(f"expectation {value} below the distance bound {d}")


def expected_values(space: StateSpace) -> list[Scalar]:
    """Expected absorption time from every state, in state order."""
    g = space.graph
    T = [g.scalar(0)] * len(space.states)
    for i in range(len(space.states) - 1, -1, -1):
        acc = g.scalar(1)
        diag = g.scalar(0)
        for j, pr in space.moves[i]:
            if j == i:
                diag = pr
            else:
                acc += pr * T[j]
        if diag == 1:
            raise UnreachableTarget("a state cannot leave itself")
        T[i] = acc / (1 - diag)
    return T


def expected_arrival(space: StateSpace) -> ExpectationResult:
    """Expected first arrival time at the target from the source."""
    g = space.graph
    if space.absorbed_at_start:
        return ExpectationResult(g.scalar(0), g.mode)
    T = expected_values(space)
    value = T[space.source_index]
    if g.mode == FLOAT:
        _check_lower(space, value)
    return ExpectationResult(value, g.mode)


class ArrivalPmf(NamedTuple):
    """``probs[n] = Pr(Z = n)`` for ``n = 0..N`` and the remaining mass ``tail``."""

    probs: list
    tail: Scalar

    def mean_lower(self):
        return sum(n * x for n, x in enumerate(self.probs))


def arrival_pmf(space: StateSpace, n_max: int | None = None) -> ArrivalPmf:
    """Distribution of the first arrival time, truncated at ``n_max``.

    With ``n_max=None`` the horizon doubles from 64 until the tail mass
    drops below ``1e-9`` (capped at 65536 steps).
    """
    if n_max is None:
        n = 64
        while True:
            pmf = arrival_pmf(space, n)
            if float(pmf.tail) < TAIL_TARGET or n >= MAX_AUTO_N:
                return pmf
            n *= 2
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    g = space.graph
    zero, one = g.scalar(0), g.scalar(1)
    if space.absorbed_at_start:
        return ArrivalPmf([one] + [zero] * n_max, zero)
    src = space.source_index
    probs = [zero]
    if g.mode == FLOAT:
        step, absorb = _float_operator(space)
        cur = absorb.copy()
        for _ in range(n_max):
            probs.append(float(cur[src]))
            cur = step @ cur
    else:
        cur = list(space.absorb)
        for _ in range(n_max):
            probs.append(cur[src])
            cur = [sum((pr * cur[j] for j, pr in mv), zero) for mv in space.moves]
    probs = probs[: n_max + 1]
    tail = one - sum(probs, zero)
    if g.mode == FLOAT:
        tail = max(tail, 0.0)
    return ArrivalPmf(probs, tail)


def _float_operator(space: StateSpace):
    rows, cols, vals = [], [], []
    for i, mv in enumerate(space.moves):
        for j, pr in mv:
            rows.append(i)
            cols.append(j)
            vals.append(pr)
    k = len(space.states)
    step = sparse.csr_matrix((vals, (rows, cols)), shape=(k, k))
    return step, np.asarray(space.absorb, dtype=float)


def ogf_eval(space: StateSpace, z) -> Scalar:
    """Value of the first-arrival generating function ``E[z**Z]`` at ``z``."""
    g = space.graph
    z = g.scalar(z)
    if space.absorbed_at_start:
        return g.scalar(1)
    phi = [g.scalar(0)] * len(space.states)
    for i in range(len(space.states) - 1, -1, -1):
        acc = space.absorb[i]
        diag = g.scalar(0)
        for j, pr in space.moves[i]:
            if j == i:
                diag = pr
            else:
                acc += pr * phi[j]
        if abs(z * diag) >= 1:
            raise DivergentDiagonal(f"|z * P(A,A)| = {abs(z * diag)} >= 1")
        phi[i] = z * acc / (1 - z * diag)
    return phi[space.source_index]


def expected_first_arrival(g: MultiGraph, s: Vertex, t: Vertex, max_states: int = DEFAULT_MAX_STATES) -> Scalar:
    """Shortcut: ``T_st`` between two vertices (names or indices)."""
    return expected_arrival(build_state_space(g, g.vset(s), t, max_states)).value
