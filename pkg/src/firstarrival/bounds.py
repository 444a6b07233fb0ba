"""Upper and lower bounds on the expected first arrival time.

* ``d(s,t) / (1 - q)``: the expectation along one shortest path, an upper
  bound by subgraph monotonicity.
* ``d(s,t) - 1 + R~(q)``: a lower bound from the two-terminal reliability
  polynomial ``R(q) = sum_i c_i q^i`` through the insertion probability
  ``R~(q) = sum_{i>=1} c_i / (q^i - 1)``.
* ``Res_st / (1 - q)``: the electrical-resistance lower bound on the
  exponential-model expectation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Sequence

import numpy as np

from .errors import DomainError, TooManyEdges, UnreachableTarget
from .exact import build_state_space, expected_arrival
from .multigraph import RATIONAL, MultiGraph, Scalar, Vertex, component, distance, iter_bits, to_scalar
from .resistance import spreading_resistance

MAX_RELIABILITY_EDGES = 24
_CHUNK = 1 << 16


@dataclass(frozen=True)
class ReliabilityCoefficients:
    """Integer coefficients ``c[i]`` of ``q^i`` in the s-t reliability polynomial."""

    c: tuple[int, ...]

    @property
    def m(self) -> int:
        return len(self.c) - 1

    def __call__(self, q):
        acc = q * 0
        for ci in reversed(self.c):
            acc = acc * q + ci
        return acc


def _connected_counts(g: MultiGraph, s: int, t: int) -> list[int]:
    """``counts[f]``: number of failed-edge sets of size ``f`` leaving s-t connected."""
    m = g.m
    counts = np.zeros(m + 1, dtype=np.int64)
    us = [u for u, _, _ in g.edges]
    vs = [v for _, v, _ in g.edges]
    total = 1 << m
    for start in range(0, total, _CHUNK):
        alive = np.arange(start, min(total, start + _CHUNK), dtype=np.int64)
        reach = np.full(alive.shape, 1 << s, dtype=np.int64)
        while True:
            before = reach
            for k in range(m):
                up = (alive >> k) & 1
                ru = (reach >> us[k]) & 1
                rv = (reach >> vs[k]) & 1
                reach = reach | ((up & ru) << vs[k]) | ((up & rv) << us[k])
            if np.array_equal(reach, before):
                break
        ok = ((reach >> t) & 1).astype(bool)
        failed = m - np.bitwise_count(alive[ok].astype(np.uint64)).astype(np.int64)
        counts += np.bincount(failed, minlength=m + 1)
    return [int(x) for x in counts]


def reliability_polynomial(g: MultiGraph, s: Vertex, t: Vertex) -> ReliabilityCoefficients:
    """Exact s-t reliability polynomial in the edge failure probability ``q``.

    Enumerates all ``2^m`` failure patterns; limited to 24 edges.
    """
    s, t = g.index(s), g.index(t)
    m = g.m
    if m > MAX_RELIABILITY_EDGES:
        raise TooManyEdges(f"{m} edges exceeds the enumeration limit of {MAX_RELIABILITY_EDGES}")
    if s == t:
        return ReliabilityCoefficients((1,) + (0,) * m)
    counts = _connected_counts(g, s, t)
    # sum_f N_f (1-q)^(m-f) q^f, expanded binomially
    c = [0] * (m + 1)
    for f, nf in enumerate(counts):
        if not nf:
            continue
        for j in range(m - f + 1):
            c[f + j] += nf * comb(m - f, j) * (-1) ** j
    return ReliabilityCoefficients(tuple(c))


def insertion_probability(c: ReliabilityCoefficients, q) -> Scalar:
    """``sum_{i>=1} c_i / (q^i - 1)``; equals ``c_0`` at ``q = 0``."""
    if isinstance(q, int):
        q = Fraction(q)
    if q == 1:
        raise DomainError("insertion probability is undefined at q = 1")
    if not 0 <= q < 1:
        raise DomainError("q must lie in [0, 1)")
    acc = q * 0
    for i, ci in enumerate(c.c[1:], 1):
        if ci:
            acc += ci / (q**i - 1)
    return acc


def _distance(g, s, t) -> int:
    d = distance(g, s, t)
    if d is None:
        raise UnreachableTarget("no s-t path")
    return d


def _q(g: MultiGraph, q) -> Scalar:
    return to_scalar(q, g.mode)


def lower_bound_reliability(g: MultiGraph, s: Vertex, t: Vertex, q, coeffs: ReliabilityCoefficients | None = None) -> Scalar:
    """``d(s,t) - 1 + R~(q)``, a lower bound on the expected arrival time."""
    q = _q(g, q)
    d = _distance(g, s, t)
    if coeffs is None:
        coeffs = reliability_polynomial(g, s, t)
    return d - 1 + insertion_probability(coeffs, q)


def upper_bound_distance(g: MultiGraph, s: Vertex, t: Vertex, q) -> Scalar:
    """``d(s,t) / (1 - q)``, an upper bound on the expected arrival time."""
    q = _q(g, q)
    if not 0 <= q < 1:
        raise DomainError("q must lie in [0, 1)")
    return _distance(g, s, t) / (1 - q)


def effective_resistance(g: MultiGraph, s: Vertex, t: Vertex) -> Scalar:
    """s-t resistance of the graph with unit resistors on every edge.

    Rational mode uses fraction-free (Bareiss) elimination:
    ``Res = det(L without s,t) / det(L without t)`` over the component of
    ``s``.  Float mode solves the grounded Laplacian with numpy.
    """
    s, t = g.index(s), g.index(t)
    if s == t:
        raise ValueError("effective resistance needs s != t")
    comp = component(g, s)
    if not comp >> t & 1:
        raise UnreachableTarget("no s-t path")
    verts = [v for v in iter_bits(comp) if v != t]
    pos = {v: i for i, v in enumerate(verts)}
    k = len(verts)
    L = [[0] * k for _ in range(k)]
    for u, v, _ in g.edges:
        if not comp >> u & 1:
            continue
        for a, b in ((u, v), (v, u)):
            if a in pos:
                L[pos[a]][pos[a]] += 1
                if b in pos:
                    L[pos[a]][pos[b]] -= 1
    if g.mode == RATIONAL:
        i = pos[s]
        minor = [row[:i] + row[i + 1 :] for j, row in enumerate(L) if j != i]
        return Fraction(bareiss_det(minor), bareiss_det(L))
    rhs = np.zeros(k)
    rhs[pos[s]] = 1.0
    x = np.linalg.solve(np.array(L, dtype=float), rhs)
    return float(x[pos[s]])


def bareiss_det(M: Sequence[Sequence[int]]) -> int:
    """Determinant of an integer matrix by fraction-free elimination."""
    A = [list(row) for row in M]
    n = len(A)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if A[r][k] != 0), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def lower_bound_lyons_tau(g: MultiGraph, s: Vertex, t: Vertex, q) -> Scalar:
    """``Res_st / (1 - q)``: a lower bound on the exponential-model expectation
    with intensity ``1 - q`` (not on the discrete arrival time)."""
    q = _q(g, q)
    if not 0 <= q < 1:
        raise DomainError("q must lie in [0, 1)")
    return effective_resistance(g, s, t) / (1 - q)


@dataclass
class BoundsReport:
    lower_reliability: Scalar
    lower_lyons_tau: Scalar
    upper_distance: Scalar
    exact_T: Scalar | None = None
    exact_tau: Scalar | None = None

    def violations(self) -> list[str]:
        out = []
        if self.exact_T is not None:
            if self.lower_reliability > self.exact_T:
                out.append("lower_reliability > exact_T")
            if self.exact_T > self.upper_distance:
                out.append("exact_T > upper_distance")
        if self.exact_tau is not None and self.lower_lyons_tau > self.exact_tau:
            out.append("lower_lyons_tau > exact_tau")
        return out


def bounds_report(g: MultiGraph, s: Vertex, t: Vertex, q, exact: bool = True) -> BoundsReport:
    """All three bounds at ``q``; with ``exact`` also ``T`` (at ``p = 1 - q``) and ``tau``."""
    q = _q(g, q)
    rep = BoundsReport(
        lower_bound_reliability(g, s, t, q),
        lower_bound_lyons_tau(g, s, t, q),
        upper_bound_distance(g, s, t, q),
    )
    if exact:
        h = g.with_probability(1 - q)
        rep.exact_T = expected_arrival(build_state_space(h, h.vset(s), t)).value
        rep.exact_tau = spreading_resistance(h, h.vset(s), t) / (1 - q)
        if g.mode != RATIONAL:
            rep.exact_tau = float(rep.exact_tau)
    return rep


@dataclass
class ConjectureRow:
    q: Scalar
    tau: Scalar
    T: Scalar
    violation: bool


@dataclass
class ConjectureReport:
    """Per-``q`` comparison of the exponential-model and discrete expectations.

    ``findings`` lists the grid points where ``tau > T``; this is reported,
    never raised.
    """

    rho: Fraction
    rows: list[ConjectureRow] = field(default_factory=list)

    @property
    def findings(self) -> list[ConjectureRow]:
        return [r for r in self.rows if r.violation]


def conjecture_scan(g: MultiGraph, s: Vertex, t: Vertex, q_grid: Sequence) -> ConjectureReport:
    """Compare ``tau = rho / (1 - q)`` against the exact ``T`` over a grid of ``q``."""
    rho = spreading_resistance(g.with_probability(1) if g.uniform_p is None else g, g.vset(s), t)
    report = ConjectureReport(rho)
    for q in q_grid:
        q = _q(g, q)
        if not 0 <= q < 1:
            raise DomainError("q must lie in [0, 1)")
        h = g.with_probability(1 - q)
        T = expected_arrival(build_state_space(h, h.vset(s), t)).value
        tau = rho / (1 - q)
        if g.mode != RATIONAL:
            tau = float(tau)
        report.rows.append(ConjectureRow(q, tau, T, tau > T))
    return report
