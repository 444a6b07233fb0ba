"""Seeded simulation oracles.

Three samplers estimate first arrival quantities independently of the
exact engine:

* ``simulate_spread`` runs the labelling process step by step;
* ``sample_geometric_sp`` draws Geometric(p_e) edge lengths and takes the
  shortest s-t path length, which has the same law as the arrival time;
* ``sample_exponential_sp`` does the same with Exp(p) edge weights.

Work is split into replicas.  Replica ``i`` draws from a Philox stream
keyed by ``(seed, i)``, and results are folded in replica order, so a
configuration gives bit-identical output for any number of workers.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy import stats

from .errors import UnreachableTarget
from .multigraph import FLOAT, MultiGraph, Vertex, distance, to_scalar

HIST_CAP = 1024


@dataclass(frozen=True)
class SimConfig:
    seed: int = 0
    replicas: int = 10
    samples_per_replica: int = 10_000
    workers: int = 1
    hist_cap: int = HIST_CAP

    def __post_init__(self):
        if self.replicas < 1 or self.samples_per_replica < 1:
            raise ValueError("replicas and samples_per_replica must be positive")

    @property
    def total(self) -> int:
        return self.replicas * self.samples_per_replica

    def rng(self, replica: int) -> np.random.Generator:
        ss = np.random.SeedSequence([self.seed & (2**64 - 1), replica])
        return np.random.Generator(np.random.Philox(ss))


@dataclass
class SimEstimate:
    """Pooled sample statistics.

    ``histogram[k]`` counts samples with value ``k`` (integer samplers) or in
    ``[k, k+1)`` (exponential sampler) for ``k < hist_cap``; the final
    bucket ``histogram[hist_cap]`` collects everything beyond.
    """

    mean: float
    stderr: float
    n: int
    histogram: np.ndarray

    @property
    def overflow(self) -> int:
        return int(self.histogram[-1])

    def pmf(self) -> np.ndarray:
        return self.histogram / self.n


def _uniform_open(rng: np.random.Generator, shape) -> np.ndarray:
    # 53-bit grid shifted by half a step: never 0, never 1
    return (rng.integers(0, 1 << 53, size=shape, dtype=np.int64) + 0.5) / float(1 << 53)


def _edge_arrays(g: MultiGraph):
    u = np.array([e[0] for e in g.edges], dtype=np.intp)
    v = np.array([e[1] for e in g.edges], dtype=np.intp)
    p = np.array([float(e[2]) for e in g.edges], dtype=float)
    return u, v, p


def _spread_once(g: MultiGraph, s: int, t: int, n: int, rng) -> np.ndarray:
    u, v, p = _edge_arrays(g)
    infected = np.zeros((n, g.n), dtype=bool)
    infected[:, s] = True
    times = np.zeros(n, dtype=np.int64)
    alive = np.arange(n)
    step = 0
    while alive.size:
        step += 1
        cur = infected[alive]
        nxt = cur.copy()
        draws = rng.random((alive.size, len(u)))
        boundary = cur[:, u] != cur[:, v]
        fire = boundary & (draws < p)
        for k in range(len(u)):
            f = fire[:, k]
            nxt[f, u[k]] = True
            nxt[f, v[k]] = True
        infected[alive] = nxt
        hit = nxt[:, t]
        times[alive[hit]] = step
        alive = alive[~hit]
    return times


def _bellman_ford(g: MultiGraph, s: int, t: int, w: np.ndarray) -> np.ndarray:
    u, v, _ = _edge_arrays(g)
    n = w.shape[0]
    dist = np.full((n, g.n), np.inf)
    dist[:, s] = 0.0
    for _ in range(g.n - 1):
        before = dist.copy()
        for k in range(len(u)):
            np.minimum(dist[:, v[k]], dist[:, u[k]] + w[:, k], out=dist[:, v[k]])
            np.minimum(dist[:, u[k]], dist[:, v[k]] + w[:, k], out=dist[:, u[k]])
        if np.array_equal(dist, before):
            break
    return dist[:, t]


def _geometric_once(g: MultiGraph, s: int, t: int, n: int, rng) -> np.ndarray:
    _, _, p = _edge_arrays(g)
    U = _uniform_open(rng, (n, len(p)))
    with np.errstate(divide="ignore"):
        logq = np.log1p(-p)
    lengths = np.where(p >= 1.0, 1.0, np.ceil(np.log(U) / np.where(p >= 1.0, -1.0, logq)))
    lengths = np.maximum(lengths, 1.0)
    return _bellman_ford(g, s, t, lengths).astype(np.int64)


def _exponential_once(g: MultiGraph, s: int, t: int, n: int, rng, rate: float) -> np.ndarray:
    U = _uniform_open(rng, (n, g.m))
    return _bellman_ford(g, s, t, -np.log(U) / rate)


def _run(g: MultiGraph, s, t, cfg: SimConfig, draw: Callable) -> SimEstimate:
    s, t = g.index(s), g.index(t)
    if s == t:
        hist = np.zeros(cfg.hist_cap + 1, dtype=np.int64)
        hist[0] = cfg.total
        return SimEstimate(0.0, 0.0, cfg.total, hist)
    if distance(g, s, t) is None:
        raise UnreachableTarget("no s-t path")

    def replica(i):
        x = draw(g, s, t, cfg.samples_per_replica, cfg.rng(i))
        bins = np.minimum(np.floor(x).astype(np.int64), cfg.hist_cap)
        hist = np.bincount(bins, minlength=cfg.hist_cap + 1)
        mean = float(np.mean(x))
        m2 = float(np.sum((x - mean) ** 2))
        return x.size, mean, m2, hist

    if cfg.workers > 1:
        with ThreadPoolExecutor(cfg.workers) as pool:
            parts = list(pool.map(replica, range(cfg.replicas)))
    else:
        parts = [replica(i) for i in range(cfg.replicas)]

    # Chan et al. pairwise merge, folded in replica order
    n, mean, m2 = 0, 0.0, 0.0
    hist = np.zeros(cfg.hist_cap + 1, dtype=np.int64)
    for nb, mb, m2b, hb in parts:
        delta = mb - mean
        tot = n + nb
        mean += delta * nb / tot
        m2 += m2b + delta * delta * n * nb / tot
        n = tot
        hist += hb
    var = m2 / (n - 1) if n > 1 else 0.0
    return SimEstimate(mean, float(np.sqrt(var / n)), n, hist)


def simulate_spread(g: MultiGraph, s: Vertex, t: Vertex, cfg: SimConfig) -> SimEstimate:
    """Direct simulation: each step, every edge with exactly one labelled
    endpoint fires independently with its probability."""
    return _run(g, s, t, cfg, _spread_once)


def sample_geometric_sp(g: MultiGraph, s: Vertex, t: Vertex, cfg: SimConfig) -> SimEstimate:
    """Shortest s-t path length under independent Geometric(p_e) edge lengths
    on ``{1, 2, ...}``, drawn as ``ceil(ln U / ln q_e)``."""
    return _run(g, s, t, cfg, _geometric_once)


def sample_exponential_sp(g: MultiGraph, s: Vertex, t: Vertex, p, cfg: SimConfig) -> SimEstimate:
    """Shortest s-t path length under independent Exp(``p``) edge weights."""
    rate = float(to_scalar(p, FLOAT))
    if rate <= 0:
        raise ValueError("intensity must be positive")
    return _run(g, s, t, cfg, lambda g, s, t, n, rng: _exponential_once(g, s, t, n, rng, rate))


def within(est: SimEstimate, exact, k: float = 4.0) -> bool:
    """``|mean - exact| <= k * stderr``."""
    return abs(est.mean - float(exact)) <= k * est.stderr


def _pool_bins(expected: np.ndarray, min_expected: float) -> list[tuple[int, int]]:
    """Contiguous bin ranges each carrying at least ``min_expected`` expected counts."""
    ranges, start, acc = [], 0, 0.0
    for k, e in enumerate(expected):
        acc += e
        if acc >= min_expected:
            ranges.append((start, k + 1))
            start, acc = k + 1, 0.0
    if start < len(expected):
        if ranges:
            ranges[-1] = (ranges[-1][0], len(expected))
        else:
            ranges.append((start, len(expected)))
    return ranges


def chi_square_vs_pmf(est: SimEstimate, probs: Sequence, min_expected: float = 5.0) -> float:
    """p-value of a goodness-of-fit test of the histogram against an exact pmf.

    ``probs[k]`` is the exact ``Pr(Z = k)``; mass not covered by ``probs``
    forms a final tail bin.  Bins are pooled left to right until each
    expects at least ``min_expected`` counts.
    """
    probs = np.asarray([float(x) for x in probs], dtype=float)
    k = len(probs)
    observed = np.zeros(k + 1)
    h = est.histogram
    take = min(k, len(h))
    observed[:take] = h[:take]
    observed[k] = est.n - observed[:k].sum()
    expected = np.append(probs, max(0.0, 1.0 - probs.sum())) * est.n
    ranges = _pool_bins(expected, min_expected)
    obs = np.array([observed[a:b].sum() for a, b in ranges])
    exp = np.array([expected[a:b].sum() for a, b in ranges])
    exp *= obs.sum() / exp.sum()
    if len(obs) < 2:
        return 1.0
    return float(stats.chisquare(obs, exp).pvalue)


def two_sample_chi_square(a: SimEstimate, b: SimEstimate, min_expected: float = 5.0) -> float:
    """p-value of a homogeneity test between two histograms."""
    pooled = (a.histogram + b.histogram).astype(float)
    ranges = _pool_bins(pooled / 2, min_expected)
    table = np.array(
        [[a.histogram[x:y].sum() for x, y in ranges], [b.histogram[x:y].sum() for x, y in ranges]]
    )
    if table.shape[1] < 2:
        return 1.0
    return float(stats.chi2_contingency(table, correction=False).pvalue)
