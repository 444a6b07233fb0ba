import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corpus import per_edge_corpus, random_corpus
from firstarrival import (
    MultiGraph,
    arrival_pmf,
    build_state_space,
    expected_arrival,
    expected_first_arrival,
    ogf_eval,
    transition_probability,
)
from firstarrival.errors import (
    DivergentDiagonal,
    NotSuperset,
    StateSpaceExceeded,
    UnreachableTarget,
)
from firstarrival.exact import successors
from firstarrival.graphs import complete_graph, cycle_graph, path_graph
from firstarrival.multigraph import open_neighborhood

HALF = Fraction(1, 2)


def fire_outcomes(g, a):
    """Distribution of the next labelled set, by enumerating which boundary
    edges fire.  Exponential in the number of boundary edges."""
    boundary = [k for k, (u, v, _) in enumerate(g.edges) if (a >> u & 1) != (a >> v & 1)]
    dist = {}
    for pattern in itertools.product((False, True), repeat=len(boundary)):
        pr = Fraction(1)
        b = a
        for k, fired in zip(boundary, pattern):
            u, v, p = g.edges[k]
            pr *= p if fired else 1 - p
            if fired:
                b |= (1 << u) | (1 << v)
        if pr:
            dist[b] = dist.get(b, 0) + pr
    return dist


def full_chain_expectation(g, s, t):
    """Float solve of (I - Q) T = 1 over every subset of V not containing t."""
    s, t = g.index(s), g.index(t)
    states = [a for a in range(1, 1 << g.n) if not a >> t & 1]
    pos = {a: i for i, a in enumerate(states)}
    Q = np.zeros((len(states), len(states)))
    for a in states:
        for b, pr in fire_outcomes(g, a).items():
            if b in pos:
                Q[pos[a], pos[b]] += float(pr)
    # unreachable subsets may be stuck; only the rows reachable from s matter,
    # so regularize stuck rows
    stuck = np.isclose(np.diag(Q), 1.0)
    Q[stuck, :] = 0.0
    T = np.linalg.solve(np.eye(len(states)) - Q, np.ones(len(states)))
    return T[pos[1 << s]]


def brute_pmf(g, s, t, n_max):
    t = g.index(t)
    dist = {g.vset(s): Fraction(1)}
    probs = [Fraction(0)]
    for _ in range(n_max):
        nxt = {}
        hit = Fraction(0)
        for a, pa in dist.items():
            for b, pr in fire_outcomes(g, a).items():
                if b >> t & 1:
                    hit += pa * pr
                else:
                    nxt[b] = nxt.get(b, 0) + pa * pr
        probs.append(hit)
        dist = nxt
    return probs


# -- transition probabilities ------------------------------------------------


def test_transition_examples():
    edge = MultiGraph.from_edges([("s", "t")], p=HALF)
    assert transition_probability(edge, edge.vset("s"), edge.full) == HALF
    k3 = complete_graph(3, p=HALF)
    s, a = k3.vset("s"), k3.vset("v2")
    assert transition_probability(k3, s, s) == Fraction(1, 4)
    assert transition_probability(k3, s, s | a) == Fraction(1, 4)


def test_transition_outside_neighborhood_is_zero():
    g = path_graph(3, p=HALF)
    assert transition_probability(g, g.vset("s"), g.vset(["s", "t"])) == 0


def test_transition_requires_superset():
    g = path_graph(2, p=HALF)
    with pytest.raises(NotSuperset):
        transition_probability(g, g.vset(["s", "v1"]), g.vset("s"))


@pytest.mark.parametrize("name,g", random_corpus(count=15, max_vertices=6) + per_edge_corpus(count=15))
def test_transition_matches_edge_firing(name, g):
    for a in range(1, 1 << g.n):
        oracle = fire_outcomes(g, a)
        nbr = open_neighborhood(g, a)
        total = Fraction(0)
        sub = nbr
        while True:
            b = a | sub
            pr = transition_probability(g, a, b)
            assert pr == oracle.get(b, 0)
            total += pr
            if sub == 0:
                break
            sub = (sub - 1) & nbr
        assert total == 1


def test_successors_split_absorption():
    g = complete_graph(3, p=HALF)
    moves, absorb = successors(g, g.vset("s"), g.vset("t"))
    assert absorb == HALF
    assert sum(pr for _, pr in moves) + absorb == 1


# -- state space -------------------------------------------------------------


def test_state_space_examples():
    edge = MultiGraph.from_edges([("s", "t")], p=HALF)
    sp = build_state_space(edge, "s", "t")
    assert sp.states == (edge.vset("s"),) and len(sp) == 2
    path = MultiGraph.from_edges([("s", "a"), ("a", "t")], p=HALF)
    sp = build_state_space(path, "s", "t")
    assert sp.states == (path.vset("s"), path.vset(["s", "a"]))
    k3 = complete_graph(3, p=HALF)
    sp = build_state_space(k3, "s", "t")
    assert sp.states == (k3.vset("s"), k3.vset(["s", "v2"]))


def test_state_order_extends_inclusion():
    for _, g in random_corpus(count=20):
        sp = build_state_space(g, "s", "t")
        for i, a in enumerate(sp.states):
            for j, b in enumerate(sp.states):
                if a != b and a & b == a:
                    assert i < j
            for j, _ in sp.moves[i]:
                assert j >= i


def test_state_space_errors():
    g = MultiGraph.from_edges([("s", "a"), ("b", "t")], p=HALF)
    with pytest.raises(UnreachableTarget):
        build_state_space(g, "s", "t")
    with pytest.raises(StateSpaceExceeded):
        build_state_space(complete_graph(7, p=HALF), "s", "t", max_states=10)


# -- expectation -------------------------------------------------------------


@pytest.mark.parametrize("n", [1, 2, 4, 6])
def test_path_expectation(n):
    assert expected_first_arrival(path_graph(n, p=Fraction(1, 3)), "s", "t") == 3 * n


def test_expectation_examples():
    pair = MultiGraph.from_edges([("s", "t"), ("s", "t")], p=HALF)
    assert expected_first_arrival(pair, "s", "t") == Fraction(4, 3)
    assert expected_first_arrival(complete_graph(3, p=HALF), "s", "t") == Fraction(16, 9)
    assert expected_first_arrival(pair, "s", "s") == 0
    sp = build_state_space(pair, pair.full, "t")
    assert expected_arrival(sp).value == 0


def test_float_mode_agrees():
    g = cycle_graph(5, p="1/3")
    exact = expected_first_arrival(g, "s", "t")
    approx = expected_arrival(build_state_space(g.with_mode("float"), "s", "t"))
    assert approx.mode == "float"
    assert approx.value == pytest.approx(float(exact), rel=1e-12)


@pytest.mark.parametrize("name,g", random_corpus(count=15, max_vertices=6) + per_edge_corpus(count=10))
def test_expectation_matches_full_chain(name, g):
    assert float(expected_first_arrival(g, "s", "t")) == pytest.approx(full_chain_expectation(g, "s", "t"), rel=1e-9)


@pytest.mark.parametrize("name,g", per_edge_corpus(count=15))
def test_symmetry_per_edge(name, g):
    assert expected_first_arrival(g, "s", "t") == expected_first_arrival(g, "t", "s")


def test_edge_removal_never_speeds_up():
    for _, g in random_corpus(count=25, max_vertices=6):
        base = expected_first_arrival(g, "s", "t")
        for k in range(g.m):
            h = g.without_edge(k)
            try:
                assert expected_first_arrival(h, "s", "t") >= base
            except UnreachableTarget:
                pass


# -- pmf ---------------------------------------------------------------------


def test_single_edge_pmf():
    p = Fraction(1, 3)
    edge = MultiGraph.from_edges([("s", "t")], p=p)
    pmf = arrival_pmf(build_state_space(edge, "s", "t"), 20)
    assert pmf.probs[0] == 0
    assert pmf.probs[1:] == [p * (1 - p) ** (n - 1) for n in range(1, 21)]
    assert pmf.tail == (1 - p) ** 20


def test_path_pmf_negative_binomial():
    from math import comb

    p, r = Fraction(1, 4), 3
    pmf = arrival_pmf(build_state_space(path_graph(r, p=p), "s", "t"), 30)
    for n in range(31):
        want = comb(n - 1, r - 1) * p**r * (1 - p) ** (n - r) if n >= r else 0
        assert pmf.probs[n] == want


@pytest.mark.parametrize("name,g", random_corpus(count=10, max_vertices=5) + per_edge_corpus(count=6))
def test_pmf_matches_brute_force(name, g):
    pmf = arrival_pmf(build_state_space(g, "s", "t"), 8)
    assert pmf.probs == brute_pmf(g, "s", "t", 8)
    assert pmf.tail == 1 - sum(pmf.probs)


def test_pmf_absorbed_at_start():
    g = path_graph(2, p=HALF)
    pmf = arrival_pmf(build_state_space(g, g.full, "t"), 3)
    assert pmf.probs == [1, 0, 0, 0] and pmf.tail == 0


def test_pmf_symmetry():
    for _, g in random_corpus(count=10):
        a = arrival_pmf(build_state_space(g, "s", "t"), 15)
        b = arrival_pmf(build_state_space(g, "t", "s"), 15)
        assert a == b


def test_auto_horizon_float():
    g = complete_graph(5, p="1/4", mode="float")
    sp = build_state_space(g, "s", "t")
    pmf = arrival_pmf(sp)
    T = expected_arrival(sp).value
    N = len(pmf.probs) - 1
    assert pmf.tail < 1e-9
    assert abs(T - pmf.mean_lower()) <= pmf.tail * (N + T) + 1e-9


# -- generating function -----------------------------------------------------


def test_ogf_examples():
    edge = MultiGraph.from_edges([("s", "t")], p=HALF)
    sp = build_state_space(edge, "s", "t")
    assert ogf_eval(sp, HALF) == Fraction(1, 3)
    assert ogf_eval(sp, 0) == 0
    for _, g in random_corpus(count=10):
        assert ogf_eval(build_state_space(g, "s", "t"), 1) == 1


def test_ogf_divergent():
    edge = MultiGraph.from_edges([("s", "t")], p=HALF)
    with pytest.raises(DivergentDiagonal):
        ogf_eval(build_state_space(edge, "s", "t"), 2)


@given(st.fractions(min_value=0, max_value=Fraction(9, 10)), st.integers(0, 9))
@settings(max_examples=30, deadline=None)
def test_ogf_matches_pmf(z, k):
    _, g = random_corpus(count=10, max_vertices=5)[k]
    sp = build_state_space(g, "s", "t")
    N = 40
    pmf = arrival_pmf(sp, N)
    partial = sum(x * z**n for n, x in enumerate(pmf.probs))
    value = ogf_eval(sp, z)
    assert partial <= value <= partial + pmf.tail * z ** (N + 1)
