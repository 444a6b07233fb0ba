# coding: utf-8

# # First arrival on a small multigraph
#
# A label starts on `s`.  Each step, every edge with exactly one labelled
# endpoint copies the label across with probability p.  We ask when `t`
# first gets labelled.

from fractions import Fraction
from pathlib import Path

from firstarrival import arrival_pmf, build_state_space, expected_arrival, load_graph, ogf_eval

g = load_graph(Path(__file__).parent / "data" / "kite.txt")
print(g.vertices, g.m, "edges, p =", g.uniform_p)

# The chain lives on labelled sets.  Only sets reachable from {s} and not
# yet containing t are kept; everything with t is one absorbing state.

space = build_state_space(g, "s", "t")
for a in space.states:
    print(sorted(g.names(a)), "stays put with probability", space.self_loop(space.index[a]))

# Expected arrival time, exactly.

T = expected_arrival(space).value
print("T =", T, "~", float(T))

# The distribution of the arrival time, truncated at 12 steps.

pmf = arrival_pmf(space, 12)
for n, x in enumerate(pmf.probs):
    print(f"Pr(Z = {n:2d}) = {x}")
print("mass beyond 12 steps:", pmf.tail)

# The generating function E[z^Z] at a couple of points.  At z = 1 it is 1.

for z in (Fraction(1, 2), Fraction(1)):
    print("E[z^Z] at z =", z, "->", ogf_eval(space, z))

# Float mode gives the same answer with ordinary floats.

print("float mode:", expected_arrival(build_state_space(g.with_mode("float"), "s", "t")).value)
