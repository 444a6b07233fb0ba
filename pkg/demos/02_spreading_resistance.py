# coding: utf-8

# # Spreading resistance
#
# As p shrinks, T grows like rho / p.  The constant rho depends only on the
# graph and comes out of a recursion over labelled sets with integer edge
# counts.

from fractions import Fraction

from firstarrival import exponential_expectation, resistance_limit_check, spreading_resistance
from firstarrival.graphs import complete_graph, cycle_graph, path_graph

for name, g in [("P4", path_graph(4)), ("C4", cycle_graph(4)), ("K3", complete_graph(3)), ("K5", complete_graph(5))]:
    print(name, "rho =", spreading_resistance(g, "s", "t"))

# Watch p * T approach rho on K4.

k4 = complete_graph(4)
for eps in (Fraction(1, 10), Fraction(1, 100), Fraction(1, 1000)):
    scaled, rho = resistance_limit_check(k4, "s", "t", eps)
    print(f"p = {eps}: p*T = {float(scaled):.6f}  rho = {rho}")

# With exponential edge weights of intensity p the expected shortest path is
# exactly rho / p.

print("tau(K3, p=1/2) =", exponential_expectation(complete_graph(3), "s", "t", Fraction(1, 2)))
