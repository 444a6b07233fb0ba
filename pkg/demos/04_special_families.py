# coding: utf-8

# # Paths, trees, complete graphs and bundles of paths
#
# These families have closed forms or short recurrences, so they scale far
# past what the subset chain can handle.

from fractions import Fraction

from firstarrival import expected_first_arrival, kn_expected, kn_resistance, parallel_paths_resistance, tree_expected
from firstarrival.graphs import complete_graph, star_graph

# On K_n the chain only cares how many vertices are labelled.

q = Fraction(1, 2)
for n in (3, 5, 7):
    print(f"K{n}: recurrence {kn_expected(n, q)}  engine {expected_first_arrival(complete_graph(n, p=1 - q), 's', 't')}")

# The recurrence handles sizes the subset chain cannot.

print("K40, q=0.9:", kn_expected(40, 0.9))
print("rho(K_n) for n = 2..6:", [str(kn_resistance(n)) for n in range(2, 7)])

# Bundles of parallel paths.

for lengths in [(1, 1), (2, 2), (1, 2, 3), (4, 4, 4)]:
    print(lengths, "rho =", parallel_paths_resistance(lengths))

# Trees: arrival time is distance over p.

print("star leaf to leaf, p=1/3:", tree_expected(star_graph(4), "t", "l2", Fraction(1, 3)))
