# coding: utf-8

# # Simulation as an independent check
#
# Three samplers: the spread process itself, shortest paths with geometric
# edge lengths, and shortest paths with exponential edge weights.  The first
# two share one law; the third estimates tau.

from fractions import Fraction

from firstarrival import (
    SimConfig,
    arrival_pmf,
    build_state_space,
    expected_first_arrival,
    sample_exponential_sp,
    sample_geometric_sp,
    simulate_spread,
    spreading_resistance,
)
from firstarrival.graphs import cycle_graph
from firstarrival.montecarlo import chi_square_vs_pmf, two_sample_chi_square

g = cycle_graph(4, p="1/2")
cfg = SimConfig(seed=2024, replicas=8, samples_per_replica=5000)

spread = simulate_spread(g, "s", "t", cfg)
geo = sample_geometric_sp(g, "s", "t", cfg)
expo = sample_exponential_sp(g, "s", "t", Fraction(1, 2), cfg)

print("exact T   :", float(expected_first_arrival(g, "s", "t")))
print(f"spread    : {spread.mean:.4f} +- {spread.stderr:.4f}")
print(f"geometric : {geo.mean:.4f} +- {geo.stderr:.4f}")
print("exact tau :", float(spreading_resistance(g, "s", "t") * 2))
print(f"exponential: {expo.mean:.4f} +- {expo.stderr:.4f}")

# Histograms against the exact pmf, and against each other.

probs = arrival_pmf(build_state_space(g, "s", "t"), 60).probs
print("geometric vs exact p-value:", chi_square_vs_pmf(geo, probs))
print("spread vs geometric p-value:", two_sample_chi_square(spread, geo))

# Same configuration, same numbers, whatever the worker count.

again = sample_geometric_sp(g, "s", "t", SimConfig(seed=2024, replicas=8, samples_per_replica=5000, workers=4))
print("reproducible:", again.mean == geo.mean)
