# coding: utf-8

# # Generating functions and series-parallel reduction
#
# Gluing two graphs at a cut vertex adds arrival times, so generating
# functions multiply.  Putting two branches side by side between s and t
# takes the minimum, which multiplies the survival functions.

from fractions import Fraction

from firstarrival import (
    arrival_pmf,
    build_state_space,
    expectation_from_survival,
    parallel_reduce,
    path_ogf,
    series_reduce,
    two_paths_ogf,
)
from firstarrival.graphs import complete_graph, glue_parallel, glue_series, path_graph
from firstarrival.series import pmf_series

q = Fraction(1, 2)
N = 20


def engine(g):
    return pmf_series(arrival_pmf(build_state_space(g, "s", "t"), N).probs)


# Series: a triangle followed by a single edge.

tri = complete_graph(3, p=1 - q)
edge = path_graph(1, p=1 - q)
series_phi = series_reduce(engine(tri), path_ogf(1, q, N))
print("series matches engine:", series_phi == engine(glue_series(tri, edge)))

# Parallel: the triangle alongside a two-edge path.

two = path_graph(2, p=1 - q)
parallel_phi = parallel_reduce(engine(tri), path_ogf(2, q, N))
print("parallel matches engine:", parallel_phi == engine(glue_parallel(tri, two)))

# Two parallel paths have a closed form.  The first few coefficients:

phi = two_paths_ogf(2, 3, q, N)
print([str(c) for c in phi[:8]])

# Expectation from the survival series, with a geometric tail estimate.

est = expectation_from_survival(two_paths_ogf(2, 3, q, 200))
print("E[Z] ~", float(est.value), "(tail estimate", float(est.remainder), ")")
