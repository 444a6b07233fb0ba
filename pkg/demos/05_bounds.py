# coding: utf-8

# # Bounds on the arrival time
#
# The reliability polynomial gives a lower bound, the distance gives an
# upper bound, and electrical resistance bounds the exponential model.

from fractions import Fraction

from firstarrival import bounds_report, conjecture_scan, effective_resistance, reliability_polynomial
from firstarrival.graphs import complete_graph, cycle_graph

g = cycle_graph(5)
c = reliability_polynomial(g, "s", "t")
print("reliability coefficients:", c.c)
print("R(1/2) =", c(Fraction(1, 2)))

for q in (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)):
    rep = bounds_report(g, "s", "t", q)
    print(f"q={q}: {float(rep.lower_reliability):.4f} <= T={float(rep.exact_T):.4f} <= {float(rep.upper_distance):.4f}")

print("Res(K4) =", effective_resistance(complete_graph(4), "s", "t"))

# Compare the exponential model with the discrete one across q.  Any row
# where tau exceeds T would be listed as a finding.

scan = conjecture_scan(complete_graph(4), "s", "t", [Fraction(k, 10) for k in range(1, 10)])
for row in scan.rows:
    print(f"q={row.q}: tau={float(row.tau):.4f}  T={float(row.T):.4f}")
print("findings:", scan.findings)
