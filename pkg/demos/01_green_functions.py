"""Green's functions and the admissible constant, end to end on small graphs.

Everything is exact: inputs are Fractions (or rational strings) and every
printed value is the true rational number, no rounding anywhere.
"""

from fractions import Fraction

import admgraph as ag

# The simple graph SG: two vertices joined by a pair of parallel unit edges.
sg = ag.MetrizedGraph(["P", "Q"], [("e1", ("P", "Q"), 1), ("e2", ("P", "Q"), 1)])

# Effective resistance treats each edge as a resistor of its length.
print("resistance P-Q on SG:", ag.effective_resistance(sg, "P", "Q"))  # 1/2

# Cross resistance of an edge: resistance between its ends with the edge's
# interior removed; INFINITY exactly on bridges.
print("cross resistance of e1:", ag.cross_resistance(sg, "e1"))  # 1
bridge = ag.MetrizedGraph(["P", "Q"], [("e", ("P", "Q"), 1)])
print("cross resistance of a bridge:", ag.cross_resistance(bridge, "e"))  # INFINITY

# The canonical measure has mass 1 - valence/2 at vertices and density
# 1/(l + r) on edges; its total mass is exactly 1 on any connected graph.
mu0 = ag.canonical_measure(sg)
print("canonical:", dict(mu0.vertex_masses), dict(mu0.edge_densities))

# Polarize with D = P + Q.  The admissible measure is
# (delta_D + 2 * canonical) / (deg D + 2).
d = ag.Divisor({"P": 1, "Q": 1})
mu = ag.admissible_measure(sg, d)
print("admissible:", dict(mu.vertex_masses), dict(mu.edge_densities))
print("total mass:", mu.total_mass(sg))  # exactly 1

# The Green's function slice from P is piecewise quadratic: its second
# derivative on each edge is the measure's density, its vertex fluxes
# realize delta_P - mu, and its integral against mu vanishes.
pot = ag.green_function(sg, d, "P")
print("g(P,P) =", pot.value_at_vertex("P"))  # 13/96
print("g(P,Q) =", pot.value_at_vertex("Q"))  # -11/96
print("g at the midpoint of e1:", pot.value_on_edge("e1", Fraction(1, 2)))

# The admissible constant: epsilon = 2 deg(D) c - g(D, D), where
# c = g(D, y) + g(y, y) is the same at every vertex y.
eps, c = ag.epsilon_numeric(sg, d)
print("epsilon =", eps, " c =", c)  # 7/12 and 5/32

# epsilon is additive over one-point sums and blind to subdivision.
fine = ag.subdivide_edge(sg, "e1", Fraction(1, 3))
print("epsilon after subdividing:", ag.epsilon_numeric(fine, d)[0])  # still 7/12
