"""From a semistable fiber's dual graph to the effective lower bound.

The pipeline: classify every node (type i, and subtype j for type-0 nodes
under the involution), count the invariants, then evaluate the
self-intersection of the dualizing sheaf, the per-fiber bound on the
admissible constant, and the positive radicand r0 -- and verify the bound
against the exact admissible constant of the fiber's metrized graph.
"""

import admgraph as ag

# Genus 4: two fixed genus-1 anchors Z, Z2 joined through a swapped pair of
# rational chains (Z - R - Z2 and its mirror), plus an iota-fixed node on Z.
graph = ag.MetrizedGraph(
    ["Z", "Z2", "R", "R2"],
    [
        ("l", ("Z", "Z"), 1),
        ("a", ("Z", "R"), 1),
        ("b", ("R", "Z2"), 1),
        ("a2", ("Z", "R2"), 1),
        ("b2", ("R2", "Z2"), 1),
    ],
    allow_loops=True,
)
involution = ag.Involution(
    {"Z": "Z", "Z2": "Z2", "R": "R2", "R2": "R"},
    {"l": "l", "a": "a2", "a2": "a", "b": "b2", "b2": "b"},
)
cfg = ag.FiberConfiguration(graph, {"Z": 1, "Z2": 1}, involution)
print("fiber genus:", cfg.genus)

for e in graph.edges:
    i = ag.node_type(cfg, e.id)
    j = ag.node_subtype(cfg, e.id) if i == 0 else None
    print(f"node {e.id}: type {i}" + (f", subtype {j}" if j is not None else ""))

counts = ag.count_invariants(cfg)
print("counts:", counts, "delta0 =", counts.delta0)

# The closed formulas from the counts.
print("(omega, omega)        =", ag.omega_self_intersection(counts))
print("per-fiber eps bound   =", ag.epsilon_fiber_upper(counts))
print("r0                    =", ag.r0_bound(counts))
radicand, report = ag.pairing_radicand(counts)
print("assembled radicand    =", radicand, report["warnings"] or "")

# Independent check: the exact admissible constant of the fiber's metrized
# graph (unit node lengths, omega polarization) stays below the bound.
metrized, omega = ag.fiber_metrized(cfg)
eps, _ = ag.epsilon_numeric(metrized, omega)
print("exact epsilon         =", eps)
assert eps <= ag.epsilon_fiber_upper(counts)

# The type-0 part normalizes to a hyperelliptic graph; its closed-form
# epsilon agrees with the solver on the nose.
h, d = ag.normalized_hyperelliptic(cfg)
print("normalized graph:", h.graph, "polarization:", d)
print("closed-form epsilon   =", ag.epsilon_closed_form(h, d))
assert ag.epsilon_closed_form(h, d) == eps  # no positive-type nodes here

# Aggregating over a family is just adding counts: a second fiber of the
# same genus with one iota-fixed node on an irreducible genus-3 component.
other = ag.FiberConfiguration(
    ag.MetrizedGraph(["v"], [("n", ("v", "v"), 1)], allow_loops=True),
    {"v": 3},
    ag.Involution({"v": "v"}, {"n": "n"}),
)
family = ag.InvariantCounts.from_maps(
    4,
    {j: counts.xi_j(j) + ag.count_invariants(other).xi_j(j) for j in range(2)},
    {},
)
print("family r0             =", ag.r0_bound(family))
