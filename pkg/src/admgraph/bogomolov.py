"""Semistable-fiber node bookkeeping and the effective lower bound.

A fiber configuration is the dual graph of a semistable fiber: vertices are
components carrying a geometric genus, edges are nodes (self-loops allowed:
a node on an irreducible component), and the arithmetic genus is the genus
sum plus the first Betti number.  Deleting a node's edge classifies it:
still connected means type 0, otherwise the type is the smaller arithmetic
genus of the two sides.  With a hyperelliptic involution, type-0 nodes are
refined: a fixed node has subtype 0; for a swapped pair, deleting both edges
must leave exactly two components and the subtype is the smaller genus.

xi_0 counts *nodes* of type (0,0); xi_j for j >= 1 counts *pairs*; delta_i
counts nodes of type i, so delta_0 = xi_0 + 2 * sum of the xi_j.

From these counts come the self-intersection of the relative dualizing
sheaf, a per-fiber upper bound on the admissible constant (all nodes given
unit length), and the positive lower bound r0 on the squared Neron-Tate
radius for genus >= 3 (genus 2 is prior work and deliberately rejected).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Tuple

from .errors import (
    GenusBelowThreeError,
    GenusRangeError,
    InvalidGraphError,
    MissingInvolutionError,
    NotHyperellipticConfigurationError,
    UnexpectedComponentCountError,
)
from .graph import Divisor, MetrizedGraph, contract, push_divisor, subdivide_edge
from .hyperelliptic import (
    HyperellipticGraph,
    Involution,
    check_involution,
    normalize_fiber,
)

ZERO = Fraction(0)


class FiberConfiguration:
    """Dual graph of a semistable fiber with per-component genera and an
    optional involution."""

    __slots__ = ("graph", "genera", "involution", "genus")

    def __init__(
        self,
        graph: MetrizedGraph,
        genera: Mapping[str, int],
        involution: Optional[Involution] = None,
    ):
        if not graph.is_connected():
            raise InvalidGraphError("a fiber's dual graph is connected")
        if set(genera) - set(graph.vertices):
            raise InvalidGraphError("genera assigned to unknown components")
        full = {v: int(genera.get(v, 0)) for v in graph.vertices}
        if any(x < 0 for x in full.values()):
            raise InvalidGraphError("component genera are nonnegative")
        genus = sum(full.values()) + graph.first_betti_number()
        if genus < 2:
            raise InvalidGraphError(f"fiber genus {genus} < 2 is not semistable of general type")
        if involution is not None:
            check_involution(graph, involution, allow_fixed_edges=True)
            for v in graph.vertices:
                if full[involution.vertex(v)] != full[v]:
                    raise InvalidGraphError("involution does not respect component genera")
        object.__setattr__(self, "graph", graph)
        object.__setattr__(self, "genera", full)
        object.__setattr__(self, "involution", involution)
        object.__setattr__(self, "genus", genus)

    def __setattr__(self, name, value):
        raise AttributeError("FiberConfiguration is immutable")

    def require_involution(self) -> Involution:
        if self.involution is None:
            raise MissingInvolutionError("this operation needs the hyperelliptic involution")
        return self.involution


def _components_without(g: MetrizedGraph, removed_edges) -> List[set]:
    removed = set(removed_edges)
    adj: Dict[str, List[str]] = {v: [] for v in g.vertices}
    for e in g.edges:
        if e.id in removed:
            continue
        u, w = e.ends
        adj[u].append(w)
        adj[w].append(u)
    seen = set()
    comps = []
    for start in g.vertices:
        if start in seen:
            continue
        comp = {start}
        stack = [start]
        seen.add(start)
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    comp.add(w)
                    stack.append(w)
        comps.append(comp)
    return comps


def _side_genus(cfg: FiberConfiguration, side: set, removed_edges: set) -> int:
    edges_inside = [
        e
        for e in cfg.graph.edges
        if e.id not in removed_edges and e.ends[0] in side and e.ends[1] in side
    ]
    betti = len(edges_inside) - len(side) + 1
    return sum(cfg.genera[v] for v in side) + betti


def node_type(cfg: FiberConfiguration, node_id: str) -> int:
    """0 if the partial normalization stays connected, else the minimum of
    the two sides' arithmetic genera."""
    cfg.graph.edge(node_id)
    comps = _components_without(cfg.graph, {node_id})
    if len(comps) == 1:
        return 0
    a, b = comps
    return min(_side_genus(cfg, a, {node_id}), _side_genus(cfg, b, {node_id}))


def node_subtype(cfg: FiberConfiguration, node_id: str) -> int:
    """Subtype j of a type-0 node: 0 when the node is iota-fixed; otherwise
    remove the node and its partner (exactly two components must result) and
    take the smaller arithmetic genus."""
    inv = cfg.require_involution()
    if node_type(cfg, node_id) != 0:
        raise ValueError(f"node {node_id!r} is not of type 0")
    partner = inv.edge(node_id)
    if partner == node_id:
        return 0
    removed = {node_id, partner}
    comps = _components_without(cfg.graph, removed)
    if len(comps) != 2:
        raise UnexpectedComponentCountError(
            f"removing {node_id!r} and {partner!r} gave {len(comps)} components, expected 2"
        )
    a, b = comps
    return min(_side_genus(cfg, a, removed), _side_genus(cfg, b, removed))


class InvariantCounts:
    """xi and delta vectors for one fiber or a whole family (the counts are
    additive over fibers)."""

    __slots__ = ("genus", "xi", "delta", "delta0")

    def __init__(self, genus: int, xi, delta, delta0: Optional[int] = None):
        genus = int(genus)
        if genus < 2:
            raise GenusRangeError("counts are defined for genus >= 2")
        xi = tuple(int(x) for x in xi)
        delta = tuple(int(x) for x in delta)
        if len(xi) != (genus - 1) // 2 + 1:
            raise ValueError(f"xi must have entries for j = 0 .. {(genus - 1) // 2}")
        if len(delta) != genus // 2:
            raise ValueError(f"delta must have entries for i = 1 .. {genus // 2}")
        if any(x < 0 for x in xi) or any(x < 0 for x in delta):
            raise ValueError("counts are nonnegative")
        if delta0 is not None:
            delta0 = int(delta0)
            if delta0 != xi[0] + 2 * sum(xi[1:]):
                raise ValueError("delta0 must equal xi0 + 2 * sum_{j>=1} xi_j")
        object.__setattr__(self, "genus", genus)
        object.__setattr__(self, "xi", xi)
        object.__setattr__(self, "delta", delta)
        object.__setattr__(self, "delta0", delta0)

    def __setattr__(self, name, value):
        raise AttributeError("InvariantCounts is immutable")

    @classmethod
    def from_maps(
        cls,
        genus: int,
        xi: Optional[Mapping[int, int]] = None,
        delta: Optional[Mapping[int, int]] = None,
    ) -> "InvariantCounts":
        xi = dict(xi or {})
        delta = dict(delta or {})
        jmax = (genus - 1) // 2
        imax = genus // 2
        if any(j < 0 or j > jmax for j in xi):
            raise ValueError(f"xi indices must lie in [0, {jmax}]")
        if any(i < 1 or i > imax for i in delta):
            raise ValueError(f"delta indices must lie in [1, {imax}]")
        xvec = [xi.get(j, 0) for j in range(jmax + 1)]
        dvec = [delta.get(i, 0) for i in range(1, imax + 1)]
        delta0 = xvec[0] + 2 * sum(xvec[1:])
        return cls(genus, xvec, dvec, delta0)

    def xi_j(self, j: int) -> int:
        return self.xi[j]

    def delta_i(self, i: int) -> int:
        return self.delta[i - 1]

    def any_positive(self) -> bool:
        return any(self.xi) or any(self.delta)

    def __eq__(self, other):
        if not isinstance(other, InvariantCounts):
            return NotImplemented
        return (self.genus, self.xi, self.delta) == (other.genus, other.xi, other.delta)

    def __repr__(self):
        return f"InvariantCounts(genus={self.genus}, xi={self.xi}, delta={self.delta})"


def count_invariants(cfg: FiberConfiguration) -> InvariantCounts:
    """Classify every node; xi_0 counts nodes, xi_j (j >= 1) counts pairs."""
    inv = cfg.require_involution()
    g = cfg.genus
    xi: Dict[int, int] = {}
    delta: Dict[int, int] = {}
    seen = set()
    for e in cfg.graph.edges:
        i = node_type(cfg, e.id)
        if i >= 1:
            delta[i] = delta.get(i, 0) + 1
            continue
        partner = inv.edge(e.id)
        if partner == e.id:
            xi[0] = xi.get(0, 0) + 1
            continue
        if e.id in seen:
            continue
        seen.add(partner)
        j = node_subtype(cfg, e.id)
        if j == 0:
            xi[0] = xi.get(0, 0) + 2
        else:
            xi[j] = xi.get(j, 0) + 1
    return InvariantCounts.from_maps(g, xi, delta)


def _require_bound_genus(g: int) -> None:
    if g < 3:
        raise GenusBelowThreeError(
            "genus 2 is covered by an earlier, separately published bound and is "
            "out of scope here; these formulas require genus >= 3"
        )


def omega_self_intersection(counts: InvariantCounts) -> Fraction:
    """(omega, omega) from the node counts via Noether's formula."""
    g = counts.genus
    if g < 2:
        raise GenusRangeError("genus >= 2 required")
    total = Fraction(g - 1, 2 * g + 1) * counts.xi_j(0)
    for j in range(1, (g - 1) // 2 + 1):
        total += Fraction(6 * j * (g - 1 - j) + 2 * (g - 1), 2 * g + 1) * counts.xi_j(j)
    for i in range(1, g // 2 + 1):
        total += (Fraction(12 * i * (g - i), 2 * g + 1) - 1) * counts.delta_i(i)
    return total


def epsilon_fiber_upper(counts: InvariantCounts) -> Fraction:
    """Upper bound for the admissible constant of one fiber's polarized dual
    graph, all nodes given unit length.

    The xi_j coefficient starts with 4(g-1)/(3g) for g >= 5; for g = 3, 4
    the polarization degree 2g - 2 <= 6 forces size <= 4 and the sharper
    (g-1)/g applies.
    """
    g = counts.genus
    _require_bound_genus(g)
    total = Fraction(5 * (g - 1), 12 * g) * counts.xi_j(0)
    first = Fraction(4 * (g - 1), 3 * g) if g >= 5 else Fraction(g - 1, g)
    for j in range(1, (g - 1) // 2 + 1):
        total += (first + Fraction(2 * j * (g - 1 - j), g)) * counts.xi_j(j)
    for i in range(1, g // 2 + 1):
        total += (Fraction(4 * i * (g - 1), g) - 1) * counts.delta_i(i)
    return total


def r0_bound(counts: InvariantCounts) -> Fraction:
    """The effective positive lower bound on the squared Neron-Tate radius:
    strictly positive whenever any count is."""
    g = counts.genus
    _require_bound_genus(g)
    inner = Fraction(2 * g - 5, 12) * counts.xi_j(0)
    for j in range(1, (g - 1) // 2 + 1):
        if g >= 5:
            coeff = Fraction(2 * (3 * j * (g - 1 - j) - g - 2), 3)
        else:
            coeff = Fraction(2 * j * (g - 1 - j) - 1)
        inner += coeff * counts.xi_j(j)
    for i in range(1, g // 2 + 1):
        inner += Fraction(4 * i * (g - i)) * counts.delta_i(i)
    return Fraction((g - 1) ** 2, g * (2 * g + 1)) * inner


def pairing_radicand(counts: InvariantCounts) -> Tuple[Fraction, Dict]:
    """Radicand of the admissible-pairing bound, assembled term by term:
    (g - 1) * ((omega, omega) - sum of per-fiber epsilon upper bounds).

    The report carries the per-quantity breakdown and the main theorem's
    value: the two agree whenever no delta_i with i >= 2 is present (the
    quoted tree bound is loose for i >= 2, where the theorem's sharper
    per-node analysis wins).
    """
    g = counts.genus
    _require_bound_genus(g)
    omega = omega_self_intersection(counts)
    eps_upper = epsilon_fiber_upper(counts)
    radicand = (g - 1) * (omega - eps_upper)
    theorem = r0_bound(counts)
    report = {
        "genus": g,
        "omega_self_intersection": omega,
        "epsilon_upper_total": eps_upper,
        "radicand": radicand,
        "r0_theorem": theorem,
        "warnings": [],
    }
    if not counts.any_positive():
        report["warnings"].append("no singular-fiber data: the bound is vacuous")
    if radicand != theorem:
        report["warnings"].append(
            "delta_i counts with i >= 2 present: the assembled radicand is weaker "
            "than the theorem's r0 (use r0_theorem)"
        )
    return radicand, report


# -- exact realizations of a fiber ------------------------------------


def omega_divisor(cfg: FiberConfiguration) -> Divisor:
    """The relative dualizing polarization: 2*genus(v) - 2 + valence(v)."""
    return Divisor(
        {v: Fraction(2 * cfg.genera[v] - 2 + cfg.graph.valence(v)) for v in cfg.graph.vertices}
    )


def fiber_metrized(cfg: FiberConfiguration) -> Tuple[MetrizedGraph, Divisor]:
    """The fiber as an honest metrized graph with its omega polarization.

    Loops and iota-fixed edges are split at their midpoints (new vertices
    carry coefficient 0), which changes nothing as a metric space; the
    result feeds the exact potential-theory pipeline.
    """
    g = cfg.graph
    inv = cfg.involution
    to_split = [
        e.id for e in g.edges if e.is_loop() or (inv is not None and inv.edge(e.id) == e.id)
    ]
    out = g
    for eid in sorted(to_split):
        out = subdivide_edge(out, eid, out.edge(eid).length / 2)
    out = MetrizedGraph(out.vertices, out.edges)  # loop markers must be gone
    return out, omega_divisor(cfg)


def positive_type_nodes(cfg: FiberConfiguration) -> Tuple[str, ...]:
    return tuple(e.id for e in cfg.graph.edges if node_type(cfg, e.id) >= 1)


def normalized_hyperelliptic(cfg: FiberConfiguration) -> Tuple[HyperellipticGraph, Divisor]:
    """Contract the positive-type nodes and normalize the rest into a
    hyperelliptic graph carrying the pushed omega polarization.

    Chain vertices removed by the normalization must carry coefficient 0
    (they correspond to (-2)-rational components); anything else means the
    input was not a hyperelliptic configuration.
    """
    inv = cfg.require_involution()
    positive = positive_type_nodes(cfg)
    contracted, vmap = contract(cfg.graph, positive)
    new_inv = Involution(
        {v: vmap[inv.vertex(v)] for v in contracted.vertices},
        {e.id: inv.edge(e.id) for e in contracted.edges},
    )
    h = normalize_fiber(contracted, new_inv)
    pushed = push_divisor(omega_divisor(cfg), vmap)
    surviving = set(h.graph.vertices)
    dropped = {v: c for v, c in pushed.coefficients.items() if v not in surviving}
    if dropped:
        raise NotHyperellipticConfigurationError(
            f"normalization removed vertices with nonzero polarization: {sorted(dropped)}"
        )
    return h, Divisor({v: pushed.coefficient(v) for v in surviving})
