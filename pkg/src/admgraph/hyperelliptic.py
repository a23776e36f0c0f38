"""Graphs with a hyperelliptic involution.

A hyperelliptic graph is a connected graph G with an order-2 homeomorphism
iota such that (1) every edge is a closed interval (no self-loops),
(2) iota(e) != e for every edge, (3) every non-fixed vertex has at least
three incident edge ends, and (4) the quotient G/<iota> is a tree.

Edges are classified by e . iota(e): empty intersection (disjoint), one
common vertex (one-jointed), two (two-jointed, always a parallel pair
forming a simple component).  Edge classes {e, iota(e)} are named by the
lexicographically smaller member id so polynomial variables and documents
are deterministic.

``normalize_fiber`` turns the dual graph of a semistable fiber (where
iota-fixed edges and loops are allowed) into an honest hyperelliptic graph:
fixed edges are split at their midpoint (the new vertex is fixed, the two
halves are swapped) and non-fixed vertices with exactly two edge ends are
removed, merging their edges; both moves preserve the underlying metric
space.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Tuple

from .errors import (
    AxiomViolationError,
    DisconnectedGraphError,
    FixedVertexError,
    InvolutionMalformedError,
    NotHyperellipticConfigurationError,
    NotSimpleRestrictionError,
    PolarizationShapeError,
    UnknownIdError,
)
from .graph import (
    Divisor,
    Edge,
    MetrizedGraph,
    contract,
    irreducible_decomposition,
    push_divisor,
    validate_graph,
)


class Involution:
    """Order-<=2 symmetry: permutations of vertex and edge ids."""

    __slots__ = ("vertex_map", "edge_map")

    def __init__(self, vertex_map: Mapping[str, str], edge_map: Mapping[str, str]):
        object.__setattr__(self, "vertex_map", dict(vertex_map))
        object.__setattr__(self, "edge_map", dict(edge_map))

    def __setattr__(self, name, value):
        raise AttributeError("Involution is immutable")

    def vertex(self, v: str) -> str:
        try:
            return self.vertex_map[v]
        except KeyError:
            raise UnknownIdError(f"involution undefined on vertex {v!r}") from None

    def edge(self, e: str) -> str:
        try:
            return self.edge_map[e]
        except KeyError:
            raise UnknownIdError(f"involution undefined on edge {e!r}") from None

    def fixes_vertex(self, v: str) -> bool:
        return self.vertex(v) == v

    def fixes_edge(self, e: str) -> bool:
        return self.edge(e) == e

    @staticmethod
    def identity(g: MetrizedGraph) -> "Involution":
        return Involution({v: v for v in g.vertices}, {e: e for e in g.edge_ids()})


def check_involution(g: MetrizedGraph, inv: Involution, *, allow_fixed_edges: bool = False) -> None:
    """Structural validation: permutations squaring to the identity that are
    endpoint- and length-compatible.  Raises InvolutionMalformedError."""
    vset, eset = set(g.vertices), set(g.edge_ids())
    if set(inv.vertex_map) != vset or set(inv.vertex_map.values()) != vset:
        raise InvolutionMalformedError("vertex map is not a permutation of the vertex set")
    if set(inv.edge_map) != eset or set(inv.edge_map.values()) != eset:
        raise InvolutionMalformedError("edge map is not a permutation of the edge set")
    for v in g.vertices:
        if inv.vertex(inv.vertex(v)) != v:
            raise InvolutionMalformedError(f"vertex map does not square to identity at {v!r}")
    for e in g.edges:
        partner_id = inv.edge(e.id)
        if inv.edge(partner_id) != e.id:
            raise InvolutionMalformedError(f"edge map does not square to identity at {e.id!r}")
        partner = g.edge(partner_id)
        if {inv.vertex(x) for x in e.ends} != set(partner.ends):
            raise InvolutionMalformedError(f"edge map incompatible with endpoints at {e.id!r}")
        if partner.length != e.length:
            raise InvolutionMalformedError(f"lengths differ within the orbit of {e.id!r}")
        if not allow_fixed_edges and partner_id == e.id:
            raise InvolutionMalformedError(f"edge {e.id!r} is fixed by the involution")


class EdgeKind(Enum):
    DISJOINT = "disjoint"
    ONE_JOINTED = "one-jointed"
    TWO_JOINTED = "two-jointed"


def class_name(inv: Involution, edge_id: str) -> str:
    return min(edge_id, inv.edge(edge_id))


@dataclass(frozen=True, eq=False)
class HyperellipticGraph:
    """A validated hyperelliptic graph with its derived combinatorics."""

    graph: MetrizedGraph
    involution: Involution
    fixed_vertices: frozenset
    nonfixed_vertices: frozenset
    edge_kinds: Mapping[str, EdgeKind]
    class_members: Mapping[str, Tuple[str, ...]]
    class_of: Mapping[str, str]
    quotient: MetrizedGraph

    def classes(self) -> Tuple[str, ...]:
        return tuple(sorted(self.class_members))

    def class_kind(self, cname: str) -> EdgeKind:
        return self.edge_kinds[self.class_members[cname][0]]

    def class_length(self, cname: str) -> Fraction:
        return self.graph.edge(self.class_members[cname][0]).length

    def classes_of_kind(self, kind: EdgeKind) -> Tuple[str, ...]:
        return tuple(c for c in self.classes() if self.class_kind(c) is kind)

    def lengths(self) -> Dict[str, Fraction]:
        return {c: self.class_length(c) for c in self.classes()}


def _edge_kind(g: MetrizedGraph, inv: Involution, e: Edge) -> EdgeKind:
    partner = g.edge(inv.edge(e.id))
    shared = set(e.ends) & set(partner.ends)
    if len(shared) == 0:
        return EdgeKind.DISJOINT
    if len(shared) == 1:
        return EdgeKind.ONE_JOINTED
    return EdgeKind.TWO_JOINTED


def validate_hyperelliptic(g: MetrizedGraph, inv: Involution) -> HyperellipticGraph:
    """Check the four axioms and return the graph with derived data.

    Raises AxiomViolationError(n) naming the failed clause, or
    InvolutionMalformedError if the involution itself is broken.
    """
    report = validate_graph(g)
    if any("not connected" in p for p in report.problems):
        raise DisconnectedGraphError("hyperelliptic graphs are connected")
    if any("nonpositive" in p for p in report.problems):
        raise AxiomViolationError(1, "edge lengths must be positive")
    check_involution(g, inv, allow_fixed_edges=True)

    if g.loops():
        raise AxiomViolationError(1, f"edge {g.loops()[0].id!r} is not a closed interval")
    for e in g.edges:
        if inv.fixes_edge(e.id):
            raise AxiomViolationError(2, f"iota fixes edge {e.id!r}")
    fixed = frozenset(v for v in g.vertices if inv.fixes_vertex(v))
    nonfixed = frozenset(g.vertices) - fixed
    for v in sorted(nonfixed):
        if g.valence(v) < 3:
            raise AxiomViolationError(3, f"non-fixed vertex {v!r} has fewer than three edges")

    kinds = {e.id: _edge_kind(g, inv, e) for e in g.edges}
    members: Dict[str, Tuple[str, ...]] = {}
    class_of: Dict[str, str] = {}
    for e in g.edges:
        cname = class_name(inv, e.id)
        class_of[e.id] = cname
        members.setdefault(cname, tuple())
    for cname in members:
        pair = sorted({cname, inv.edge(cname)})
        members[cname] = tuple(pair)

    vclass = {v: min(v, inv.vertex(v)) for v in g.vertices}
    qvertices = sorted(set(vclass.values()))
    qedges = []
    for cname, pair in sorted(members.items()):
        e = g.edge(pair[0])
        qedges.append((cname, (vclass[e.ends[0]], vclass[e.ends[1]]), e.length))
    quotient = MetrizedGraph(qvertices, qedges, allow_loops=True)
    if quotient.loops() or len(qedges) != len(qvertices) - 1:
        raise AxiomViolationError(4, "the quotient by iota has a loop (it must be a tree)")

    return HyperellipticGraph(
        graph=g,
        involution=inv,
        fixed_vertices=fixed,
        nonfixed_vertices=nonfixed,
        edge_kinds=kinds,
        class_members=members,
        class_of=class_of,
        quotient=quotient,
    )


def classify_edges(h: HyperellipticGraph) -> Dict[str, EdgeKind]:
    """Total partition of the edges into disjoint / one-jointed / two-jointed."""
    return dict(h.edge_kinds)


def contract_classes(
    h: HyperellipticGraph, class_names: Iterable[str]
) -> Tuple[MetrizedGraph, Involution, Dict[str, str]]:
    """Contract whole edge classes, transporting the involution.

    The result is raw (it may fail the axioms, e.g. for restriction tests);
    validate it with :func:`validate_hyperelliptic` if structure is needed.
    """
    names = set(class_names)
    for c in names:
        if c not in h.class_members:
            raise UnknownIdError(f"unknown edge class {c!r}")
    edge_ids = [e for c in names for e in h.class_members[c]]
    contracted, vmap = contract(h.graph, edge_ids)
    inv = h.involution
    new_vmap = {}
    for v in contracted.vertices:
        new_vmap[v] = vmap[inv.vertex(v)]
    new_emap = {e.id: inv.edge(e.id) for e in contracted.edges}
    return contracted, Involution(new_vmap, new_emap), vmap


def restrict_classes(
    h: HyperellipticGraph, class_names: Iterable[str]
) -> Tuple[MetrizedGraph, Involution, Dict[str, str]]:
    """Contract the complement of the given classes (G^S)."""
    keep = set(class_names)
    for c in keep:
        if c not in h.class_members:
            raise UnknownIdError(f"unknown edge class {c!r}")
    return contract_classes(h, [c for c in h.class_members if c not in keep])


def is_semisimple_of_size(g: MetrizedGraph, inv: Involution, n: int) -> bool:
    """Is (g, inv) a semisimple hyperelliptic graph with n simple components?

    Semisimple graphs consist of two-jointed parallel pairs only, so every
    vertex is fixed; with n classes on n+1 vertices the class graph is a
    tree, which makes each pair a simple component.
    """
    if g.loops():
        return False
    if any(inv.vertex(v) != v for v in g.vertices):
        return False
    classes = {class_name(inv, e.id) for e in g.edges}
    return len(classes) == n and len(g.vertices) == n + 1


def component_structures(h: HyperellipticGraph) -> List[HyperellipticGraph]:
    """The irreducible components, each as a validated hyperelliptic graph.

    Components are iota-stable, and a graph is hyperelliptic exactly when
    all its components are.
    """
    inv = h.involution
    out = []
    for block in irreducible_decomposition(h.graph):
        vset, eset = set(block.vertices), set(block.edge_ids())
        if {inv.vertex(v) for v in vset} != vset or {inv.edge(e) for e in eset} != eset:
            raise InvolutionMalformedError("irreducible component is not iota-stable")
        sub = Involution(
            {v: inv.vertex(v) for v in vset}, {e: inv.edge(e) for e in eset}
        )
        out.append(validate_hyperelliptic(block, sub))
    return out


def is_simple(h: HyperellipticGraph) -> bool:
    """The simple graph SG: one two-jointed pair on two vertices."""
    return (
        len(h.graph.edges) == 2
        and len(h.graph.vertices) == 2
        and len(h.class_members) == 1
        and all(k is EdgeKind.TWO_JOINTED for k in h.edge_kinds.values())
    )


def graph_size(h: HyperellipticGraph) -> int:
    """sz(G): 1 for a simple component, #one-jointed classes - 1 otherwise,
    summed over irreducible components."""
    total = 0
    for comp in component_structures(h):
        if is_simple(comp):
            total += 1
        else:
            total += len(comp.classes_of_kind(EdgeKind.ONE_JOINTED)) - 1
    return total


def nu_counts(h: HyperellipticGraph, v: str) -> Tuple[int, int, int]:
    """(nu0, nu1, nu) at a non-fixed vertex: numbers of disjoint and
    one-jointed edges starting from v, and their sum."""
    h.graph.require_vertex(v)
    if v in h.fixed_vertices:
        raise FixedVertexError(f"vertex {v!r} is fixed; nu is defined on non-fixed vertices")
    nu0 = nu1 = 0
    for e in h.graph.edges:
        if v not in e.ends:
            continue
        kind = h.edge_kinds[e.id]
        if kind is EdgeKind.DISJOINT:
            nu0 += 1
        elif kind is EdgeKind.ONE_JOINTED:
            nu1 += 1
    return nu0, nu1, nu0 + nu1


def divisor_is_invariant(d: Divisor, inv: Involution) -> bool:
    return all(d.coefficient(inv.vertex(v)) == c for v, c in d.coefficients.items())


def w_weight(h: HyperellipticGraph, d: Divisor, cname: str) -> Fraction:
    """w(e-class) = min{a, b} where restricting the graph to the class gives
    the simple graph and the divisor pushes to aP + bQ."""
    if not divisor_is_invariant(d, h.involution):
        raise PolarizationShapeError("w is defined for iota-invariant divisors")
    restricted, rinv, vmap = restrict_classes(h, [cname])
    if not is_semisimple_of_size(restricted, rinv, 1):
        raise NotSimpleRestrictionError(
            f"restriction to class {cname!r} is not the simple graph"
        )
    pushed = push_divisor(d, vmap)
    p, q = restricted.vertices
    return min(pushed.coefficient(p), pushed.coefficient(q))


# -- semistable-fiber normalization -----------------------------------


def normalize_fiber(dual: MetrizedGraph, inv: Involution) -> HyperellipticGraph:
    """Normalize a fiber's dual graph (fixed edges/loops allowed) into a
    hyperelliptic graph isometric to the input.

    Every iota-fixed edge is split at its midpoint: its endpoints must be
    swapped by iota (or it must be a loop at a fixed vertex, which becomes a
    parallel pair); the midpoint is fixed and the halves are swapped.  Then
    every non-fixed vertex with exactly two edge ends is removed, merging
    its edges and adding lengths.  The caller must contract positive-type
    nodes first; any axiom failure in the result is reported as
    NotHyperellipticConfigurationError.
    """
    check_involution(dual, inv, allow_fixed_edges=True)

    vertices = list(dual.vertices)
    edges = {e.id: e for e in dual.edges}
    vmap = dict(inv.vertex_map)
    emap = dict(inv.edge_map)

    for eid in sorted(edges):
        if emap[eid] != eid:
            continue
        e = edges[eid]
        u, w = e.ends
        if e.is_loop():
            if vmap[u] != u:
                raise NotHyperellipticConfigurationError(
                    f"fixed loop {eid!r} at a non-fixed vertex"
                )
        elif not (vmap[u] == w and vmap[w] == u):
            raise NotHyperellipticConfigurationError(
                f"fixed edge {eid!r} does not swap its endpoints "
                "(positive-type nodes must be contracted first)"
            )
        mid, first, second = f"{eid}.m", f"{eid}.a", f"{eid}.b"
        if mid in vertices or first in edges or second in edges:
            raise NotHyperellipticConfigurationError(f"midpoint ids for {eid!r} already taken")
        half = e.length / 2
        del edges[eid]
        del emap[eid]
        edges[first] = Edge(first, (u, mid), half)
        edges[second] = Edge(second, (mid, w), half)
        vertices.append(mid)
        vmap[mid] = mid
        emap[first] = second
        emap[second] = first

    # drop non-fixed degree-2 vertices, merging their two edges
    def edge_ends_at(v):
        out = []
        for e in edges.values():
            if e.ends[0] == v:
                out.append((e.id, 1))
            if e.ends[1] == v:
                out.append((e.id, 0))
        return out

    removable = sorted(
        v for v in vertices if vmap[v] != v and len(edge_ends_at(v)) == 2
    )
    for v in removable:
        ends = edge_ends_at(v)
        if len(ends) != 2:
            continue  # valence changed by an earlier merge
        (eid1, keep1), (eid2, keep2) = ends
        if eid1 == eid2:
            raise NotHyperellipticConfigurationError(
                f"cannot remove vertex {v!r}: it carries a loop"
            )
        e1, e2 = edges[eid1], edges[eid2]
        a, b = e1.ends[keep1], e2.ends[keep2]
        if a == v or b == v:
            # chain closing on itself without a surviving vertex
            raise NotHyperellipticConfigurationError(
                f"removable chain through {v!r} closes into a circle"
            )
        merged_id = min(eid1, eid2)
        partner1, partner2 = emap.pop(eid1), emap.pop(eid2)
        del edges[eid1], edges[eid2]
        edges[merged_id] = Edge(merged_id, (a, b), e1.length + e2.length)
        # the iota-image chain merges to the partners' min id; record the
        # pairing now (the partner merge will overwrite consistently)
        merged_partner = min(partner1, partner2)
        emap[merged_id] = merged_partner
        vertices.remove(v)
        del vmap[v]

    graph = MetrizedGraph(vertices, list(edges.values()), allow_loops=True)
    try:
        return validate_hyperelliptic(graph, Involution(vmap, emap))
    except (AxiomViolationError, InvolutionMalformedError, DisconnectedGraphError) as exc:
        raise NotHyperellipticConfigurationError(str(exc)) from exc
