"""Metrized graphs: finite multigraphs with positive rational edge lengths.

This is the ambient object of all the potential theory in this package: a
finite connected multigraph whose edges carry exact rational lengths, viewed
as a metric space.  Vertex and edge ids are opaque strings; every operation
is a pure function returning new values, and operations that rename vertices
(contraction, restriction) return the explicit vertex surjection so divisors
and involutions can be transported deterministically.

Self-loops are rejected at construction for analytic use.  Contraction may
create them; such "loop markers" are retained (the result is built with
``allow_loops=True``) and may only be consumed by combinatorial code, never
by the potential-theory solver.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Tuple

from .errors import DisconnectedGraphError, InvalidGraphError, UnknownIdError
from .rationals import as_fraction, format_rational


@dataclass(frozen=True)
class Edge:
    id: str
    ends: Tuple[str, str]
    length: Fraction

    def other_end(self, v: str) -> str:
        u, w = self.ends
        if v == u:
            return w
        if v == w:
            return u
        raise UnknownIdError(f"vertex {v!r} is not an end of edge {self.id!r}")

    def is_loop(self) -> bool:
        return self.ends[0] == self.ends[1]


class MetrizedGraph:
    """Immutable multigraph with rational edge lengths.

    Construction enforces referential integrity (edge ends must be declared
    vertices, ids unique) and rejects self-loops unless ``allow_loops``.
    Connectivity and length positivity are *reported* by
    :func:`validate_graph` rather than enforced here, so that invalid
    documents can be loaded and diagnosed; analytic entry points call
    :meth:`require_analytic` before doing any work.
    """

    __slots__ = ("vertices", "edges", "_edge_by_id", "allow_loops")

    def __init__(self, vertices: Iterable[str], edges: Iterable, *, allow_loops: bool = False):
        verts = tuple(sorted(vertices))
        if not verts:
            raise InvalidGraphError("a graph needs at least one vertex")
        if len(set(verts)) != len(verts):
            raise InvalidGraphError("duplicate vertex ids")
        vertex_set = frozenset(verts)

        normalized: List[Edge] = []
        for item in edges:
            if isinstance(item, Edge):
                e = Edge(item.id, (item.ends[0], item.ends[1]), as_fraction(item.length))
            else:
                eid, ends, length = item
                e = Edge(str(eid), (ends[0], ends[1]), as_fraction(length))
            if e.ends[0] not in vertex_set or e.ends[1] not in vertex_set:
                raise UnknownIdError(f"edge {e.id!r} references an unknown vertex")
            if e.is_loop() and not allow_loops:
                raise InvalidGraphError(f"edge {e.id!r} is a self-loop")
            normalized.append(e)
        ids = [e.id for e in normalized]
        if len(set(ids)) != len(ids):
            raise InvalidGraphError("duplicate edge ids")

        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "edges", tuple(normalized))
        object.__setattr__(self, "_edge_by_id", {e.id: e for e in normalized})
        object.__setattr__(self, "allow_loops", allow_loops)

    def __setattr__(self, name, value):
        raise AttributeError("MetrizedGraph is immutable")

    def __eq__(self, other):
        if not isinstance(other, MetrizedGraph):
            return NotImplemented
        return set(self.vertices) == set(other.vertices) and set(self.edges) == set(other.edges)

    def __repr__(self):
        return f"MetrizedGraph({len(self.vertices)} vertices, {len(self.edges)} edges)"

    # -- lookups -------------------------------------------------------

    def edge(self, edge_id: str) -> Edge:
        try:
            return self._edge_by_id[edge_id]
        except KeyError:
            raise UnknownIdError(f"unknown edge {edge_id!r}") from None

    def has_vertex(self, v: str) -> bool:
        return v in set(self.vertices)

    def require_vertex(self, v: str) -> None:
        if not self.has_vertex(v):
            raise UnknownIdError(f"unknown vertex {v!r}")

    def edge_ids(self) -> Tuple[str, ...]:
        return tuple(e.id for e in self.edges)

    def adjacency(self) -> Dict[str, List[Tuple[str, str]]]:
        """vertex -> sorted list of (neighbour, edge id); loops appear twice."""
        adj: Dict[str, List[Tuple[str, str]]] = {v: [] for v in self.vertices}
        for e in self.edges:
            u, w = e.ends
            adj[u].append((w, e.id))
            if u != w:
                adj[w].append((u, e.id))
            else:
                adj[u].append((w, e.id))
        for v in adj:
            adj[v].sort()
        return adj

    def valence(self, v: str) -> int:
        """Number of edge ends at v (a loop counts twice)."""
        self.require_vertex(v)
        count = 0
        for e in self.edges:
            count += (e.ends[0] == v) + (e.ends[1] == v)
        return count

    def loops(self) -> Tuple[Edge, ...]:
        return tuple(e for e in self.edges if e.is_loop())

    def total_length(self) -> Fraction:
        return sum((e.length for e in self.edges), Fraction(0))

    def is_connected(self) -> bool:
        seen = {self.vertices[0]}
        stack = [self.vertices[0]]
        adj = self.adjacency()
        while stack:
            v = stack.pop()
            for w, _ in adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(self.vertices)

    def first_betti_number(self) -> int:
        if not self.is_connected():
            raise DisconnectedGraphError("Betti number computed for connected graphs only")
        return len(self.edges) - len(self.vertices) + 1

    def require_analytic(self) -> None:
        """Guard for the potential-theory pipeline: connected, positive
        lengths, no loops."""
        report = validate_graph(self)
        if not report.valid:
            first = report.problems[0]
            if "not connected" in first:
                raise DisconnectedGraphError(first)
            raise InvalidGraphError(first)


@dataclass(frozen=True)
class ValidationReport:
    valid: bool
    problems: Tuple[str, ...]


def validate_graph(g: MetrizedGraph) -> ValidationReport:
    """Report all invariant violations; a valid report certifies the graph
    for analytic use."""
    problems = []
    for e in g.edges:
        if e.length <= 0:
            problems.append(f"edge {e.id!r}: nonpositive length {format_rational(e.length)}")
        if e.is_loop():
            problems.append(f"edge {e.id!r}: self-loop at {e.ends[0]!r}")
    if not g.is_connected():
        problems.append("graph is not connected")
    return ValidationReport(valid=not problems, problems=tuple(problems))


class Divisor:
    """Formal rational-coefficient sum of vertices (a polarization).

    Zero coefficients are dropped at construction; the degree is the exact
    coefficient sum.
    """

    __slots__ = ("coefficients",)

    def __init__(self, coefficients: Mapping[str, object] | None = None):
        coeffs = {}
        for v, c in (coefficients or {}).items():
            c = as_fraction(c)
            if c != 0:
                coeffs[v] = c
        object.__setattr__(self, "coefficients", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("Divisor is immutable")

    def coefficient(self, v: str) -> Fraction:
        return self.coefficients.get(v, Fraction(0))

    @property
    def degree(self) -> Fraction:
        return sum(self.coefficients.values(), Fraction(0))

    def support(self) -> Tuple[str, ...]:
        return tuple(sorted(self.coefficients))

    def __eq__(self, other):
        if not isinstance(other, Divisor):
            return NotImplemented
        return self.coefficients == other.coefficients

    def __repr__(self):
        terms = " + ".join(
            f"{format_rational(c)}*{v}" for v, c in sorted(self.coefficients.items())
        )
        return f"Divisor({terms or '0'})"


def canonical_divisor(g: MetrizedGraph) -> Divisor:
    """(valence - 2) at every vertex; degree 2*b1 - 2 on connected graphs."""
    return Divisor({v: Fraction(g.valence(v) - 2) for v in g.vertices})


# -- contraction / restriction ----------------------------------------


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            # keep the lexicographically smaller id as representative
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


def contract(g: MetrizedGraph, edge_ids: Iterable[str]) -> Tuple[MetrizedGraph, Dict[str, str]]:
    """Collapse the given edges; remaining edges keep their ids and lengths.

    Returns the contracted graph together with the vertex surjection
    Vert(G) -> Vert(G_S).  Merged vertices are named by the lexicographically
    smallest member id.  Remaining edges whose ends become identified are
    kept as loop markers (usable by combinatorics, not by the solver).
    """
    ids = set(edge_ids)
    for eid in ids:
        g.edge(eid)
    uf = _UnionFind(g.vertices)
    for eid in ids:
        e = g.edge(eid)
        if not e.is_loop():
            uf.union(*e.ends)
    vmap = {v: uf.find(v) for v in g.vertices}
    new_vertices = sorted(set(vmap.values()))
    new_edges = [
        Edge(e.id, (vmap[e.ends[0]], vmap[e.ends[1]]), e.length)
        for e in g.edges
        if e.id not in ids
    ]
    return MetrizedGraph(new_vertices, new_edges, allow_loops=True), vmap


def restrict(g: MetrizedGraph, edge_ids: Iterable[str]) -> Tuple[MetrizedGraph, Dict[str, str]]:
    """Contract the complement: G^S = G_{Ed(G) \\ S}."""
    keep = set(edge_ids)
    for eid in keep:
        g.edge(eid)
    complement = [e.id for e in g.edges if e.id not in keep]
    return contract(g, complement)


def push_divisor(d: Divisor, vertex_map: Mapping[str, str]) -> Divisor:
    """Push a divisor through a vertex surjection; the degree is preserved."""
    coeffs: Dict[str, Fraction] = {}
    for v, c in d.coefficients.items():
        if v not in vertex_map:
            raise UnknownIdError(f"vertex {v!r} outside the map domain")
        image = vertex_map[v]
        coeffs[image] = coeffs.get(image, Fraction(0)) + c
    return Divisor(coeffs)


def one_point_sum(g1: MetrizedGraph, v1: str, g2: MetrizedGraph, v2: str) -> MetrizedGraph:
    """Disjoint union with v1 identified to v2 (the join keeps v1's id)."""
    g1.require_vertex(v1)
    g2.require_vertex(v2)
    others2 = [v for v in g2.vertices if v != v2]
    clash = (set(g1.vertices) & set(others2)) or (set(g1.edge_ids()) & set(g2.edge_ids()))
    if clash:
        raise InvalidGraphError(f"one_point_sum requires disjoint ids; shared: {sorted(clash)}")
    rename = {v2: v1}
    vertices = list(g1.vertices) + others2
    edges = list(g1.edges)
    for e in g2.edges:
        u, w = (rename.get(x, x) for x in e.ends)
        edges.append(Edge(e.id, (u, w), e.length))
    loops = g1.allow_loops or g2.allow_loops
    return MetrizedGraph(vertices, edges, allow_loops=loops)


# -- irreducible decomposition ----------------------------------------


def irreducible_decomposition(g: MetrizedGraph) -> List[MetrizedGraph]:
    """Blocks of the graph: maximal subgraphs without a separating vertex.

    These are the closures of the connected components of G minus its cut
    vertices; a bridge edge is a block of its own, and the one-point graph
    decomposes into nothing.  Components are returned in lexicographic order
    of their smallest vertex id (then vertex tuple, then smallest edge id)
    so output is deterministic.
    """
    if not g.is_connected():
        raise DisconnectedGraphError("decomposition requires a connected graph")

    blocks: List[List[str]] = [[e.id] for e in g.loops()]
    adj = g.adjacency()
    disc: Dict[str, int] = {}
    low: Dict[str, int] = {}
    edge_stack: List[str] = []
    used_edges = set(e.id for e in g.loops())
    counter = [0]

    def dfs(root: str) -> None:
        stack = [(root, None, iter(adj[root]))]
        disc[root] = low[root] = counter[0]
        counter[0] += 1
        while stack:
            v, parent_eid, it = stack[-1]
            advanced = False
            for w, eid in it:
                if eid == parent_eid or eid in used_edges:
                    continue
                used_edges.add(eid)
                edge_stack.append(eid)
                if w not in disc:
                    disc[w] = low[w] = counter[0]
                    counter[0] += 1
                    stack.append((w, eid, iter(adj[w])))
                    advanced = True
                    break
                low[v] = min(low[v], disc[w])
            if advanced:
                continue
            stack.pop()
            if stack:
                u, _, _ = stack[-1]
                low[u] = min(low[u], low[v])
                if low[v] >= disc[u]:
                    comp = []
                    while True:
                        eid = edge_stack.pop()
                        comp.append(eid)
                        if eid == parent_eid:
                            break
                    blocks.append(comp)

    if len(g.vertices) > 1 or g.edges:
        dfs(g.vertices[0])

    result = []
    for comp in blocks:
        edges = [g.edge(eid) for eid in comp]
        verts = sorted({v for e in edges for v in e.ends})
        loops = any(e.is_loop() for e in edges)
        result.append(MetrizedGraph(verts, edges, allow_loops=loops))
    result.sort(key=lambda b: (b.vertices[0], b.vertices, min(b.edge_ids())))
    return result


def subdivide_edge(
    g: MetrizedGraph,
    edge_id: str,
    t: Fraction,
    *,
    new_vertex: str | None = None,
    new_edge_ids: Tuple[str, str] | None = None,
) -> MetrizedGraph:
    """Split an edge at arc length t from its first end.

    The edge is replaced by two edges of lengths t and length - t through a
    fresh degree-2 vertex; as a metric space the graph is unchanged.
    Deterministic default names: vertex "<id>.m", edges "<id>.a"/"<id>.b".
    """
    e = g.edge(edge_id)
    t = as_fraction(t)
    if not (0 < t < e.length):
        raise ValueError(f"t out of range: need 0 < {t} < {e.length}")
    mid = new_vertex if new_vertex is not None else f"{edge_id}.m"
    first, second = new_edge_ids if new_edge_ids is not None else (f"{edge_id}.a", f"{edge_id}.b")
    if mid in set(g.vertices):
        raise InvalidGraphError(f"vertex id {mid!r} already taken")
    existing = set(g.edge_ids()) - {edge_id}
    if {first, second} & existing or first == second:
        raise InvalidGraphError("subdivision edge ids already taken")
    u, w = e.ends
    edges = [x for x in g.edges if x.id != edge_id]
    edges.append(Edge(first, (u, mid), t))
    edges.append(Edge(second, (mid, w), e.length - t))
    return MetrizedGraph(list(g.vertices) + [mid], edges, allow_loops=g.allow_loops)
