"""Exact potential theory on metrized graphs.

Effective resistance, the canonical and admissible measures, Green's
functions and the admissible constant, all solved over exact rationals.

The Green's function g(x, y) of a polarized graph (G, D) with deg D != -2 is
pinned down by five properties: the admissible measure has total mass 1;
g is symmetric and continuous; Delta_y g(x, .) = delta_x - mu; the integral
of g(x, .) against mu vanishes; and g(D, y) + g(y, y) is constant in y.  The
solver fixes all sign conventions by *requiring* these properties of its
output: on each edge g'' equals the measure's density, at each vertex the
outgoing slopes sum to mu({v}) - [v = source], and every property is
asserted post-hoc (a violation raises SolverFaultError, never returns).

On an edge of length l parameterized by arc length s from its first end,
g(s) = (density/2) s^2 + beta s + g(start), so the only true unknowns are
the vertex values; flux balance gives a weighted-Laplacian system whose rows
sum to zero exactly, and the normalization integral replaces the redundant
row.  Everything is solved by plain rational Gaussian elimination with
first-nonzero pivoting (no tolerances exist; arithmetic is exact).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Mapping, Tuple

from .errors import (
    ConstancyViolationError,
    DegreeMinusTwoError,
    SolverFaultError,
    UnknownIdError,
)
from .graph import Divisor, MetrizedGraph
from .rationals import INFINITY, as_fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def solve_linear(matrix: List[List[Fraction]], rhs: List[List[Fraction]]) -> List[List[Fraction]]:
    """Solve A X = B exactly for square A; B holds one column per solve.

    Gaussian elimination, pivot = first row with a nonzero entry in column
    order, so the elimination path is deterministic.
    """
    n = len(matrix)
    a = [row[:] for row in matrix]
    b = [row[:] for row in rhs]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            raise SolverFaultError("singular linear system")
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            b[col], b[pivot] = b[pivot], b[col]
        inv = a[col][col]
        for r in range(col + 1, n):
            factor = a[r][col] / inv
            if factor == 0:
                continue
            for c in range(col, n):
                a[r][c] -= factor * a[col][c]
            for c in range(len(b[r])):
                b[r][c] -= factor * b[col][c]
    for col in range(n - 1, -1, -1):
        inv = a[col][col]
        for c in range(len(b[col])):
            acc = b[col][c]
            for k in range(col + 1, n):
                acc -= a[col][k] * b[k][c]
            b[col][c] = acc / inv
    return b


def _laplacian(g: MetrizedGraph, order: Tuple[str, ...]) -> List[List[Fraction]]:
    """Weighted graph Laplacian with conductance 1/length per edge."""
    index = {v: i for i, v in enumerate(order)}
    n = len(order)
    lap = [[ZERO] * n for _ in range(n)]
    for e in g.edges:
        u, w = e.ends
        c = ONE / e.length
        iu, iw = index[u], index[w]
        lap[iu][iu] += c
        lap[iw][iw] += c
        lap[iu][iw] -= c
        lap[iw][iu] -= c
    return lap


def effective_resistance(g: MetrizedGraph, p: str, q: str) -> Fraction:
    """Electrical resistance between p and q, each edge a resistor of value
    equal to its length."""
    g.require_vertex(p)
    g.require_vertex(q)
    g.require_analytic()
    if p == q:
        return ZERO
    order = g.vertices
    index = {v: i for i, v in enumerate(order)}
    lap = _laplacian(g, order)
    n = len(order)
    # ground the last vertex: replace its row by x_ground = 0
    lap[n - 1] = [ZERO] * n
    lap[n - 1][n - 1] = ONE
    rhs = [[ZERO] for _ in range(n)]
    rhs[index[p]][0] += ONE
    rhs[index[q]][0] -= ONE
    rhs[n - 1][0] = ZERO  # the grounded row reads x_ground = 0
    x = solve_linear(lap, rhs)
    return x[index[p]][0] - x[index[q]][0]


def cross_resistance(g: MetrizedGraph, edge_id: str):
    """Resistance across an edge's ends with its open interior removed.

    INFINITY exactly when the edge is a bridge.
    """
    e = g.edge(edge_id)
    g.require_analytic()
    rest = MetrizedGraph(g.vertices, [x for x in g.edges if x.id != edge_id])
    if not rest.is_connected():
        return INFINITY
    return effective_resistance(rest, e.ends[0], e.ends[1])


class Measure:
    """Measure with rational point masses at vertices and uniform densities
    (mass per unit length) on edges."""

    __slots__ = ("vertex_masses", "edge_densities")

    def __init__(self, vertex_masses: Mapping[str, object], edge_densities: Mapping[str, object]):
        object.__setattr__(
            self, "vertex_masses", {v: as_fraction(m) for v, m in vertex_masses.items()}
        )
        object.__setattr__(
            self, "edge_densities", {e: as_fraction(d) for e, d in edge_densities.items()}
        )

    def __setattr__(self, name, value):
        raise AttributeError("Measure is immutable")

    def mass_at(self, v: str) -> Fraction:
        return self.vertex_masses.get(v, ZERO)

    def density_on(self, edge_id: str) -> Fraction:
        return self.edge_densities.get(edge_id, ZERO)

    def total_mass(self, g: MetrizedGraph) -> Fraction:
        total = sum(self.vertex_masses.values(), ZERO)
        for e in g.edges:
            total += self.density_on(e.id) * e.length
        return total

    def __eq__(self, other):
        if not isinstance(other, Measure):
            return NotImplemented

        def nonzero(mapping):
            return {k: x for k, x in mapping.items() if x != 0}

        return nonzero(self.vertex_masses) == nonzero(other.vertex_masses) and nonzero(
            self.edge_densities
        ) == nonzero(other.edge_densities)


def canonical_measure(g: MetrizedGraph) -> Measure:
    """Mass 1 - valence/2 at each vertex, density 1/(l_e + r_e) on each edge
    (0 on bridges, the r_e -> infinity limit).  Total mass is exactly 1."""
    g.require_analytic()
    masses = {v: ONE - Fraction(g.valence(v), 2) for v in g.vertices}
    densities = {}
    for e in g.edges:
        r = cross_resistance(g, e.id)
        densities[e.id] = ZERO if r is INFINITY else ONE / (e.length + r)
    mu = Measure(masses, densities)
    if mu.total_mass(g) != 1:
        raise SolverFaultError("canonical measure mass != 1")
    return mu


def admissible_measure(g: MetrizedGraph, d: Divisor) -> Measure:
    """(delta_D + 2 * canonical) / (deg D + 2); total mass exactly 1.

    Built from the canonical measure (rather than from the L-polynomial
    form) so it applies to every connected graph, trees included.
    """
    deg = d.degree
    if deg == -2:
        raise DegreeMinusTwoError("admissible measure undefined for deg(D) = -2")
    for v in d.support():
        g.require_vertex(v)
    can = canonical_measure(g)
    scale = ONE / (deg + 2)
    masses = {v: (d.coefficient(v) + 2 * can.mass_at(v)) * scale for v in g.vertices}
    densities = {e.id: 2 * can.density_on(e.id) * scale for e in g.edges}
    mu = Measure(masses, densities)
    if mu.total_mass(g) != 1:
        raise SolverFaultError("admissible measure mass != 1")
    return mu


@dataclass(frozen=True)
class PiecewisePotential:
    """One slice y -> g(source, y) of a Green's function.

    On edge e = (u, w), parameterized by arc length s from u,
    value(s) = (second_derivative/2) s^2 + slope_at_start s + value(u);
    the second derivative equals the admissible measure's density on e.
    """

    graph: MetrizedGraph
    source: str
    vertex_values: Mapping[str, Fraction]
    second_derivatives: Mapping[str, Fraction]
    slopes_at_start: Mapping[str, Fraction]

    def value_at_vertex(self, v: str) -> Fraction:
        try:
            return self.vertex_values[v]
        except KeyError:
            raise UnknownIdError(f"unknown vertex {v!r}") from None

    def value_on_edge(self, edge_id: str, s: Fraction) -> Fraction:
        e = self.graph.edge(edge_id)
        s = as_fraction(s)
        if not (0 <= s <= e.length):
            raise ValueError("arc length outside the edge")
        alpha = self.second_derivatives[edge_id] / 2
        beta = self.slopes_at_start[edge_id]
        return alpha * s * s + beta * s + self.vertex_values[e.ends[0]]

    def integral_against(self, mu: Measure) -> Fraction:
        """Exact integral of this potential against a measure."""
        total = ZERO
        for v, value in self.vertex_values.items():
            total += mu.mass_at(v) * value
        for e in self.graph.edges:
            dens = mu.density_on(e.id)
            if dens == 0:
                continue
            alpha = self.second_derivatives[e.id] / 2
            beta = self.slopes_at_start[e.id]
            gamma = self.vertex_values[e.ends[0]]
            l = e.length
            total += dens * (alpha * l**3 / 3 + beta * l**2 / 2 + gamma * l)
        return total


def _green_vertex_values(
    g: MetrizedGraph, mu: Measure, sources: Tuple[str, ...]
) -> Dict[str, Dict[str, Fraction]]:
    """Vertex values of g(source, .) for several sources in one elimination.

    Rows: flux balance at every vertex but the last (their sum is zero
    exactly, so one is redundant), plus the normalization integral.
    """
    order = g.vertices
    index = {v: i for i, v in enumerate(order)}
    n = len(order)
    lap = _laplacian(g, order)

    # constant part of the flux right-hand side: mu({v}) + sum of alpha*l
    # over incident edge ends (from the curvature of g on each edge)
    base = [mu.mass_at(v) for v in order]
    for e in g.edges:
        contrib = mu.density_on(e.id) * e.length / 2
        base[index[e.ends[0]]] += contrib
        base[index[e.ends[1]]] += contrib

    matrix = [lap[i][:] for i in range(n - 1)]

    # normalization row: integral of g against mu as a linear form in the
    # vertex values (the curvature term is a known constant, moved to rhs)
    norm_row = [mu.mass_at(v) for v in order]
    const = ZERO
    for e in g.edges:
        dens = mu.density_on(e.id)
        half = dens * e.length / 2
        norm_row[index[e.ends[0]]] += half
        norm_row[index[e.ends[1]]] += half
        const += -dens * dens / 2 * e.length**3 / 6
    matrix.append(norm_row)

    # flux balance: (L f)_v = [v = source] - mu({v}) - sum of alpha*l at v
    rhs = []
    for i in range(n - 1):
        row = []
        for src in sources:
            row.append((ONE if order[i] == src else ZERO) - base[i])
        rhs.append(row)
    rhs.append([-const for _ in sources])

    solution = solve_linear(matrix, rhs)
    out: Dict[str, Dict[str, Fraction]] = {}
    for j, src in enumerate(sources):
        out[src] = {order[i]: solution[i][j] for i in range(n)}
    return out


def _build_potential(
    g: MetrizedGraph, mu: Measure, source: str, values: Mapping[str, Fraction]
) -> PiecewisePotential:
    second = {}
    slopes = {}
    for e in g.edges:
        dens = mu.density_on(e.id)
        u, w = e.ends
        second[e.id] = dens
        slopes[e.id] = (values[w] - values[u]) / e.length - dens * e.length / 2
    pot = PiecewisePotential(g, source, dict(values), second, slopes)
    _assert_green_properties(g, mu, pot)
    return pot


def _assert_green_properties(g: MetrizedGraph, mu: Measure, pot: PiecewisePotential) -> None:
    # Laplacian property at every vertex (including the row dropped by the
    # solver) and the vanishing integral; violations are internal faults.
    flux = {v: ZERO for v in g.vertices}
    for e in g.edges:
        u, w = e.ends
        beta = pot.slopes_at_start[e.id]
        dens = pot.second_derivatives[e.id]
        flux[u] += beta
        flux[w] += -(dens * e.length + beta)
    for v in g.vertices:
        expected = mu.mass_at(v) - (ONE if v == pot.source else ZERO)
        if flux[v] != expected:
            raise SolverFaultError(f"flux balance fails at {v!r}")
    if pot.integral_against(mu) != 0:
        raise SolverFaultError("integral of g against mu is nonzero")


def green_function(g: MetrizedGraph, d: Divisor, source: str) -> PiecewisePotential:
    """The unique piecewise-quadratic y -> g(source, y); exact rational solve."""
    g.require_vertex(source)
    g.require_analytic()
    mu = admissible_measure(g, d)
    values = _green_vertex_values(g, mu, (source,))[source]
    return _build_potential(g, mu, source, values)


def green_pairing(g: MetrizedGraph, d: Divisor, p: str, q: str) -> Fraction:
    """g(p, q) at vertices; symmetric in (p, q)."""
    g.require_vertex(q)
    return green_function(g, d, p).value_at_vertex(q)


def green_matrix(g: MetrizedGraph, d: Divisor) -> Dict[str, Dict[str, Fraction]]:
    """All vertex pair values g(x, y) from a single elimination; the matrix
    is checked to be exactly symmetric."""
    g.require_analytic()
    mu = admissible_measure(g, d)
    values = _green_vertex_values(g, mu, g.vertices)
    for src in g.vertices:
        _build_potential(g, mu, src, values[src])
    for x in g.vertices:
        for y in g.vertices:
            if values[x][y] != values[y][x]:
                raise SolverFaultError("Green matrix is not symmetric")
    return values


def epsilon_numeric(g: MetrizedGraph, d: Divisor) -> Tuple[Fraction, Fraction]:
    """The admissible constant: epsilon = 2 deg(D) c - g(D, D).

    c is computed as g(D, y) + g(y, y) at every vertex y and checked to be
    identical across vertices (exact equality); a mismatch signals a solver
    bug and raises ConstancyViolationError.
    """
    deg = d.degree
    if deg == -2:
        raise DegreeMinusTwoError("admissible constant undefined for deg(D) = -2")
    for v in d.support():
        g.require_vertex(v)
    values = green_matrix(g, d)
    cs = []
    for y in g.vertices:
        g_d_y = sum((a * values[x][y] for x, a in d.coefficients.items()), ZERO)
        cs.append(g_d_y + values[y][y])
    c = cs[0]
    if any(x != c for x in cs):
        raise ConstancyViolationError("g(D,y) + g(y,y) differs between vertices")
    g_d_d = ZERO
    for x, a in d.coefficients.items():
        for y, b in d.coefficients.items():
            g_d_d += a * b * values[x][y]
    return 2 * deg * c - g_d_d, c
