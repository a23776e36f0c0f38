"""Sparse multivariate polynomials in edge-class lengths; L and M.

For a hyperelliptic graph of size n, two homogeneous multilinear polynomials
in the edge-class indeterminates govern the admissible constant:

* L (degree n): the sum of the squarefree monomials over the n-subsets of
  classes whose restriction is a semisimple hyperelliptic graph of size n.
* M (degree n+1): over (n+1)-subsets whose restriction has a unique
  non-fixed vertex class, weighted by (valence - 2) of that vertex; zero on
  semisimple graphs.

Both admit a second expression on irreducible graphs through elementary
symmetric polynomials of the one-jointed classes meeting each non-fixed
vertex, summed over subsets of the disjoint classes; the two constructions
are kept as independent strategies and must agree.

The closed form of the admissible constant for a polarization with
coefficient nu(v) - 2 at every non-fixed vertex is

    eps = sum over classes ( (2/3) q + w(e)(deg - w(e))/(deg + 2) ) X_e
          + (2/3) q * M/L,       q = deg/(deg + 2),

with w(e) the smaller pushed coefficient on the simple restriction to the
class.  Subset enumeration is capped (default 24 classes; override with the
ADMGRAPH_MAX_CLASSES environment variable or the max_classes argument).
"""

from __future__ import annotations

import os
from enum import Enum
from fractions import Fraction
from itertools import combinations
from typing import Dict, Iterable, List, Mapping, Optional, Tuple

from .errors import (
    DegreeMinusTwoError,
    EnumerationCapError,
    NotMultilinearError,
    PolarizationShapeError,
    SolverFaultError,
)
from .graph import Divisor
from .hyperelliptic import (
    EdgeKind,
    HyperellipticGraph,
    component_structures,
    contract_classes,
    divisor_is_invariant,
    graph_size,
    is_semisimple_of_size,
    is_simple,
    nu_counts,
    restrict_classes,
    w_weight,
)
from .rationals import as_fraction

ZERO = Fraction(0)
ONE = Fraction(1)

DEFAULT_MAX_CLASSES = 24
ENV_MAX_CLASSES = "ADMGRAPH_MAX_CLASSES"

Monomial = Tuple[Tuple[str, int], ...]


def _monomial(vars_with_exp: Iterable[Tuple[str, int]]) -> Monomial:
    acc: Dict[str, int] = {}
    for var, exp in vars_with_exp:
        if exp:
            acc[var] = acc.get(var, 0) + exp
    return tuple(sorted(acc.items()))


def _grlex_key(mono: Monomial):
    degree = sum(exp for _, exp in mono)
    expanded = tuple(var for var, exp in mono for _ in range(exp))
    return (degree, expanded)


class MultiPoly:
    """Sparse polynomial over exact rationals; zero coefficients are never
    stored and terms are ordered graded-lexicographically."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, object] | None = None):
        clean: Dict[Monomial, Fraction] = {}
        for mono, coeff in (terms or {}).items():
            coeff = as_fraction(coeff)
            if coeff != 0:
                clean[_monomial(mono)] = coeff
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("MultiPoly is immutable")

    @staticmethod
    def constant(value) -> "MultiPoly":
        return MultiPoly({(): value})

    @staticmethod
    def variable(name: str) -> "MultiPoly":
        return MultiPoly({((name, 1),): 1})

    @staticmethod
    def monomial(variables: Iterable[str], coeff=1) -> "MultiPoly":
        return MultiPoly({tuple((v, 1) for v in variables): coeff})

    def is_zero(self) -> bool:
        return not self.terms

    def variables(self) -> Tuple[str, ...]:
        return tuple(sorted({v for mono in self.terms for v, _ in mono}))

    def total_degree(self) -> int:
        return max((sum(e for _, e in mono) for mono in self.terms), default=0)

    def is_homogeneous(self, degree: Optional[int] = None) -> bool:
        degrees = {sum(e for _, e in mono) for mono in self.terms}
        if not degrees:
            return True
        if len(degrees) != 1:
            return False
        return degree is None or degrees == {degree}

    def is_multilinear(self) -> bool:
        return all(e == 1 for mono in self.terms for _, e in mono)

    def __add__(self, other):
        other = other if isinstance(other, MultiPoly) else MultiPoly.constant(other)
        terms = dict(self.terms)
        for mono, coeff in other.terms.items():
            terms[mono] = terms.get(mono, ZERO) + coeff
        return MultiPoly(terms)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly({mono: -coeff for mono, coeff in self.terms.items()})

    def __sub__(self, other):
        other = other if isinstance(other, MultiPoly) else MultiPoly.constant(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            return MultiPoly({mono: coeff * as_fraction(other) for mono, coeff in self.terms.items()})
        terms: Dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = _monomial(list(m1) + list(m2))
                terms[mono] = terms.get(mono, ZERO) + c1 * c2
        return MultiPoly(terms)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == MultiPoly.constant(other)
        return NotImplemented

    def __repr__(self):
        if not self.terms:
            return "MultiPoly(0)"
        parts = []
        for mono, coeff in self.sorted_terms():
            factors = "*".join(v if e == 1 else f"{v}^{e}" for v, e in mono)
            parts.append(f"{coeff}" + (f"*{factors}" if factors else ""))
        return "MultiPoly(" + " + ".join(parts) + ")"

    def sorted_terms(self) -> List[Tuple[Monomial, Fraction]]:
        return sorted(self.terms.items(), key=lambda item: _grlex_key(item[0]))

    def evaluate(self, assignment: Mapping[str, object]) -> Fraction:
        values = {v: as_fraction(x) for v, x in assignment.items()}
        total = ZERO
        for mono, coeff in self.terms.items():
            product = coeff
            for var, exp in mono:
                if var not in values:
                    raise KeyError(f"no value for variable {var!r}")
                product *= values[var] ** exp
            total += product
        return total

    def substitute_zero(self, variable: str) -> "MultiPoly":
        """Set one variable to zero: drop every monomial containing it."""
        return MultiPoly(
            {mono: c for mono, c in self.terms.items() if all(v != variable for v, _ in mono)}
        )

    def divide_by_variable(self, variable: str) -> "MultiPoly":
        """Exact division by one variable; every monomial must contain it."""
        terms = {}
        for mono, coeff in self.terms.items():
            exps = dict(mono)
            if variable not in exps:
                raise ValueError(f"not divisible by {variable!r}")
            exps[variable] -= 1
            terms[tuple(sorted((v, e) for v, e in exps.items() if e))] = coeff
        return MultiPoly(terms)

    def coefficient_of(self, variable: str) -> "MultiPoly":
        """P with self = X*P + (terms free of X); requires multilinearity in X."""
        terms = {}
        for mono, coeff in self.terms.items():
            exps = dict(mono)
            if variable not in exps:
                continue
            if exps[variable] > 1:
                raise NotMultilinearError(f"not multilinear in {variable!r}")
            rest = tuple((v, e) for v, e in mono if v != variable)
            terms[rest] = coeff
        return MultiPoly(terms)


class RationalFn:
    """Quotient of two polynomials; equality is decided by the
    cross-multiplied polynomial identity, never by sampling."""

    __slots__ = ("numerator", "denominator")

    def __init__(self, numerator: MultiPoly, denominator: MultiPoly):
        if denominator.is_zero():
            raise ZeroDivisionError("identically-zero denominator")
        object.__setattr__(self, "numerator", numerator)
        object.__setattr__(self, "denominator", denominator)

    def __setattr__(self, name, value):
        raise AttributeError("RationalFn is immutable")

    def evaluate(self, assignment: Mapping[str, object]) -> Fraction:
        den = self.denominator.evaluate(assignment)
        if den == 0:
            raise ZeroDivisionError("denominator vanishes at this point")
        return self.numerator.evaluate(assignment) / den

    def substitute_zero(self, variable: str) -> "RationalFn":
        """Specialize one variable to zero as a limit of functions: common
        factors of the variable are cancelled first (contracting a simple
        component divides both parts of epsilon by its class)."""
        num, den = self.numerator, self.denominator
        while den.substitute_zero(variable).is_zero():
            try:
                num = num.divide_by_variable(variable)
            except ValueError:
                raise ZeroDivisionError(
                    f"the function has a pole at {variable} = 0"
                ) from None
            den = den.divide_by_variable(variable)
        return RationalFn(num.substitute_zero(variable), den.substitute_zero(variable))

    def __add__(self, other):
        if not isinstance(other, RationalFn):
            other = RationalFn(MultiPoly.constant(other), MultiPoly.constant(1))
        return RationalFn(
            self.numerator * other.denominator + other.numerator * self.denominator,
            self.denominator * other.denominator,
        )

    def __eq__(self, other):
        if not isinstance(other, RationalFn):
            return NotImplemented
        return self.numerator * other.denominator == other.numerator * self.denominator

    def __repr__(self):
        return f"RationalFn({self.numerator!r} / {self.denominator!r})"


class Strategy(Enum):
    DEFINITION = "definition"
    SYMMETRIC = "symmetric"


def _max_classes(override: Optional[int]) -> int:
    if override is not None:
        return override
    env = os.environ.get(ENV_MAX_CLASSES)
    return int(env) if env else DEFAULT_MAX_CLASSES


def _check_cap(h: HyperellipticGraph, max_classes: Optional[int]) -> None:
    cap = _max_classes(max_classes)
    count = len(h.class_members)
    if count > cap:
        raise EnumerationCapError(
            f"{count} edge classes exceeds the enumeration cap {cap}; "
            f"raise it explicitly (max_classes= or {ENV_MAX_CLASSES})"
        )


def _l_by_definition(h: HyperellipticGraph) -> MultiPoly:
    n = graph_size(h)
    classes = h.classes()
    terms = {}
    for subset in combinations(classes, n):
        restricted, rinv, _ = restrict_classes(h, subset)
        if is_semisimple_of_size(restricted, rinv, n):
            terms[tuple((c, 1) for c in subset)] = ONE
    return MultiPoly(terms)


def _m_by_definition(h: HyperellipticGraph) -> MultiPoly:
    n = graph_size(h)
    classes = h.classes()
    terms = {}
    for subset in combinations(classes, n + 1):
        restricted, rinv, _ = restrict_classes(h, subset)
        nonfixed_classes = {
            min(v, rinv.vertex(v)) for v in restricted.vertices if rinv.vertex(v) != v
        }
        if len(nonfixed_classes) != 1:
            continue
        rep = min(nonfixed_classes)
        coeff = restricted.valence(rep) - 2
        if coeff:
            terms[tuple((c, 1) for c in subset)] = Fraction(coeff)
    return MultiPoly(terms)


def _elementary_symmetric(variables: List[str], k: int) -> MultiPoly:
    if k < 0:
        return MultiPoly()
    terms = {tuple((v, 1) for v in subset): ONE for subset in combinations(sorted(variables), k)}
    return MultiPoly(terms)


def _symmetric_data(h: HyperellipticGraph, kept_disjoint: Tuple[str, ...]):
    """Per non-fixed vertex class of G' = contract(disjoint classes not
    kept): the one-jointed classes at the vertex and its total valence."""
    disjoint = h.classes_of_kind(EdgeKind.DISJOINT)
    to_contract = [c for c in disjoint if c not in set(kept_disjoint)]
    contracted, cinv, _ = contract_classes(h, to_contract)
    data = []
    seen = set()
    for v in contracted.vertices:
        if cinv.vertex(v) == v or v in seen:
            continue
        seen.add(v)
        seen.add(cinv.vertex(v))
        one_jointed_at_v = []
        for e in contracted.edges:
            if v not in e.ends:
                continue
            partner = contracted.edge(cinv.edge(e.id))
            shared = set(e.ends) & set(partner.ends)
            if len(shared) == 1:
                one_jointed_at_v.append(min(e.id, partner.id))
        data.append((sorted(set(one_jointed_at_v)), contracted.valence(v)))
    return data


def _l_symmetric_irreducible(h: HyperellipticGraph) -> MultiPoly:
    if is_simple(h):
        return MultiPoly.variable(h.classes()[0])
    disjoint = h.classes_of_kind(EdgeKind.DISJOINT)
    total = MultiPoly()
    for k in range(len(disjoint) + 1):
        for kept in combinations(disjoint, k):
            product = MultiPoly.monomial(kept)
            for classes_at_v, _ in _symmetric_data(h, kept):
                product = product * _elementary_symmetric(classes_at_v, len(classes_at_v) - 1)
            total = total + product
    return total


def _m_symmetric_irreducible(h: HyperellipticGraph) -> MultiPoly:
    if is_simple(h):
        return MultiPoly()
    disjoint = h.classes_of_kind(EdgeKind.DISJOINT)
    total = MultiPoly()
    for k in range(len(disjoint) + 1):
        for kept in combinations(disjoint, k):
            data = _symmetric_data(h, kept)
            inner = MultiPoly()
            for i, (classes_at_v, valence) in enumerate(data):
                piece = MultiPoly.constant(valence - 2) * _elementary_symmetric(
                    classes_at_v, len(classes_at_v)
                )
                for j, (other_classes, _) in enumerate(data):
                    if j != i:
                        piece = piece * _elementary_symmetric(
                            other_classes, len(other_classes) - 1
                        )
                inner = inner + piece
            total = total + inner * MultiPoly.monomial(kept)
    return total


def l_polynomial(
    h: HyperellipticGraph,
    strategy: Strategy = Strategy.DEFINITION,
    *,
    max_classes: Optional[int] = None,
) -> MultiPoly:
    """L: homogeneous multilinear of degree sz(G); multiplicative over
    one-point-sums."""
    _check_cap(h, max_classes)
    if strategy is Strategy.DEFINITION:
        return _l_by_definition(h)
    result = MultiPoly.constant(1)
    for comp in component_structures(h):
        result = result * _l_symmetric_irreducible(comp)
    return result


def m_polynomial(
    h: HyperellipticGraph,
    strategy: Strategy = Strategy.DEFINITION,
    *,
    max_classes: Optional[int] = None,
) -> MultiPoly:
    """M: homogeneous multilinear of degree sz(G) + 1; M/L is additive over
    one-point-sums and M = 0 on semisimple graphs."""
    _check_cap(h, max_classes)
    if strategy is Strategy.DEFINITION:
        return _m_by_definition(h)
    comps = component_structures(h)
    ls = [_l_symmetric_irreducible(c) for c in comps]
    total = MultiPoly()
    for i, comp in enumerate(comps):
        piece = _m_symmetric_irreducible(comp)
        for j, lpoly in enumerate(ls):
            if j != i:
                piece = piece * lpoly
        total = total + piece
    return total


def specialize_zero(p: MultiPoly, class_name: str) -> MultiPoly:
    """Substitute 0 for an edge class; for L/M this is the polynomial of the
    contracted graph."""
    return p.substitute_zero(class_name)


def coefficient_poly(p: MultiPoly, class_name: str) -> MultiPoly:
    """The coefficient P of X in p = X*P + (terms free of X)."""
    return p.coefficient_of(class_name)


def _theorem_shape_check(h: HyperellipticGraph, d: Divisor) -> Fraction:
    if not divisor_is_invariant(d, h.involution):
        raise PolarizationShapeError("polarization must be iota-invariant")
    for v in sorted(h.nonfixed_vertices):
        _, _, nu = nu_counts(h, v)
        if d.coefficient(v) != nu - 2:
            raise PolarizationShapeError(
                f"coefficient at non-fixed vertex {v!r} must be nu - 2 = {nu - 2}"
            )
    deg = d.degree
    if deg == -2:
        raise DegreeMinusTwoError("closed form undefined for deg(D) = -2")
    return deg


def epsilon_rational_fn(
    h: HyperellipticGraph,
    d: Divisor,
    strategy: Strategy = Strategy.DEFINITION,
    *,
    max_classes: Optional[int] = None,
) -> RationalFn:
    """The admissible constant as a rational function of the class lengths."""
    deg = _theorem_shape_check(h, d)
    q = Fraction(2, 3) * deg / (deg + 2)
    lpoly = l_polynomial(h, strategy, max_classes=max_classes)
    mpoly = m_polynomial(h, strategy, max_classes=max_classes)
    if lpoly.is_zero():
        raise SolverFaultError("L vanished on a valid hyperelliptic graph")
    linear = MultiPoly()
    for cname in h.classes():
        w = w_weight(h, d, cname)
        coeff = q + w * (deg - w) / (deg + 2)
        linear = linear + MultiPoly.monomial([cname], coeff)
    return RationalFn(linear * lpoly + MultiPoly.constant(q) * mpoly, lpoly)


def epsilon_closed_form(
    h: HyperellipticGraph,
    d: Divisor,
    lengths: Optional[Mapping[str, object]] = None,
    strategy: Strategy = Strategy.DEFINITION,
    *,
    max_classes: Optional[int] = None,
) -> Fraction:
    """Evaluate the closed form at given class lengths (default: the lengths
    carried by the graph).  Exact; equal to the potential-theory value."""
    if lengths is None:
        assignment = {c: h.class_length(c) for c in h.classes()}
    else:
        assignment = {c: as_fraction(lengths[c]) for c in h.classes()}
    for cname, value in assignment.items():
        if value <= 0:
            raise PolarizationShapeError(f"length of class {cname!r} must be positive")
    fn = epsilon_rational_fn(h, d, strategy, max_classes=max_classes)
    return fn.evaluate(assignment)
