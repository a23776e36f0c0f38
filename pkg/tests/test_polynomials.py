"""MultiPoly arithmetic, L/M constructions, and the closed-form epsilon."""

from fractions import Fraction

import pytest

import admgraph as ag
from admgraph import EdgeKind, MultiPoly, Strategy

F = Fraction


def sigma(variables, k):
    """Elementary symmetric polynomial, for expectations."""
    from itertools import combinations

    total = MultiPoly()
    for subset in combinations(sorted(variables), k):
        total = total + MultiPoly.monomial(subset)
    return total


class TestMultiPoly:
    def test_zero_coefficients_dropped(self):
        p = MultiPoly.variable("x") - MultiPoly.variable("x")
        assert p.is_zero() and p.terms == {}

    def test_product_and_powers(self):
        x, y = MultiPoly.variable("x"), MultiPoly.variable("y")
        p = (x + y) * (x + y)
        assert p == x * x + 2 * x * y + y * y
        assert not p.is_multilinear()
        assert p.is_homogeneous(2)

    def test_evaluate(self):
        x, y = MultiPoly.variable("x"), MultiPoly.variable("y")
        assert (x * y + 2 * x).evaluate({"x": F(1, 2), "y": 3}) == F(5, 2)

    def test_substitute_zero(self):
        p = sigma(["x", "y", "z"], 2)
        assert p.substitute_zero("z") == MultiPoly.monomial(["x", "y"])
        assert p.substitute_zero("absent") == p

    def test_coefficient_poly(self):
        p = sigma(["x", "y", "z"], 2)
        assert p.coefficient_of("x") == MultiPoly.variable("y") + MultiPoly.variable("z")
        with pytest.raises(ag.NotMultilinearError):
            (MultiPoly.variable("x") * MultiPoly.variable("x")).coefficient_of("x")

    def test_grlex_serialization_order(self):
        x, y = MultiPoly.variable("x"), MultiPoly.variable("y")
        p = x * y + x + y * y * y
        monos = [m for m, _ in p.sorted_terms()]
        assert monos == [(("x", 1),), (("x", 1), ("y", 1)), (("y", 3),)]

    def test_rational_fn_equality_cross_multiplied(self):
        x, y = MultiPoly.variable("x"), MultiPoly.variable("y")
        a = ag.RationalFn(x * y, x)
        b = ag.RationalFn(y * x * x, x * x)
        assert a == b


class TestLPolynomial:
    def test_sg_single_class(self):
        h = ag.simple_graph()
        assert ag.l_polynomial(h) == MultiPoly.variable(h.classes()[0])

    def test_elementary_is_sigma_n_minus_one(self):
        for n in (2, 3, 4):
            h = ag.elementary_graph(n)
            assert ag.l_polynomial(h) == sigma(h.classes(), n)

    def test_multiplicative_over_wedge(self):
        from conftest import join, rename

        a = ag.elementary_graph(2)
        b = rename(ag.simple_graph(), "B.")
        h = join(a, "P1", b, "B.P")
        assert ag.l_polynomial(h) == ag.l_polynomial(a) * ag.l_polynomial(b)

    def test_specialize_matches_contraction(self, corpus):
        for h in corpus[:14]:
            lpoly = ag.l_polynomial(h)
            for cname in h.classes():
                g2, inv2, _ = ag.contract_classes(h, [cname])
                if h.class_kind(cname) is EdgeKind.TWO_JOINTED:
                    continue  # size drops; the identity is for size-preserving classes
                h2 = ag.validate_hyperelliptic(g2, inv2)
                assert ag.specialize_zero(lpoly, cname) == ag.l_polynomial(h2)

    def test_homogeneous_multilinear(self, corpus):
        for h in corpus:
            lpoly = ag.l_polynomial(h)
            assert lpoly.is_multilinear()
            assert lpoly.is_homogeneous(ag.graph_size(h))


class TestMPolynomial:
    def test_sg_zero(self):
        assert ag.m_polynomial(ag.simple_graph()).is_zero()

    def test_semisimple_zero(self):
        from conftest import join, rename

        h = join(ag.simple_graph(), "P", rename(ag.simple_graph(), "B."), "B.P")
        assert ag.m_polynomial(h).is_zero()

    def test_elementary_value(self):
        for n in (2, 3, 4):
            h = ag.elementary_graph(n)
            expected = (n - 1) * sigma(h.classes(), n + 1)
            assert ag.m_polynomial(h) == expected

    def test_m_over_l_additive(self, corpus):
        from conftest import join, rename

        for k, h1 in enumerate(corpus[:4]):
            h2 = rename(ag.elementary_graph(2), "Z.")
            v1 = sorted(h1.fixed_vertices)[0]
            h = join(h1, v1, h2, "Z.P1")
            l1, m1 = ag.l_polynomial(h1), ag.m_polynomial(h1)
            l2, m2 = ag.l_polynomial(h2), ag.m_polynomial(h2)
            lg, mg = ag.l_polynomial(h), ag.m_polynomial(h)
            assert lg == l1 * l2
            assert mg == m1 * l2 + l1 * m2

    def test_homogeneous_multilinear(self, corpus):
        for h in corpus:
            mpoly = ag.m_polynomial(h)
            assert mpoly.is_multilinear()
            assert mpoly.is_homogeneous(ag.graph_size(h) + 1)


class TestStrategyAgreement:
    def test_on_corpus(self, corpus):
        for h in corpus:
            assert ag.l_polynomial(h, Strategy.DEFINITION) == ag.l_polynomial(
                h, Strategy.SYMMETRIC
            )
            assert ag.m_polynomial(h, Strategy.DEFINITION) == ag.m_polynomial(
                h, Strategy.SYMMETRIC
            )


class TestEnumerationCap:
    def test_cap_raises(self):
        h = ag.elementary_graph(3)
        with pytest.raises(ag.EnumerationCapError):
            ag.l_polynomial(h, max_classes=2)

    def test_env_override(self, monkeypatch):
        h = ag.elementary_graph(3)
        monkeypatch.setenv("ADMGRAPH_MAX_CLASSES", "2")
        with pytest.raises(ag.EnumerationCapError):
            ag.l_polynomial(h)
        monkeypatch.setenv("ADMGRAPH_MAX_CLASSES", "30")
        assert not ag.l_polynomial(h).is_zero()


class TestClosedForm:
    def test_sg_pinned_value(self):
        h = ag.simple_graph()
        assert ag.epsilon_closed_form(h, ag.Divisor({"P": 1, "Q": 1})) == F(7, 12)

    def test_elementary_g2_pinned_value(self):
        h = ag.elementary_graph(2)
        d = ag.Divisor({"Q+": 1, "Q-": 1})
        assert ag.epsilon_closed_form(h, d) == F(10, 9)

    def test_sg_symbolic_prop(self):
        # eps(SG, aP + bQ) = (2/3 deg/(deg+2) + ab/(deg+2)) X
        for a, b in [(1, 1), (2, 1), (3, 0), (0, 0), (2, -1)]:
            h = ag.simple_graph(F(5, 7))
            d = ag.Divisor({"P": a, "Q": b})
            deg = a + b
            expect = (F(2, 3) * deg / (deg + 2) + F(a * b, deg + 2)) * F(5, 7)
            assert ag.epsilon_closed_form(h, d) == expect

    def test_wrong_shape_rejected(self):
        h = ag.elementary_graph(2)
        with pytest.raises(ag.PolarizationShapeError):
            ag.epsilon_closed_form(h, ag.Divisor({"Q+": 2, "Q-": 2}))

    def test_degree_minus_two_rejected(self):
        h = ag.simple_graph()
        with pytest.raises(ag.DegreeMinusTwoError):
            ag.epsilon_closed_form(h, ag.Divisor({"P": -1, "Q": -1}))

    def test_matches_numeric_on_corpus(self, corpus):
        for k, h in enumerate(corpus):
            h2 = ag.with_lengths(h, ag.random_lengths(h, 900 + k))
            d = ag.random_polarization(h2, 900 + k)
            closed = ag.epsilon_closed_form(h2, d)
            numeric, _ = ag.epsilon_numeric(h2.graph, d)
            assert closed == numeric

    def test_specialization_is_contraction(self, corpus):
        for h in corpus[:10]:
            d = ag.random_polarization(h, 41)
            fn = ag.epsilon_rational_fn(h, d)
            for cname in h.classes():
                g2, inv2, vmap = ag.contract_classes(h, [cname])
                h2 = ag.validate_hyperelliptic(g2, inv2)
                d2 = ag.push_divisor(d, vmap)
                assert fn.substitute_zero(cname) == ag.epsilon_rational_fn(h2, d2)


class TestInequalities:
    def test_m_over_l_bound(self, corpus):
        quarter, half = F(1, 4), F(1, 2)
        for k, h in enumerate(corpus):
            for comp in ag.component_structures(h):
                comp = ag.with_lengths(comp, ag.random_lengths(comp, 500 + k))
                lengths = comp.lengths()
                ratio = ag.m_polynomial(comp).evaluate(lengths) / ag.l_polynomial(
                    comp
                ).evaluate(lengths)
                s0 = sum(
                    (comp.class_length(c) for c in comp.classes_of_kind(EdgeKind.DISJOINT)),
                    F(0),
                )
                s1 = sum(
                    (
                        comp.class_length(c)
                        for c in comp.classes_of_kind(EdgeKind.ONE_JOINTED)
                    ),
                    F(0),
                )
                assert ratio <= s0 + quarter * s1
                if ag.graph_size(comp) <= 4:
                    assert ratio <= half * s0 + quarter * s1

    def test_epsilon_upper_bounds(self, corpus):
        # the two per-class upper bounds: 4/3 in general, 1 when all
        # components have size < 5; nonnegative polarizations only
        for k, h in enumerate(corpus):
            h2 = ag.with_lengths(h, ag.random_lengths(h, 700 + k))
            d = ag.random_polarization(h2, 700 + k, nonnegative=True)
            deg = d.degree
            if deg == 0:
                continue
            eps, _ = ag.epsilon_numeric(h2.graph, d)
            q = deg / (deg + 2)
            small = all(ag.graph_size(c) < 5 for c in ag.component_structures(h2))
            for first in ([F(4, 3)] if not small else [F(4, 3), F(1)]):
                bound = F(0)
                for cname in h2.classes():
                    w = ag.w_weight(h2, d, cname)
                    l = h2.class_length(cname)
                    if w == 0:
                        bound += F(5, 6) * q * l
                    else:
                        bound += (first * q + w * (deg - w) / (deg + 2)) * l
                assert eps <= bound
