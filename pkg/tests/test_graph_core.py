"""Graph model: construction, validation, contraction, decomposition."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import admgraph as ag


def sg_graph(length=1):
    return ag.MetrizedGraph(["P", "Q"], [("e1", ("P", "Q"), length), ("e2", ("P", "Q"), length)])


def triangle():
    return ag.MetrizedGraph(
        ["A", "B", "C"], [("a", ("A", "B"), 3), ("b", ("B", "C"), 1), ("c", ("C", "A"), 1)]
    )


class TestConstruction:
    def test_rejects_self_loop(self):
        with pytest.raises(ag.InvalidGraphError):
            ag.MetrizedGraph(["v"], [("l", ("v", "v"), 1)])

    def test_loop_marker_allowed_when_asked(self):
        g = ag.MetrizedGraph(["v"], [("l", ("v", "v"), 1)], allow_loops=True)
        assert g.loops()[0].id == "l"

    def test_rejects_unknown_endpoint(self):
        with pytest.raises(ag.UnknownIdError):
            ag.MetrizedGraph(["P"], [("e", ("P", "Z"), 1)])

    def test_rejects_duplicate_edge_ids(self):
        with pytest.raises(ag.InvalidGraphError):
            ag.MetrizedGraph(["P", "Q"], [("e", ("P", "Q"), 1), ("e", ("P", "Q"), 2)])

    def test_rejects_float_lengths(self):
        with pytest.raises(TypeError):
            ag.MetrizedGraph(["P", "Q"], [("e", ("P", "Q"), 0.5)])

    def test_rational_strings_accepted(self):
        g = ag.MetrizedGraph(["P", "Q"], [("e", ("P", "Q"), "3/2")])
        assert g.edge("e").length == Fraction(3, 2)


class TestValidate:
    def test_sg_valid(self):
        assert ag.validate_graph(sg_graph()).valid

    def test_one_point_graph_valid(self):
        assert ag.validate_graph(ag.MetrizedGraph(["v"], [])).valid

    def test_zero_length_reported(self):
        g = ag.MetrizedGraph(["P", "Q"], [("e", ("P", "Q"), 0)])
        report = ag.validate_graph(g)
        assert not report.valid
        assert "nonpositive length" in report.problems[0]

    def test_disconnected_reported(self):
        g = ag.MetrizedGraph(["P", "Q", "R"], [("e", ("P", "Q"), 1)])
        report = ag.validate_graph(g)
        assert not report.valid
        assert any("not connected" in p for p in report.problems)


class TestContract:
    def test_triangle_single_edge(self):
        g2, vmap = ag.contract(triangle(), ["a"])
        assert set(g2.vertices) == {"A", "C"}
        assert vmap == {"A": "A", "B": "A", "C": "C"}
        assert sorted(g2.edge_ids()) == ["b", "c"]
        assert g2.edge("b").length == 1

    def test_empty_contraction_is_identity(self):
        g = triangle()
        g2, vmap = ag.contract(g, [])
        assert g2 == g
        assert vmap == {v: v for v in g.vertices}

    def test_sg_contraction_leaves_loop_marker(self):
        g2, _ = ag.contract(sg_graph(), ["e1"])
        assert len(g2.vertices) == 1
        assert [e.id for e in g2.loops()] == ["e2"]

    def test_unknown_edge(self):
        with pytest.raises(ag.UnknownIdError):
            ag.contract(triangle(), ["nope"])

    def test_restrict_sg_to_one_edge(self):
        g2, _ = ag.restrict(sg_graph(), ["e1", "e2"])
        assert g2 == sg_graph()

    def test_restrict_all_edges_identity(self):
        g = triangle()
        g2, _ = ag.restrict(g, g.edge_ids())
        assert g2 == g


class TestPushDivisor:
    def test_merge_adds_coefficients(self):
        g2, vmap = ag.contract(sg_graph(), ["e1"])
        d = ag.push_divisor(ag.Divisor({"P": 1, "Q": 1}), vmap)
        assert d == ag.Divisor({"P": 2})

    def test_zero_divisor(self):
        _, vmap = ag.contract(triangle(), ["a"])
        assert ag.push_divisor(ag.Divisor({}), vmap) == ag.Divisor({})

    def test_degree_preserved_with_negative_parts(self):
        g2, vmap = ag.contract(triangle(), ["b"])  # merges B and C
        d = ag.Divisor({"A": 2, "B": -1})
        pushed = ag.push_divisor(d, vmap)
        assert pushed.degree == d.degree == 1
        assert pushed.coefficient("B") == -1

    def test_vertex_outside_domain(self):
        with pytest.raises(ag.UnknownIdError):
            ag.push_divisor(ag.Divisor({"Z": 1}), {"P": "P"})


class TestOnePointSum:
    def test_sg_wedge_sg(self):
        other = ag.MetrizedGraph(["Q", "R"], [("f1", ("Q", "R"), 1), ("f2", ("Q", "R"), 1)])
        joined = ag.one_point_sum(sg_graph(), "Q", other, "Q")
        assert len(joined.vertices) == 3
        assert len(joined.edges) == 4

    def test_wedge_with_point_is_identity(self):
        g = triangle()
        point = ag.MetrizedGraph(["z"], [])
        assert ag.one_point_sum(g, "A", point, "z") == g

    def test_triangle_wedge_edge(self):
        extra = ag.MetrizedGraph(["X", "Y"], [("x", ("X", "Y"), 2)])
        joined = ag.one_point_sum(triangle(), "A", extra, "X")
        assert len(joined.vertices) == 4
        assert len(joined.edges) == 4
        assert joined.valence("A") == 3

    def test_id_clash_rejected(self):
        with pytest.raises(ag.InvalidGraphError):
            ag.one_point_sum(triangle(), "A", triangle(), "B")


class TestDecomposition:
    def test_triangle_is_irreducible(self):
        assert ag.irreducible_decomposition(triangle()) == [triangle()]

    def test_wedge_of_two(self):
        other = ag.MetrizedGraph(["Q", "R"], [("f1", ("Q", "R"), 1), ("f2", ("Q", "R"), 1)])
        joined = ag.one_point_sum(sg_graph(), "Q", other, "Q")
        blocks = ag.irreducible_decomposition(joined)
        assert len(blocks) == 2
        assert {tuple(b.vertices) for b in blocks} == {("P", "Q"), ("Q", "R")}

    def test_path_splits_into_edges(self):
        path = ag.MetrizedGraph(
            ["P", "Q", "R"], [("e1", ("P", "Q"), 1), ("e2", ("Q", "R"), 1)]
        )
        blocks = ag.irreducible_decomposition(path)
        assert [b.edge_ids() for b in blocks] == [("e1",), ("e2",)]

    def test_one_point_graph_decomposes_to_nothing(self):
        assert ag.irreducible_decomposition(ag.MetrizedGraph(["v"], [])) == []

    def test_necklace_is_one_block(self):
        # parallel pairs arranged in a cycle: no cut vertex anywhere
        g = ag.MetrizedGraph(
            ["a", "b", "c"],
            [
                ("e1", ("a", "b"), 1),
                ("e2", ("a", "b"), 1),
                ("f1", ("b", "c"), 1),
                ("f2", ("b", "c"), 1),
                ("g1", ("c", "a"), 1),
                ("g2", ("c", "a"), 1),
            ],
        )
        assert len(ag.irreducible_decomposition(g)) == 1

    def test_bowtie_splits_at_center(self):
        bow = ag.MetrizedGraph(
            ["c", "x", "y", "u", "v"],
            [
                ("a", ("c", "x"), 1),
                ("b", ("x", "y"), 1),
                ("d", ("y", "c"), 1),
                ("p", ("c", "u"), 1),
                ("q", ("u", "v"), 1),
                ("r", ("v", "c"), 1),
            ],
        )
        blocks = ag.irreducible_decomposition(bow)
        assert [b.vertices for b in blocks] == [("c", "u", "v"), ("c", "x", "y")]

    def test_components_share_at_most_one_vertex(self, corpus):
        for h in corpus:
            blocks = ag.irreducible_decomposition(h.graph)
            for i, a in enumerate(blocks):
                for b in blocks[i + 1 :]:
                    assert len(set(a.vertices) & set(b.vertices)) <= 1

    def test_disconnected_rejected(self):
        g = ag.MetrizedGraph(["P", "Q"], [])
        with pytest.raises(ag.DisconnectedGraphError):
            ag.irreducible_decomposition(g)


class TestSubdivide:
    def test_unit_edge_halved(self):
        g = ag.MetrizedGraph(["P", "Q"], [("e", ("P", "Q"), 1)])
        s = ag.subdivide_edge(g, "e", Fraction(1, 2))
        assert len(s.vertices) == 3
        assert sorted(e.length for e in s.edges) == [Fraction(1, 2), Fraction(1, 2)]

    def test_boundary_rejected(self):
        g = ag.MetrizedGraph(["P", "Q"], [("e", ("P", "Q"), 1)])
        with pytest.raises(ValueError):
            ag.subdivide_edge(g, "e", 1)

    def test_triangle_length_preserved(self):
        s = ag.subdivide_edge(triangle(), "a", 1)
        assert len(s.vertices) == 4
        assert s.total_length() == triangle().total_length()


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=2_000))
def test_restrict_is_contract_of_complement(seed):
    h = ag.random_hyperelliptic(seed % 120)
    rng = random.Random(seed)
    edge_ids = list(h.graph.edge_ids())
    subset = rng.sample(edge_ids, k=rng.randint(0, len(edge_ids)))
    via_restrict, map1 = ag.restrict(h.graph, subset)
    via_contract, map2 = ag.contract(h.graph, set(edge_ids) - set(subset))
    assert via_restrict == via_contract
    assert map1 == map2


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=2_000))
def test_push_divisor_preserves_degree(seed):
    h = ag.random_hyperelliptic(seed % 120)
    rng = random.Random(seed)
    edge_ids = list(h.graph.edge_ids())
    subset = rng.sample(edge_ids, k=rng.randint(0, len(edge_ids)))
    _, vmap = ag.contract(h.graph, subset)
    d = ag.random_polarization(h, seed)
    assert ag.push_divisor(d, vmap).degree == d.degree
