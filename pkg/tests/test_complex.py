import random
from itertools import combinations

import pytest
from hypothesis import given

from indcomplex.complex import (
    ComplexFormatError,
    IsomorphismBudgetExceeded,
    Presentation,
    SimplicialComplex,
    barycentric_subdivision,
    complex_to_graph,
    cone,
    face_labels,
    independence_complex,
    is_isomorphic,
    parse_facets,
    parse_presentation,
    presentation_complex,
    projective_plane,
    simplex,
    simplex_boundary,
    write_facets,
    write_presentation,
)
from indcomplex.graph import Graph
from indcomplex.homology import IntMatrix, reduced_homology, smith_normal_form

from oracles import all_faces, complexes_up_to, independent_sets, maximal, maximal_chains
from strategies import graphs

TRIANGLE = simplex_boundary(3)


def facet_sets(k):
    return {frozenset(f) for f in k.facet_labels()}


class TestSimplicialComplex:
    def test_non_maximal_faces_dropped(self):
        k = SimplicialComplex([(0, 1, 2), (0, 1), (3,)])
        assert facet_sets(k) == {frozenset({0, 1, 2}), frozenset({3})}

    def test_empty(self):
        k = SimplicialComplex([])
        assert k.is_empty() and k.n_vertices == 0 and k.dim == -1

    def test_first_appearance_indexing(self):
        k = SimplicialComplex([("b", "a"), ("c",)])
        assert k.labels == ("b", "a", "c")

    def test_faces(self):
        assert len(simplex(3).faces(1)) == 3
        assert SimplicialComplex([]).faces(1) == []
        assert len(independence_complex(Graph.cycle(5)).faces(1)) == 5

    def test_faces_sorted(self):
        k = projective_plane()
        for d in range(3):
            assert k.faces(d) == sorted(k.faces(d))


class TestIndependenceComplex:
    def test_discrete(self):
        assert facet_sets(independence_complex(Graph(3))) == {frozenset({0, 1, 2})}

    def test_k2(self):
        assert facet_sets(independence_complex(Graph.complete(2))) == {frozenset({0}), frozenset({1})}

    def test_c5(self):
        expected = {frozenset(s) for s in [(0, 2), (1, 3), (2, 4), (0, 3), (1, 4)]}
        assert facet_sets(independence_complex(Graph.cycle(5))) == expected

    def test_empty_graph(self):
        assert independence_complex(Graph(0)).is_empty()

    @given(graphs(max_n=8))
    def test_matches_subset_enumeration(self, g):
        k = independence_complex(g)
        assert facet_sets(k) == maximal(independent_sets(g.n, g.edges))

    @given(graphs(max_n=8))
    def test_faces_independent_and_facets_maximal(self, g):
        k = independence_complex(g)
        for f in k.face_set:
            assert not any((u, v) in g.edges for u, v in combinations(f, 2))
        for f in k.facets:
            for w in set(range(g.n)) - set(f):
                assert any(tuple(sorted((w, v))) in g.edges for v in f)


class TestBarycentricSubdivision:
    def test_point(self):
        sd = barycentric_subdivision(simplex(1))
        assert sd.n_vertices == 1 and len(sd.facets) == 1

    def test_edge(self):
        sd = barycentric_subdivision(simplex(2))
        assert sd.n_vertices == 3 and len(sd.facets) == 2 and sd.dim == 1

    def test_triangle_boundary_is_hexagon(self):
        sd = barycentric_subdivision(TRIANGLE)
        assert sd.f_vector() == [6, 6]
        hexagon = SimplicialComplex([(i, (i + 1) % 6) for i in range(6)])
        assert is_isomorphic(sd, hexagon)

    def test_chains_match_oracle(self):
        for facets in complexes_up_to(4):
            k = SimplicialComplex(facets)
            sd = barycentric_subdivision(k)
            got = {frozenset(frozenset(lab) for lab in f) for f in sd.facet_labels()}
            assert got == maximal_chains(facets)


class TestComplexToGraph:
    def test_point(self):
        assert complex_to_graph(simplex(1)) == Graph(1)

    def test_single_edge(self):
        k = SimplicialComplex([("a", "b")])
        assert face_labels(k) == [("a",), ("b",), ("a", "b")]
        assert complex_to_graph(k) == Graph(3, frozenset({(0, 1)}))

    def test_two_points(self):
        assert complex_to_graph(SimplicialComplex([(0,), (1,)])) == Graph.complete(2)

    def test_edges_are_incomparable_pairs(self):
        for facets in complexes_up_to(3):
            k = SimplicialComplex(facets)
            g = complex_to_graph(k)
            faces = [frozenset(f) for f in face_labels(k)]
            assert g.n == len(all_faces(facets))
            for i, j in combinations(range(g.n), 2):
                comparable = faces[i] <= faces[j] or faces[j] <= faces[i]
                assert ((i, j) in g.edges) == (not comparable)


class TestIsomorphism:
    def test_simplex_vs_boundary(self):
        assert not is_isomorphic(simplex(3), TRIANGLE)

    def test_shuffled_labels(self):
        rng = random.Random(5)
        for k in (projective_plane(), simplex_boundary(5), barycentric_subdivision(projective_plane())):
            labels = list(k.labels)
            shuffled = labels[:]
            rng.shuffle(shuffled)
            assert is_isomorphic(k, k.relabel(dict(zip(labels, shuffled))))

    def test_same_counts_not_isomorphic(self):
        # path on 4 vertices vs star on 4 vertices: same f-vector
        path = SimplicialComplex([(0, 1), (1, 2), (2, 3)])
        star = SimplicialComplex([(0, 1), (0, 2), (0, 3)])
        assert not is_isomorphic(path, star)

    def test_agrees_with_brute_force_on_small_complexes(self):
        classes = complexes_up_to(4)
        for a, b in combinations(classes, 2):
            assert not is_isomorphic(SimplicialComplex(a), SimplicialComplex(b))

    def test_budget_is_a_distinct_outcome(self):
        with pytest.raises(IsomorphismBudgetExceeded):
            is_isomorphic(simplex_boundary(5), simplex_boundary(5), max_vertices=3)
        big = SimplicialComplex([(i, (i + 1) % 30) for i in range(30)])
        with pytest.raises(IsomorphismBudgetExceeded):
            is_isomorphic(big, big, node_budget=2)


def test_encoding_on_all_small_complexes():
    for facets in complexes_up_to(4):
        k = SimplicialComplex(facets)
        assert is_isomorphic(independence_complex(complex_to_graph(k)), barycentric_subdivision(k))


def _h1(k):
    h = reduced_homology(k)
    return (h.betti[1], h.torsion[1]) if len(h.betti) > 1 else (0, [])


class TestPresentationComplex:
    def test_free_loop(self):
        k = presentation_complex(Presentation(1))
        assert k.f_vector() == [3, 3]
        assert _h1(k) == (1, [])

    def test_trivial_group(self):
        assert _h1(presentation_complex(Presentation(1, ((1,),)))) == (0, [])

    def test_order_two(self):
        assert _h1(presentation_complex(Presentation(1, ((1, 1),)))) == (0, [2])

    def test_no_duplicate_triangles_or_2d_junk(self):
        k = presentation_complex(Presentation(2, ((1, 2, -1, -2), (1, 1, 1))))
        assert k.dim == 2
        assert len(k.faces(2)) == len(set(k.faces(2)))

    def test_empty_relators_dropped(self):
        assert Presentation(1, ((), (1,))).relators == ((1,),)

    def test_bad_letter(self):
        with pytest.raises(ValueError):
            Presentation(1, ((2,),))

    def test_abelianization_matches_h1_random(self):
        rng = random.Random(2024)
        for _ in range(20):
            g = rng.randint(1, 3)
            rels = tuple(
                tuple(rng.choice([1, -1]) * rng.randint(1, g) for _ in range(rng.randint(1, 4)))
                for _ in range(rng.randint(0, 3))
            )
            p = Presentation(g, rels)
            # relator exponent matrix through the dense SNF
            rows = [[sum((1 if x > 0 else -1) for x in r if abs(x) == i) for i in range(1, g + 1)]
                    for r in p.relators]
            if rows:
                d, _, _ = smith_normal_form(IntMatrix.from_rows(rows))
                factors = [x for x in d.diagonal() if x]
            else:
                factors = []
            expected = (g - len(factors), [x for x in factors if x > 1])
            assert _h1(presentation_complex(p)) == expected, p


class TestFileFormats:
    def test_facets_round_trip(self):
        text = "# triangle boundary\na b\nb c\n\nc a\n"
        k = parse_facets(text)
        assert k == TRIANGLE.relabel({0: "a", 1: "b", 2: "c"})
        assert parse_facets(write_facets(k)) == k

    def test_sd_tokens(self):
        text = write_facets(barycentric_subdivision(parse_facets("a b\n")))
        assert sorted(text.split("\n")[:-1]) == ["{a} {a,b}", "{b} {a,b}"]

    def test_presentation_round_trip(self):
        p = parse_presentation("gens 2\n1 1\n1 -2 1 2  # commutator-like\n")
        assert p == Presentation(2, ((1, 1), (1, -2, 1, 2)))
        assert parse_presentation(write_presentation(p)) == p

    @pytest.mark.parametrize("text", ["1 1\n", "gens x\n", "gens 1\n2\n", "gens 1\n1 a\n", ""])
    def test_presentation_errors(self, text):
        with pytest.raises(ComplexFormatError):
            parse_presentation(text)


def test_cone_contains_apex_everywhere():
    k = cone(TRIANGLE)
    assert all("apex" in f for f in k.facet_labels())
