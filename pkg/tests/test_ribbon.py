from fractions import Fraction
from math import comb, factorial

import pytest

from stratavol.permutation import cycle_count, compose
from stratavol.pnum import p_value, pgvn_polynomial
from stratavol.ribbon import (
    EdgeForm,
    MetricAssignment,
    PerimeterPair,
    Wall,
    count_metrics,
    count_positive_trees,
    counting_function,
    enumerate_graphs,
    fit_ray_polynomial,
    p0_oracle,
    tree_weights,
    verify_wall_constancy,
    wall_sample_point,
)
from stratavol.ribbon import _sign_pattern


class TestEnumeration:
    def test_single_edge(self):
        classes = enumerate_graphs(0, 1, 1)
        assert len(classes) == 1 and classes[0][1] == 1

    def test_four_spanning_paths(self):
        classes = enumerate_graphs(0, 2, 2)
        assert len(classes) == 4
        assert all(aut == 1 for _, aut in classes)

    def test_genus_one_triple_edge(self):
        classes = enumerate_graphs(1, 1, 1)
        assert len(classes) == 1 and classes[0][1] == 3

    def test_trees_have_trivial_automorphisms(self):
        for k, l in [(1, 2), (2, 2), (3, 2), (3, 3)]:
            assert all(aut == 1 for _, aut in enumerate_graphs(0, k, l))

    @pytest.mark.parametrize(
        "k, l", [(1, 1), (1, 2), (2, 2), (3, 2), (2, 4), (3, 3), (4, 3), (4, 4)]
    )
    def test_tree_counts_match_narayana_formula(self, k, l):
        # Minimal factorizations of an E-cycle into (k cycles) o (l cycles)
        # are counted by the Narayana number N(E, k); labels contribute
        # k! l! and the E rotations act freely since trees are rigid.
        edges = k + l - 1
        narayana = comb(edges, k) * comb(edges, k - 1) // edges
        expected = narayana * factorial(k) * factorial(l) // edges
        assert len(enumerate_graphs(0, k, l)) == expected

    def test_structural_invariants(self):
        for g, k, l in [(0, 2, 3), (1, 2, 1), (1, 2, 2), (2, 1, 1)]:
            for graph, aut in enumerate_graphs(g, k, l):
                assert graph.face_count() == 1
                assert graph.genus() == g
                assert sorted(set(graph.black_labels)) == list(range(1, k + 1))
                assert sorted(set(graph.white_labels)) == list(range(1, l + 1))
                assert aut >= 1

    def test_dart_level_view(self):
        graph, _ = enumerate_graphs(1, 1, 1)[0]
        rotation = graph.rotation()
        pairing = graph.pairing()
        assert len(rotation) == graph.dart_count == 6
        # pairing is a fixed-point-free involution matching black to white darts
        assert all(pairing[pairing[d]] == d and pairing[d] != d for d in range(6))
        assert all(pairing[d] % 2 == 1 - d % 2 for d in range(6))
        # faces of the dart map: one orbit of rotation o pairing per boundary
        assert cycle_count(compose(rotation, pairing)) == graph.face_count() == 1

    def test_size_guard(self):
        with pytest.raises(ValueError):
            enumerate_graphs(3, 2, 2)  # would need 9 edges

    @pytest.mark.parametrize("g, k, l", [(1, 1, 1), (1, 2, 1), (2, 1, 1), (1, 2, 2)])
    def test_orbit_sizes_account_for_all_labeled_structures(self, g, k, l):
        # each class meets the fixed-face normal form in edges/|Aut| labeled
        # structures, so the class list must tile the labeled count exactly
        from itertools import permutations as all_perms

        from stratavol.permutation import cycle_count as cc, compose as co, inverse as inv

        edges = k + l - 1 + 2 * g
        sigma = tuple((i + 1) % edges for i in range(edges))
        bases = sum(
            1
            for rho in all_perms(range(edges))
            if cc(rho) == k and cc(co(inv(rho), sigma)) == l
        )
        labeled = bases * factorial(k) * factorial(l)
        classes = enumerate_graphs(g, k, l)
        assert sum(Fraction(edges, aut) for _, aut in classes) == labeled

    def test_json_dump_keys(self):
        graph, aut = enumerate_graphs(0, 2, 2)[0]
        data = graph.to_json(aut)
        assert set(data) == {"darts", "rotation", "pairing", "colors", "genus", "faces", "aut"}


class TestCountMetrics:
    def test_single_edge_tree(self):
        tree, _ = enumerate_graphs(0, 1, 1)[0]
        assert count_metrics(tree, PerimeterPair((7,), (7,))) == 1
        assert count_metrics(tree, PerimeterPair((0,), (0,))) == 0

    def test_triple_edge_compositions(self):
        graph, _ = enumerate_graphs(1, 1, 1)[0]
        for length in range(1, 9):
            expected = (length - 1) * (length - 2) // 2
            assert count_metrics(graph, PerimeterPair((length,), (length,))) == expected

    def test_balance_forces_zero(self):
        for graph, _ in enumerate_graphs(0, 2, 2):
            assert count_metrics(graph, PerimeterPair((5, 2), (4, 2))) == 0

    def test_metric_assignment_round_trip(self):
        tree, _ = enumerate_graphs(0, 2, 2)[0]
        point = PerimeterPair((5, 1), (4, 2))
        weights = tree_weights(tree, point)
        if all(w > 0 for w in weights):
            metric = MetricAssignment(tuple(int(w) for w in weights))
            assert metric.perimeters(tree) == point

    def test_tree_metric_is_indicator_of_positive_weights(self):
        # on a tree the metric count is 0 or 1, deciding positivity of the
        # unique forced weight vector
        points = [
            PerimeterPair((5, 1), (4, 2)),
            PerimeterPair((2, 2), (3, 1)),
            PerimeterPair((6, 3), (5, 4)),
        ]
        for tree, _ in enumerate_graphs(0, 2, 2):
            for point in points:
                weights = tree_weights(tree, point)
                expected = 1 if all(w > 0 for w in weights) else 0
                assert count_metrics(tree, point) == expected


class TestCountingFunction:
    def test_tree_value(self):
        for length in (1, 4, 9):
            assert counting_function(0, 1, 1, PerimeterPair((length,), (length,))) == 1

    def test_genus_one_weighted(self):
        assert counting_function(1, 1, 1, PerimeterPair((4,), (4,))) == 1

    def test_two_by_two(self):
        assert counting_function(0, 2, 2, PerimeterPair((5, 1), (4, 2))) == 2


class TestTreeWeights:
    def test_single_edge(self):
        tree, _ = enumerate_graphs(0, 1, 1)[0]
        assert tree_weights(tree, PerimeterPair((7,), (7,))) == (7,)

    def test_path_example(self):
        # the path with edges b2-w2, b1-w2, b1-w1 at (5,1;4,2) carries (1,1,4)
        for tree, _ in enumerate_graphs(0, 2, 2):
            ends = [tree.edge_endpoints(e) for e in range(3)]
            if sorted(ends) == [(1, 1), (1, 2), (2, 2)]:
                weights = dict(zip(ends, tree_weights(tree, PerimeterPair((5, 1), (4, 2)))))
                assert weights[(2, 2)] == 1
                assert weights[(1, 2)] == 1
                assert weights[(1, 1)] == 4
                break
        else:
            pytest.fail("path tree not found")

    def test_unbalanced_rejected(self):
        tree, _ = enumerate_graphs(0, 1, 1)[0]
        with pytest.raises(ValueError):
            tree_weights(tree, PerimeterPair((3,), (4,)))

    def test_non_tree_rejected(self):
        graph, _ = enumerate_graphs(1, 1, 1)[0]
        with pytest.raises(ValueError):
            tree_weights(graph, PerimeterPair((3,), (3,)))


class TestPositiveTrees:
    def test_single_edge(self):
        assert count_positive_trees(1, 1, PerimeterPair((5,), (5,))) == 1

    def test_worked_examples(self):
        assert count_positive_trees(2, 2, PerimeterPair((5, 1), (4, 2))) == 2
        assert count_positive_trees(2, 2, PerimeterPair((5, 1), (5, 1))) == 1

    def test_rational_points_allowed(self):
        point = PerimeterPair((Fraction(7, 2), Fraction(1, 2)), (Fraction(5, 2), Fraction(3, 2)))
        assert count_positive_trees(2, 2, point) == 2


class TestWallSampling:
    def test_deterministic(self):
        wall = Wall.diagonal(2)
        assert wall_sample_point(wall, seed=5) == wall_sample_point(wall, seed=5)

    def test_diagonal_membership(self):
        point = wall_sample_point(Wall.diagonal(3), seed=2)
        assert point.black == point.white
        assert point.all_positive()

    def test_full_space(self):
        point = wall_sample_point(Wall.full_space(1, 1), seed=0)
        assert point.black == point.white and point.black[0] > 0

    def test_block_wall_membership(self):
        wall = Wall.partition_wall((2, 1), (1, 2))
        point = wall_sample_point(wall, seed=4)
        assert point.all_positive()
        for equation in wall.equations:
            assert equation.evaluate(point) == 0

    def test_impossible_wall_errors(self):
        # the form L_1 = 0 admits no positive point
        wall = Wall(2, 1, (EdgeForm(frozenset({1}), frozenset(), 2, 1),))
        with pytest.raises(ValueError):
            wall_sample_point(wall, seed=0, retries=50)

    def test_sign_pattern_stable_along_rays(self):
        point = wall_sample_point(Wall.diagonal(2), seed=3)
        base = _sign_pattern(2, 2, point)
        for c in range(2, 6):
            assert _sign_pattern(2, 2, point.scale(c)) == base


class TestOracle:
    @pytest.mark.parametrize(
        "b, w, expected",
        [((1, 1), (1, 1), 1), ((2,), (2,), 2), ((2, 1), (1, 1), 4)],
    )
    def test_examples(self, b, w, expected):
        assert p0_oracle(b, w) == expected
        assert expected == p_value(tuple(bi + wi for bi, wi in zip(b, w)))

    def test_size_guard(self):
        with pytest.raises(ValueError):
            p0_oracle((5,), (5,))


class TestFitRay:
    def test_constant_tree_case(self):
        poly = fit_ray_polynomial(0, 1, 1, PerimeterPair((1,), (1,)), 3)
        assert poly == [Fraction(1)]

    def test_genus_one_leading_term(self):
        poly = fit_ray_polynomial(1, 1, 1, PerimeterPair((1,), (1,)), 6)
        assert poly == [Fraction(1, 3), Fraction(-1, 2), Fraction(1, 6)]
        assert poly[-1] == pgvn_polynomial(1, 1).evaluate((1,))

    def test_two_cylinder_leading_term(self):
        poly = fit_ray_polynomial(1, 2, 2, PerimeterPair((5, 1), (5, 1)), 6)
        assert len(poly) == 3
        assert poly[-1] == pgvn_polynomial(1, 2).evaluate((5, 1))

    def test_genus_two_leading_term(self):
        poly = fit_ray_polynomial(2, 1, 1, PerimeterPair((1,), (1,)), 7)
        assert len(poly) == 5
        assert poly[-1] == Fraction(1, 15) == pgvn_polynomial(2, 1).evaluate((1,))

    def test_top_term_stable_across_cells(self):
        # (5,1) and (2,7) lie in the two different open cells of the diagonal
        # wall of H_{2,2}; the lower-order terms may differ but the leading
        # coefficient comes from one homogeneous polynomial.
        top = pgvn_polynomial(1, 2)
        for lengths in [(5, 1), (2, 7)]:
            poly = fit_ray_polynomial(1, 2, 2, PerimeterPair(lengths, lengths), 6)
            assert poly[-1] == top.evaluate(lengths)

    def test_cmax_precondition(self):
        with pytest.raises(ValueError):
            fit_ray_polynomial(1, 1, 1, PerimeterPair((1,), (1,)), 3)


def test_wall_constancy():
    assert verify_wall_constancy()
