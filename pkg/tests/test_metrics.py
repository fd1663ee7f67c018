"""Tests for structural metrics and counting bounds."""

import itertools
import math
import random
from fractions import Fraction

import networkx as nx
import pytest

from mixhom.constructions import alternating_cycle, cactus, circuit, p7
from mixhom.core import GraphBuilder, parse_graph
from mixhom.metrics import (
    bipartition,
    check_discharging,
    color_class_connectivity,
    discharge,
    edge_class_spanning,
    girth,
    is_bipartite,
    mad_bruteforce,
    mad_exact,
    planar_bounds,
    threads,
    universality_edge_bound,
)
from mixhom.models import EdgeStep, MixedGraph
from mixhom.targets import builtin_target


def complete_graph(order):
    return MixedGraph(order, 0, 1, edges={(u, v, 0) for u, v in itertools.combinations(range(order), 2)})


def subdivided_skeleton(degree, order, k, seed):
    """A random regular skeleton with its edges subdivided inside the discharging hypothesis."""
    rng = random.Random(seed)
    skeleton = nx.random_regular_graph(degree, order, seed=seed)
    counts = {tuple(sorted(e)): rng.randint(0, (k + 1) // 2) for e in skeleton.edges}
    if degree == 3:
        for v in sorted(skeleton.nodes):
            incident = sorted(e for e in counts if v in e)
            while sum(counts[e] for e in incident) > k:
                counts[max(incident, key=lambda e: (counts[e], e))] -= 1
    builder = GraphBuilder(0, 1)
    builder.add_vertices(order)
    for (u, w), count in sorted(counts.items()):
        builder.add_path(u, w, [EdgeStep(0)] * (count + 1))
    return builder.build()


@pytest.fixture
def small_graphs():
    """Graphs with a known variety of densities."""
    return [
        circuit(3),
        circuit(6),
        p7(),
        builtin_target("t5"),
        builtin_target("t6"),
        complete_graph(5),
        # a triangle hanging off a long path
        parse_graph("p mg 6 0 1\ne 0 1 0\ne 1 2 0\ne 2 0 0\ne 2 3 0\ne 3 4 0\ne 4 5 0\n"),
        # K4 plus a pendant vertex
        parse_graph("p mg 5 0 1\ne 0 1 0\ne 0 2 0\ne 0 3 0\ne 1 2 0\ne 1 3 0\ne 2 3 0\ne 3 4 0\n"),
    ]


class TestGirth:
    """Tests for girth and bipartiteness."""

    def test_cycles(self):
        assert girth(circuit(3)) == 3
        assert girth(circuit(7)) == 7
        assert girth(alternating_cycle(8)) == 8

    def test_forest(self):
        assert girth(p7()) == math.inf

    def test_target(self):
        assert girth(builtin_target("t5")) == 3

    def test_is_bipartite(self):
        assert is_bipartite(alternating_cycle(6))
        assert not is_bipartite(circuit(5))
        assert is_bipartite(p7())

    def test_bipartition(self):
        first, second = bipartition(alternating_cycle(4))
        assert first == {0, 2}
        assert second == {1, 3}

    def test_bipartition_of_odd_cycle(self):
        with pytest.raises(ValueError):
            bipartition(circuit(3))


class TestMad:
    """Tests for the maximum average degree."""

    def test_exact_matches_bruteforce(self, small_graphs):
        for g in small_graphs:
            assert mad_exact(g) == mad_bruteforce(g)

    def test_known_values(self):
        assert mad_exact(circuit(4)) == 2
        assert mad_exact(complete_graph(5)) == 4
        assert mad_exact(builtin_target("t5")) == Fraction(18, 5)

    def test_densest_part_wins(self):
        # K4 plus pendant: the K4 alone has average degree 3
        g = parse_graph("p mg 5 0 1\ne 0 1 0\ne 0 2 0\ne 0 3 0\ne 1 2 0\ne 1 3 0\ne 2 3 0\ne 3 4 0\n")
        assert mad_exact(g) == 3

    def test_cactus(self):
        assert mad_exact(cactus(3)) == Fraction(5, 2)

    def test_edgeless(self):
        assert mad_exact(MixedGraph(3, 0, 1)) == 0

    def test_empty_graph(self):
        with pytest.raises(ValueError):
            mad_exact(MixedGraph(0, 0, 1))

    def test_bruteforce_size_limit(self):
        with pytest.raises(ValueError):
            mad_bruteforce(cactus(5))


class TestThreads:
    """Tests for threads and discharging."""

    def test_path(self):
        (thread,) = threads(p7())
        assert thread.ends == (0, 6)
        assert thread.members == [1, 2, 3, 4, 5]

    def test_pure_cycle(self):
        (thread,) = threads(circuit(4))
        assert thread.ends == (None, None)
        assert sorted(thread.members) == [0, 1, 2, 3]

    def test_loop_thread(self):
        g = cactus(3)
        loops = [t for t in threads(g) if t.ends[0] == t.ends[1]]
        assert len(loops) == 4
        assert all(len(t.members) == 3 for t in loops)

    def test_discharge_conserves_charge(self):
        g = cactus(3)
        charges = discharge(g, 5)
        assert sum(charges.values()) == sum(g.degree(v) for v in g.vertices)

    def test_discharge_loop_thread_served_twice(self):
        g = cactus(3)
        charges = discharge(g, 5)
        # a 2-vertex on a loop thread gets 1/7 from each side
        assert charges[4] == 2 + Fraction(2, 7)
        # a cycle vertex sends 3/7 twice
        assert charges[0] == 4 - Fraction(6, 7)


class TestCheckDischarging:
    """Tests for check_discharging."""

    def test_cactus_holds(self):
        report = check_discharging(cactus(3), 5)
        assert report.hypothesis_holds
        assert report.max_consecutive_2vertices == 3
        assert report.mad == Fraction(5, 2)
        assert report.bound_holds is True
        assert report.mad_lower_bound == 2 + Fraction(2, 7)
        assert report.girth_exclusion == 16

    def test_run_too_long(self):
        report = check_discharging(cactus(3), 3)
        assert not report.hypothesis_holds
        assert "consecutive" in report.reason
        assert report.mad is None
        assert report.bound_holds is None

    def test_pure_cycle_is_unbounded(self):
        report = check_discharging(circuit(5), 11)
        assert report.max_consecutive_2vertices is None
        assert not report.hypothesis_holds

    def test_low_degree(self):
        report = check_discharging(p7(), 11)
        assert not report.hypothesis_holds
        assert "minimum degree" in report.reason

    def test_girth_exclusions(self):
        assert check_discharging(cactus(3), 11).girth_exclusion == 28
        assert check_discharging(cactus(3), 8).girth_exclusion == 22

    def test_negative_k(self):
        with pytest.raises(ValueError):
            check_discharging(cactus(3), -1)


class TestDischargingBound:
    """Generated graphs meeting the hypothesis reach the mad and charge bounds."""

    @pytest.mark.parametrize("k", [2, 5, 8, 11])
    @pytest.mark.parametrize("degree,order", [(3, 6), (3, 8), (4, 6), (4, 7)])
    def test_bound_on_subdivided_skeletons(self, k, degree, order):
        bound = 2 + Fraction(2, k + 2)
        for seed in range(3):
            g = subdivided_skeleton(degree, order, k, seed)
            report = check_discharging(g, k)
            assert report.hypothesis_holds, report.reason
            assert report.bound_holds
            assert report.mad >= bound
            charges = discharge(g, k)
            assert min(charges.values()) >= bound
            assert report.min_final_charge == min(charges.values())
            assert sum(charges.values()) == sum(g.degree(v) for v in g.vertices)

    def test_generator_subdivides(self):
        g = subdivided_skeleton(3, 8, 11, 0)
        assert any(g.degree(v) == 2 for v in g.vertices)


class TestUniversalityBound:
    """Tests for universality_edge_bound."""

    def test_two_arc_colors(self):
        bound = universality_edge_bound(2, 0, 7)
        assert (bound.required, bound.planar_max, bound.impossible) == (26, 15, True)
        assert bound.exceeds

    def test_single_edge_color(self):
        bound = universality_edge_bound(0, 1, 5)
        assert bound.required == 4
        assert not bound.impossible
        assert not bound.exceeds

    def test_impossible_iff_weight_at_least_three(self):
        for m in range(4):
            for n in range(4):
                bound = universality_edge_bound(m, n, 10)
                assert bound.impossible == (2 * m + n >= 3)

    def test_invalid_arguments(self):
        with pytest.raises(ValueError):
            universality_edge_bound(1, 1, 2)
        with pytest.raises(ValueError):
            universality_edge_bound(-1, 0, 5)


class TestPlanarBounds:
    """Tests for planar_bounds."""

    def test_cactus(self):
        assert planar_bounds(cactus(3)).passed

    def test_t5(self):
        bounds = planar_bounds(builtin_target("t5"))
        assert bounds.edges == 9
        assert bounds.edge_limit == 9
        assert bounds.passed

    def test_k6_fails_edge_count(self):
        bounds = planar_bounds(complete_graph(6))
        assert not bounds.edges_ok
        assert not bounds.passed


class TestColorClassConnectivity:
    """Tests for the color-class connectivity checks."""

    def test_t6(self):
        report = color_class_connectivity(builtin_target("t6"))
        assert report.passed
        assert [c.kind for c in report.classes] == ["edge", "edge"]
        assert [c.links for c in report.classes] == [6, 6]

    def test_t5(self):
        report = color_class_connectivity(builtin_target("t5"))
        assert report.passed
        (arc_class,) = report.classes
        assert arc_class.links == 9
        assert arc_class.required_links == 9
        assert arc_class.saturation_length is not None

    def test_frame(self):
        frame = color_class_connectivity(builtin_target("t6")).to_frame()
        assert list(frame["passed"]) == [True, True]

    def test_disconnected_class(self):
        assert not edge_class_spanning(alternating_cycle(4), 0)
        report = color_class_connectivity(alternating_cycle(4))
        assert not report.passed
