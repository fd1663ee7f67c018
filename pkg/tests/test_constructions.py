"""Tests for the construction generators."""

import pytest

from mixhom.constructions import (
    ConstructionError,
    alternating_cycle,
    bip_g10,
    cactus,
    cactus_cycle,
    circuit,
    construction_names,
    construction_spec,
    cycle_graph,
    generate,
    minimal_counterexample_subdivision,
    outerplanar5,
    p7,
    path_graph,
    red_cycles,
    replication_gadget,
    smallest_congruent,
    x14,
    y_graph,
)
from mixhom.constants import RED
from mixhom.core import serialize_graph, validate_graph
from mixhom.metrics import girth, is_bipartite
from mixhom.models import ConstructionSpec, EdgeStep, LinkPattern
from mixhom.solver import count_homomorphisms, exists_walk, find_homomorphism, forced_colors
from mixhom.targets import builtin_target


class TestSmallestCongruent:
    """Tests for smallest_congruent."""

    @pytest.mark.parametrize(
        "lower,modulus,residue,expected",
        [(3, 6, 4, 4), (5, 6, 4, 10), (10, 6, 4, 10), (3, 4, 2, 6), (10, 4, 2, 10), (11, 4, 2, 14)],
    )
    def test_values(self, lower, modulus, residue, expected):
        assert smallest_congruent(lower, modulus, residue) == expected


class TestBuildingBlocks:
    """Tests for cycles and paths."""

    def test_circuit(self):
        g = circuit(5)
        assert g.num_vertices == 5
        assert g.arcs == frozenset((i, (i + 1) % 5, 0) for i in range(5))
        assert g.vertex_name(0) == "v1"

    def test_circuit_too_short(self):
        with pytest.raises(ConstructionError):
            circuit(2)

    def test_alternating_cycle(self):
        g = alternating_cycle(6)
        colors = sorted(c for _, _, c in g.edges)
        assert colors == [0, 0, 0, 1, 1, 1]
        assert (0, 1, 0) in g.edges
        assert (1, 2, 1) in g.edges

    def test_alternating_cycle_needs_even_length(self):
        with pytest.raises(ConstructionError):
            alternating_cycle(5)

    def test_cycle_graph_from_pattern(self):
        g = cycle_graph(LinkPattern.from_tokens("F K F K"), 1, 0)
        assert g.arcs == frozenset({(0, 1, 0), (2, 1, 0), (2, 3, 0), (0, 3, 0)})

    def test_path_graph_labels(self):
        g = path_graph(LinkPattern.from_tokens("B R"), 0, 2)
        assert [g.vertex_name(v) for v in g.vertices] == ["p0", "p1", "p2"]

    def test_cactus_cycle_blocks_d(self):
        t4 = builtin_target("t4_oriented")
        w = cactus_cycle(4)
        assert count_homomorphisms(w, t4, {0: {t4.vertex_index("d")}}) == 0
        assert t4.vertex_index("d") not in forced_colors(w, 0, t4)


class TestCactus:
    """Tests for the oriented cactus."""

    def test_girth_three(self):
        g = cactus(3)
        assert g.num_vertices == 16
        assert g.num_links == 20
        assert girth(g) == 4
        assert validate_graph(g) == []

    def test_girth_parameter_rounds_up(self):
        g = cactus(5)
        assert girth(g) == 10
        assert g.num_vertices == 10 + 10 * 9

    def test_no_four_vertex_tournament(self):
        g = cactus(3)
        t4 = builtin_target("t4_oriented")
        assert find_homomorphism(g, t4) is None

    def test_maps_to_t5(self):
        g = cactus(3)
        t5 = builtin_target("t5")
        h = find_homomorphism(g, t5)
        assert h is not None and h.is_valid(g, t5)

    def test_labels(self):
        g = cactus(3)
        assert g.vertex_index("v1") == 0
        assert g.vertex_index("v1.w2") == 4

    def test_rejects_small_girth(self):
        with pytest.raises(ConstructionError):
            cactus(2)


class TestOuterplanar:
    """Tests for the outerplanar 2-edge-colored graph."""

    def test_girth_three(self):
        g = outerplanar5(3)
        assert g.num_vertices == 22
        assert girth(g) == 6
        assert is_bipartite(g)

    def test_girth_ten(self):
        g = outerplanar5(10)
        assert girth(g) == 10
        assert g.num_vertices == 10 + 8 * 8


class TestBipartiteCounterexample:
    """Tests for the pieces of the girth-10 bipartite 2-edge-colored graph."""

    @pytest.fixture
    def t6(self):
        return builtin_target("t6")

    def test_every_coloring_of_the_outerplanar_graph_uses_c(self, t6):
        g = outerplanar5(10)
        allowed = t6.color_set("abdef")
        assert count_homomorphisms(g, t6, {v: allowed for v in g.vertices}) == 0

    @pytest.mark.parametrize("pattern", ["B B B B B", "B B R B"])
    def test_no_connecting_walk_from_c_to_c(self, t6, pattern):
        c = t6.vertex_index("c")
        assert not exists_walk(t6, LinkPattern.from_tokens(pattern), c, c)

    @pytest.mark.parametrize("swap", [False, True])
    def test_sides(self, swap):
        g = bip_g10(swap=swap)
        assert g.num_vertices == 75 * 74 + 74 * (37 * 4 + 37 * 3)
        assert is_bipartite(g)

    def test_swap_changes_the_graph(self):
        assert serialize_graph(bip_g10()) != serialize_graph(bip_g10(swap=True))


class TestOrientedCounterexample:
    """Tests for the pieces of the girth-14 oriented graph."""

    def test_x14(self):
        g = x14()
        assert g.num_vertices == 14
        assert g.num_links == 14
        assert girth(g) == 14

    def test_x14_needs_b_on_an_even_vertex(self):
        t5 = builtin_target("t5")
        g = x14()
        avoid_b = frozenset(t5.color_set("acde"))
        constraints = {g.vertex_index(f"v{i}"): avoid_b for i in range(0, 14, 2)}
        assert count_homomorphisms(g, t5, constraints) == 0

    def test_p7_ends_cannot_both_be_b(self):
        t5 = builtin_target("t5")
        g = p7()
        b = {t5.vertex_index("b")}
        constraints = {g.vertex_index("p0"): b, g.vertex_index("p6"): b}
        assert find_homomorphism(g, t5, constraints) is None

    def test_p7_maps_to_t5(self):
        assert find_homomorphism(p7(), builtin_target("t5")) is not None

    @pytest.mark.slow
    def test_y_graph(self):
        g = y_graph()
        assert g.num_vertices == 357
        assert girth(g) == 14
        assert is_bipartite(g)

    def test_y_graph_wiring(self):
        g = y_graph()
        path = p7()
        assert g.num_vertices == 8 * 14 + 49 * 5
        for i in range(0, 14, 2):
            for j in range(0, 14, 2):
                names = [f"main.v{i}"] + [f"P{i}_{j}.p{k}" for k in range(1, 6)] + [f"X{i}.v{j}"]
                index = [g.vertex_index(name) for name in names]
                assert all((index[t], index[h], c) in g.arcs for t, h, c in path.arcs)

    def test_b_on_the_main_cycle_blocks_its_copy(self):
        t5 = builtin_target("t5")
        g = y_graph()
        piece = g.induced(
            v
            for v, label in g.labels.items()
            if label == "main.v0" or label.startswith(("X0.", "P0_"))
        )
        assert piece.num_vertices == 1 + 14 + 7 * 5
        constraints = {piece.vertex_index("main.v0"): t5.color_set("b")}
        assert find_homomorphism(piece, t5, constraints) is None
        path = p7()
        far_end = forced_colors(
            path, path.vertex_index("p6"), t5, {path.vertex_index("p0"): t5.color_set("b")}
        )
        assert t5.vertex_index("b") not in far_end


class TestRedCycles:
    """Tests for the 2-edge-colored odd-girth construction."""

    def test_small_instance(self):
        g = red_cycles(3)
        assert g.num_vertices == 4 * 3 + 9 * 4
        assert girth(g) == 3

    def test_default_size(self):
        g = red_cycles()
        assert g.num_vertices == 616
        assert girth(g) == 11
        assert not is_bipartite(g)

    def test_rejects_even_length(self):
        with pytest.raises(ConstructionError):
            red_cycles(10)

    @pytest.mark.parametrize("length", [5, 11])
    def test_every_coloring_of_a_red_cycle_uses_c(self, length):
        t6 = builtin_target("t6")
        g = cycle_graph(LinkPattern.uniform(EdgeStep(RED), length), 0, 2)
        allowed = t6.color_set("abdef")
        assert find_homomorphism(g, t6) is not None
        assert find_homomorphism(g, t6, {v: allowed for v in g.vertices}) is None

    def test_blue_path_cannot_join_c_to_c(self):
        t6 = builtin_target("t6")
        c = t6.vertex_index("c")
        assert not exists_walk(t6, LinkPattern.uniform(EdgeStep(), 5), c, c)

    def test_small_instance_refuted(self):
        g = red_cycles(5)
        assert g.num_vertices == 6 * 5 + 25 * 4
        assert find_homomorphism(g, builtin_target("t6")) is None


class TestReplicationGadget:
    """Tests for replication_gadget."""

    def test_oriented_counts(self):
        g = replication_gadget(circuit(3), 3)
        assert g.num_vertices == 3 + 3 * 6
        assert g.num_links == 3 + 3 * 10

    def test_keeps_girth(self):
        source = cactus(3)
        assert girth(replication_gadget(source, 5)) >= min(girth(source), 5)

    def test_edge_colored_counts(self):
        g = replication_gadget(alternating_cycle(4), 4)
        # per edge: one 3-edge path of each color
        assert g.num_vertices == 4 + 4 * 2 * 2
        assert g.num_links == 4 + 4 * 2 * 3

    def test_keeps_labels(self):
        g = replication_gadget(circuit(3), 3)
        assert g.vertex_name(0) == "v1"


class TestSubdivision:
    """Tests for minimal_counterexample_subdivision."""

    def test_arc(self):
        g, designated = minimal_counterexample_subdivision(circuit(3), (0, 1, 0))
        assert designated == 4
        assert g.arcs == frozenset({(1, 2, 0), (2, 0, 0), (0, 3, 0), (4, 3, 0), (4, 1, 0)})

    def test_edge(self):
        t6 = builtin_target("t6")
        g, designated = minimal_counterexample_subdivision(t6, (0, 1, 0))
        assert designated == 6
        assert (0, 1, 0) not in g.edges
        assert {(0, 6, 1), (6, 7, 1), (1, 7, 0)} <= g.edges

    def test_edge_given_in_either_order(self):
        t6 = builtin_target("t6")
        g, _ = minimal_counterexample_subdivision(t6, (1, 0, 0))
        assert (0, 1, 0) not in g.edges

    def test_missing_link(self):
        with pytest.raises(ConstructionError):
            minimal_counterexample_subdivision(circuit(3), (1, 0, 0))


class TestGenerate:
    """Tests for the named-construction registry."""

    def test_names(self):
        assert construction_names() == [
            "cactus", "outerplanar5", "x14", "p7", "y_graph", "red_cycles", "bip_g10"
        ]

    def test_generate_with_girth(self):
        assert generate(construction_spec("cactus", 3)) == cactus(3)

    def test_generate_default(self):
        assert generate(ConstructionSpec.of("x14")) == x14()

    def test_generate_red_cycles_length(self):
        assert generate(construction_spec("red_cycles", 5)).num_vertices == 6 * 5 + 25 * 4

    def test_unknown_construction(self):
        with pytest.raises(ConstructionError, match="Unknown construction"):
            generate(ConstructionSpec.of("petersen"))

    def test_unknown_parameter(self):
        with pytest.raises(ConstructionError):
            generate(ConstructionSpec.of("x14", g=5))

    def test_fixed_girth(self):
        with pytest.raises(ConstructionError):
            construction_spec("y_graph", 14)
