"""Tests for forcing gadgets, cores, good sets and reachability."""

import pytest

from mixhom.constructions import circuit
from mixhom.core import parse_graph
from mixhom.forcing import (
    ORIENTED_MENU,
    TWO_EDGE_COLORED_MENU,
    CoreSizeError,
    GadgetError,
    apply_gadget,
    core_of,
    forcing_reachability,
    gadget_formula,
    gadget_graph,
    is_good_set,
    nonempty_subsets,
)
from mixhom.models import ForcingGadget, MixedGraph
from mixhom.targets import builtin_target, isomorphic


@pytest.fixture
def t5():
    return builtin_target("t5")


@pytest.fixture
def t6():
    return builtin_target("t6")


def show(graph, s):
    return "".join(graph.names(s))


class TestGadgetGraphs:
    """Tests for gadget_graph."""

    def test_neighbor_gadget(self):
        built = gadget_graph(ForcingGadget("out"))
        assert built.graph.arcs == frozenset({(0, 1, 0)})
        assert built.attachments == (0,)
        assert built.output == 1

    def test_dashed_gadget(self):
        built = gadget_graph(ForcingGadget("dashed_red"))
        assert built.graph.edges == frozenset({(0, 1, 1)})
        assert built.attachments == (0, 1)

    def test_z_default(self):
        built = gadget_graph(ForcingGadget("Z"))
        assert built.graph.num_vertices == 4
        assert built.attachments == (1, 2, 3)
        assert built.output == 1

    def test_z_girth(self):
        assert gadget_graph(ForcingGadget("Z", 5)).graph.num_vertices == 10

    def test_x_default(self):
        built = gadget_graph(ForcingGadget("X"))
        assert built.graph.num_vertices == 4
        assert sorted(c for _, _, c in built.graph.edges) == [0, 0, 0, 1]
        assert built.output == 0

    def test_x_rounds_to_even(self):
        assert gadget_graph(ForcingGadget("X", 5)).graph.num_vertices == 6

    def test_y_default(self):
        built = gadget_graph(ForcingGadget("Y"))
        assert built.graph.num_vertices == 9
        assert built.graph.num_links == 10
        assert len(built.attachments) == 8

    def test_bad_girth(self):
        with pytest.raises(GadgetError):
            gadget_graph(ForcingGadget("Z", 2))
        with pytest.raises(GadgetError):
            gadget_graph(ForcingGadget("Y", 0))

    def test_unknown(self):
        with pytest.raises(GadgetError):
            gadget_graph(ForcingGadget("W"))


class TestApplyGadget:
    """Tests for apply_gadget."""

    @pytest.mark.parametrize(
        "target,gadget,colors,expected",
        [
            ("t5", "out", "c", "d"),
            ("t5", "in", "a", "de"),
            ("t5", "Z", "abd", "ad"),
            ("t6", "X", "abcde", "acde"),
            ("t6", "Y", "acde", "ad"),
            ("t6", "red", "f", "b"),
            ("t6", "dashed_blue", "abc", "abc"),
        ],
    )
    def test_known_outputs(self, target, gadget, colors, expected):
        graph = builtin_target(target)
        result = apply_gadget(graph, ForcingGadget(gadget), graph.color_set(colors))
        assert show(graph, result) == expected

    def test_formula_agrees_with_solver_oriented(self, t5):
        for gadget in (ForcingGadget("out"), ForcingGadget("in")):
            for s in nonempty_subsets(list(t5.vertices)):
                assert apply_gadget(t5, gadget, s) == gadget_formula(t5, gadget, s)

    def test_formula_agrees_with_solver_2ec(self, t6):
        names = ("blue", "red", "dashed_blue", "dashed_red")
        for gadget in (ForcingGadget(name) for name in names):
            for s in nonempty_subsets(list(t6.vertices)):
                assert apply_gadget(t6, gadget, s) == gadget_formula(t6, gadget, s)

    def test_no_formula_for_cycle_gadgets(self, t5):
        assert gadget_formula(t5, ForcingGadget("Z"), {0, 1}) is None

    def test_empty_set(self, t5):
        with pytest.raises(GadgetError):
            apply_gadget(t5, ForcingGadget("out"), set())

    def test_signature_mismatch(self, t6):
        with pytest.raises(GadgetError):
            apply_gadget(t6, ForcingGadget("out"), {0})

    def test_missing_vertex(self, t5):
        with pytest.raises(GadgetError):
            apply_gadget(t5, ForcingGadget("out"), {9})


class TestCores:
    """Tests for core_of and is_good_set."""

    def test_clique_is_core(self):
        t4 = builtin_target("t4_2ec")
        assert core_of(t4) == t4

    def test_directed_cycle_is_core(self):
        assert core_of(circuit(6)).num_vertices == 6

    def test_path_folds_to_edge(self):
        g = parse_graph("p mg 3 0 2\ne 0 1 0\ne 1 2 0\n")
        core = core_of(g)
        assert core.num_vertices == 2
        assert core.edges == frozenset({(0, 1, 0)})

    def test_edgeless(self):
        assert core_of(MixedGraph(3, 0, 2)).num_vertices == 1

    def test_size_limit(self):
        with pytest.raises(CoreSizeError):
            core_of(circuit(9))

    def test_abcd_is_good(self, t6):
        assert is_good_set(t6, t6.color_set("abcd"))

    def test_small_sets_are_not_good(self, t6):
        assert not is_good_set(t6, t6.color_set("abc"))

    def test_core_of_good_set_is_the_clique(self, t6):
        core = core_of(t6.induced(t6.color_set("abcd")))
        assert isomorphic(core, builtin_target("t4_2ec"))

    def test_empty_good_set(self, t6):
        with pytest.raises(GadgetError):
            is_good_set(t6, set())


class TestReachability:
    """Tests for forcing_reachability."""

    def test_nonempty_subsets(self):
        subsets = nonempty_subsets([2, 0, 1])
        assert len(subsets) == 7
        assert subsets[:3] == [frozenset({0}), frozenset({1}), frozenset({2})]
        assert subsets[-1] == frozenset({0, 1, 2})

    def test_t5_reaches_abcd(self, t5):
        starts = nonempty_subsets(sorted(t5.color_set("abd")))
        report = forcing_reachability(t5, starts, "equals_abcd", ORIENTED_MENU, "t5")
        assert report.passed
        assert len(report.entries) == 7
        assert report.failures() == []

    def test_witness_replays(self, t5):
        starts = nonempty_subsets(sorted(t5.color_set("abd")))
        report = forcing_reachability(t5, starts, "equals_abcd", ORIENTED_MENU)
        for entry in report.entries:
            current = entry.start
            for gadget, produced in entry.witness:
                current = apply_gadget(t5, gadget, current)
                assert current == produced
            assert current == frozenset(range(4))

    def test_goal_already_met(self, t5):
        report = forcing_reachability(t5, [frozenset(range(4))], "equals_abcd", ORIENTED_MENU)
        (entry,) = report.entries
        assert entry.reachable
        assert entry.witness == []

    def test_t6_reaches_good_sets(self, t6):
        starts = nonempty_subsets(sorted(t6.color_set("abcde")))
        report = forcing_reachability(t6, starts, "good_set", TWO_EDGE_COLORED_MENU, "t6")
        assert report.passed
        assert len(report.entries) == 31

    def test_unreachable_goal(self, t5):
        # every vertex of T5 has an in-neighbor, so out maps the full set to itself
        full = frozenset(t5.vertices)
        report = forcing_reachability(t5, [full], "equals_abcd", (ForcingGadget("out"),))
        assert not report.passed
        assert report.failures()[0].start == full

    def test_frame(self, t5):
        report = forcing_reachability(t5, [frozenset({0})], "equals_full", ORIENTED_MENU)
        frame = report.to_frame(t5)
        assert list(frame.columns) == ["start", "reachable", "witness"]
        assert frame["start"].iloc[0] == "{a}"

    def test_unknown_goal(self, t5):
        with pytest.raises(GadgetError):
            forcing_reachability(t5, [frozenset({0})], "everything", ORIENTED_MENU)
