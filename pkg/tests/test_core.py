"""Tests for MG1 parsing, serialization and graph construction."""

from pathlib import Path

import pytest

from mixhom.core import (
    GraphBuilder,
    GraphFormatError,
    GraphValidationError,
    mask_of,
    members,
    parse_graph,
    popcount,
    read_graph,
    serialize_graph,
    validate_graph,
    write_graph,
)
from mixhom.models import ArcStep, EdgeStep, LinkPattern, MixedGraph
from mixhom.targets import builtin_target

DATA_DIR = Path(__file__).parent / "data"


class TestBitmasks:
    """Tests for the bitmask helpers."""

    def test_mask_round_trip(self):
        assert mask_of([0, 2, 5]) == 0b100101
        assert members(0b100101) == [0, 2, 5]

    def test_empty(self):
        assert mask_of([]) == 0
        assert members(0) == []
        assert popcount(0) == 0

    def test_popcount(self):
        assert popcount(0b1011) == 3


class TestParseGraph:
    """Tests for parse_graph."""

    def test_parse_minimal(self):
        g = parse_graph("p mg 3 1 0\na 0 1 0\na 1 2 0\n")
        assert g.num_vertices == 3
        assert g.signature == (1, 0)
        assert g.arcs == frozenset({(0, 1, 0), (1, 2, 0)})
        assert g.edges == frozenset()

    def test_comments_and_blank_lines(self):
        text = "c a comment\n\np mg 2 0 2\nc another\ne 1 0 1\n"
        g = parse_graph(text)
        assert g.edges == frozenset({(0, 1, 1)})

    def test_edges_are_normalized(self):
        g = parse_graph("p mg 2 0 1\ne 1 0 0\n")
        assert (0, 1, 0) in g.edges

    def test_labels_may_contain_spaces(self):
        g = parse_graph("p mg 2 0 1\nv 0 left end\nv 1 b\ne 0 1 0\n")
        assert g.vertex_name(0) == "left end"
        assert g.vertex_index("b") == 1

    def test_isolated_vertices(self):
        g = parse_graph("p mg 4 0 1\n")
        assert g.num_vertices == 4
        assert g.num_links == 0

    def test_missing_header(self):
        with pytest.raises(GraphFormatError):
            parse_graph("a 0 1 0\n")

    def test_empty_document(self):
        with pytest.raises(GraphFormatError, match="missing header"):
            parse_graph("c nothing here\n")

    def test_bad_header(self):
        with pytest.raises(GraphFormatError) as excinfo:
            parse_graph("p graph 3 1 0\n")
        assert excinfo.value.line_number == 1

    def test_unknown_record_reports_line(self):
        with pytest.raises(GraphFormatError) as excinfo:
            parse_graph("p mg 2 1 0\nx 0 1 0\n")
        assert excinfo.value.line_number == 2
        assert "line 2" in str(excinfo.value)

    def test_second_header(self):
        with pytest.raises(GraphFormatError):
            parse_graph("p mg 2 1 0\np mg 2 1 0\n")

    def test_non_integer_field(self):
        with pytest.raises(GraphFormatError):
            parse_graph("p mg 2 1 0\na 0 one 0\n")

    def test_duplicate_pair_rejected(self):
        with pytest.raises(GraphFormatError, match="duplicate pair"):
            parse_graph("p mg 2 1 0\na 0 1 0\na 1 0 0\n")

    def test_arc_and_edge_on_same_pair(self):
        with pytest.raises(GraphFormatError):
            parse_graph("p mg 2 1 1\na 0 1 0\ne 0 1 0\n")

    def test_label_twice(self):
        with pytest.raises(GraphFormatError):
            parse_graph("p mg 2 0 1\nv 0 a\nv 0 b\n")

    def test_loop_rejected(self):
        with pytest.raises(GraphValidationError) as excinfo:
            parse_graph("p mg 2 1 0\na 1 1 0\n")
        assert [v.kind for v in excinfo.value.violations] == ["loop"]

    def test_color_out_of_range(self):
        with pytest.raises(GraphValidationError) as excinfo:
            parse_graph("p mg 2 0 2\ne 0 1 2\n")
        assert excinfo.value.violations[0].kind == "color_range"

    def test_vertex_out_of_range(self):
        with pytest.raises(GraphValidationError) as excinfo:
            parse_graph("p mg 2 1 0\na 0 5 0\n")
        assert excinfo.value.violations[0].kind == "index_range"


class TestSerializeGraph:
    """Tests for the canonical MG1 form."""

    def test_builtin_t5_matches_golden_file(self):
        expected = (DATA_DIR / "t5.mg").read_text()
        assert serialize_graph(builtin_target("t5")) == expected

    def test_builtin_t6_matches_golden_file(self):
        expected = (DATA_DIR / "t6.mg").read_text()
        assert serialize_graph(builtin_target("t6")) == expected

    def test_round_trip_is_stable(self):
        text = "p mg 3 0 2\ne 2 1 1\ne 0 1 0\n"
        once = serialize_graph(parse_graph(text))
        assert serialize_graph(parse_graph(once)) == once
        assert once == "p mg 3 0 2\ne 0 1 0\ne 1 2 1\n"

    def test_read_and_write(self, tmp_path):
        g = read_graph(DATA_DIR / "t5.mg")
        path = write_graph(g, tmp_path / "nested" / "copy.mg")
        assert path.exists()
        assert read_graph(path) == g

    def test_read_binary_file(self, tmp_path):
        path = tmp_path / "binary.mg"
        path.write_bytes(b"\xff\xfe p mg 2 1 0\n")
        with pytest.raises(GraphFormatError, match="not UTF-8"):
            read_graph(path)


class TestValidateGraph:
    """Tests for validate_graph."""

    def test_valid_graph(self):
        assert validate_graph(builtin_target("t6")) == []

    def test_duplicate_pair_violation(self):
        g = MixedGraph(2, 1, 1, arcs={(0, 1, 0)}, edges={(0, 1, 0)})
        violations = validate_graph(g)
        assert [v.kind for v in violations] == ["duplicate_pair"]

    def test_ordering(self):
        g = MixedGraph(2, 1, 0, arcs={(0, 0, 0), (0, 7, 0)})
        kinds = [v.kind for v in validate_graph(g)]
        assert kinds == ["index_range", "loop"]


class TestGraphBuilder:
    """Tests for GraphBuilder."""

    def test_add_path_creates_internal_vertices(self):
        builder = GraphBuilder(1, 0)
        start = builder.add_vertex("s")
        end = builder.add_vertex("t")
        path = builder.add_path(start, end, LinkPattern.from_tokens("F K F"), label_prefix="x")
        g = builder.build()
        assert path[0] == start and path[-1] == end
        assert len(path) == 4
        assert g.num_vertices == 4
        assert g.arcs == frozenset({(0, 2, 0), (3, 2, 0), (3, 1, 0)})
        assert g.vertex_name(2) == "x1"

    def test_add_path_with_fresh_end(self):
        builder = GraphBuilder(0, 2)
        start = builder.add_vertex()
        path = builder.add_path(start, None, [EdgeStep(0), EdgeStep(1)])
        g = builder.build()
        assert g.num_vertices == 3
        assert g.edges == frozenset({(path[0], path[1], 0), (path[1], path[2], 1)})

    def test_add_step_backward_arc(self):
        builder = GraphBuilder(1, 0)
        u, v = builder.add_vertices(2)
        builder.add_step(u, v, ArcStep(0, False))
        assert builder.build().arcs == frozenset({(v, u, 0)})

    def test_add_graph_with_identification(self):
        t5 = builtin_target("t5")
        builder = GraphBuilder(1, 0)
        hub = builder.add_vertex("hub")
        mapping = builder.add_graph(t5, identify={0: hub}, label_prefix="copy.")
        g = builder.build()
        assert mapping[0] == hub
        assert g.num_vertices == 5
        assert g.num_links == t5.num_links
        assert g.vertex_name(mapping[1]) == "copy.b"

    def test_strict_build_rejects_duplicates(self):
        builder = GraphBuilder(1, 0)
        u, v = builder.add_vertices(2)
        builder.add_arc(u, v)
        builder.add_arc(v, u)
        with pytest.raises(GraphValidationError):
            builder.build()
        assert builder.build(strict=False).num_links == 2
