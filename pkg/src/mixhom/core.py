"""MG1 serialization, validation and incremental construction of mixed graphs."""

import logging
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple, Union

from .constants import (
    MG1_ARC,
    MG1_COMMENT,
    MG1_EDGE,
    MG1_FORMAT_TAG,
    MG1_HEADER,
    MG1_LABEL,
)
from .models import ArcStep, EdgeStep, LinkPattern, MixedGraph, Step, Violation

logger = logging.getLogger(__name__)


class GraphFormatError(ValueError):
    """Exception raised when an MG1 document cannot be parsed."""

    def __init__(self, message: str, line_number: Optional[int] = None):
        self.line_number = line_number
        prefix = f"line {line_number}: " if line_number is not None else ""
        super().__init__(prefix + message)


class GraphValidationError(ValueError):
    """Exception raised when a parsed graph breaks a structural invariant."""

    def __init__(self, violations: List[Violation]):
        self.violations = violations
        super().__init__("; ".join(v.message for v in violations))


def mask_of(vertices: Iterable[int]) -> int:
    """Bitmask with one bit per vertex."""
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def members(mask: int) -> List[int]:
    """Vertices of a bitmask in ascending order."""
    result = []
    while mask:
        low = mask & -mask
        result.append(low.bit_length() - 1)
        mask ^= low
    return result


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def validate_graph(g: MixedGraph) -> List[Violation]:
    """List every broken invariant of a graph.

    Violations are returned in a deterministic order: range problems first,
    then loops, then pairs carrying more than one link.
    """
    violations: List[Violation] = []
    n_vertices = g.num_vertices

    def in_range(*vertices: int) -> bool:
        return all(0 <= v < n_vertices for v in vertices)

    for arc in sorted(g.arcs):
        tail, head, color = arc
        if not in_range(tail, head):
            violations.append(Violation("index_range", arc, f"arc {arc} uses a missing vertex"))
        if not 0 <= color < g.m:
            violations.append(Violation("color_range", arc, f"arc {arc} has color outside 0..{g.m - 1}"))
    for edge in sorted(g.edges):
        u, v, color = edge
        if not in_range(u, v):
            violations.append(Violation("index_range", edge, f"edge {edge} uses a missing vertex"))
        if not 0 <= color < g.n:
            violations.append(Violation("color_range", edge, f"edge {edge} has color outside 0..{g.n - 1}"))
    for index in sorted(g.labels):
        if not in_range(index):
            violations.append(
                Violation("index_range", (index,), f"label for missing vertex {index}")
            )

    for arc in sorted(g.arcs):
        if arc[0] == arc[1]:
            violations.append(Violation("loop", arc, f"arc {arc} is a loop"))
    for edge in sorted(g.edges):
        if edge[0] == edge[1]:
            violations.append(Violation("loop", edge, f"edge {edge} is a loop"))

    owners: Dict[Tuple[int, int], List[Tuple[str, Tuple]]] = {}
    for arc in sorted(g.arcs):
        owners.setdefault((min(arc[:2]), max(arc[:2])), []).append(("arc", arc))
    for edge in sorted(g.edges):
        owners.setdefault((edge[0], edge[1]), []).append(("edge", edge))
    for pair in sorted(owners):
        links = owners[pair]
        for kind, element in links[1:]:
            violations.append(
                Violation(
                    "duplicate_pair",
                    element,
                    f"{kind} {element} joins {pair} which already carries {links[0][0]} {links[0][1]}",
                )
            )
    return violations


def parse_graph(text: str) -> MixedGraph:
    """Parse an MG1 document.

    Args:
        text: Document text

    Returns:
        The described graph

    Raises:
        GraphFormatError: If a line is malformed or a record repeats a vertex pair
        GraphValidationError: If the graph breaks an invariant
    """
    header: Optional[Tuple[int, int, int]] = None
    labels: Dict[int, str] = {}
    arcs: Set[Tuple[int, int, int]] = set()
    edges: Set[Tuple[int, int, int]] = set()
    pairs: Dict[Tuple[int, int], int] = {}

    for line_number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.split(maxsplit=1)[0] == MG1_COMMENT:
            continue
        fields = line.split()
        tag = fields[0]

        if header is None:
            if tag != MG1_HEADER or len(fields) != 5 or fields[1] != MG1_FORMAT_TAG:
                raise GraphFormatError(
                    f"expected header 'p mg <vertices> <m> <n>', got {line!r}", line_number
                )
            header = _parse_ints(fields[2:], line_number)
            if min(header) < 0:
                raise GraphFormatError("header counts must be non-negative", line_number)
            continue

        if tag == MG1_LABEL:
            parts = line.split(maxsplit=2)
            if len(parts) != 3:
                raise GraphFormatError("label record needs an index and a name", line_number)
            (index,) = _parse_ints(parts[1:2], line_number)
            if index in labels:
                raise GraphFormatError(f"vertex {index} labelled twice", line_number)
            labels[index] = parts[2]
        elif tag in (MG1_ARC, MG1_EDGE):
            if len(fields) != 4:
                raise GraphFormatError(f"{tag!r} record needs three integers", line_number)
            u, v, color = _parse_ints(fields[1:], line_number)
            pair = (min(u, v), max(u, v))
            if pair in pairs and u != v:
                raise GraphFormatError(
                    f"duplicate pair {pair}, already linked on line {pairs[pair]}", line_number
                )
            pairs[pair] = line_number
            if tag == MG1_ARC:
                arcs.add((u, v, color))
            else:
                edges.add((pair[0], pair[1], color))
        elif tag == MG1_HEADER:
            raise GraphFormatError("second header record", line_number)
        else:
            raise GraphFormatError(f"unknown record type {tag!r}", line_number)

    if header is None:
        raise GraphFormatError("missing header record")

    num_vertices, m, n = header
    graph = MixedGraph(num_vertices, m, n, frozenset(arcs), frozenset(edges), labels)
    violations = validate_graph(graph)
    if violations:
        raise GraphValidationError(violations)
    logger.debug("Parsed graph with %d vertices and %d links", num_vertices, graph.num_links)
    return graph


def _parse_ints(fields: Sequence[str], line_number: int) -> Tuple[int, ...]:
    try:
        return tuple(int(f) for f in fields)
    except ValueError:
        raise GraphFormatError(f"expected integers, got {' '.join(fields)!r}", line_number)


def serialize_graph(g: MixedGraph) -> str:
    """Canonical MG1 text of a graph.

    Labels are written by ascending index, arcs sorted by (tail, head, color),
    edges by (u, v, color). The document ends with a newline.
    """
    lines = [f"{MG1_HEADER} {MG1_FORMAT_TAG} {g.num_vertices} {g.m} {g.n}"]
    lines.extend(f"{MG1_LABEL} {index} {g.labels[index]}" for index in sorted(g.labels))
    lines.extend(f"{MG1_ARC} {t} {h} {c}" for t, h, c in sorted(g.arcs))
    lines.extend(f"{MG1_EDGE} {u} {v} {c}" for u, v, c in sorted(g.edges))
    return "\n".join(lines) + "\n"


def read_graph(path: Union[str, Path]) -> MixedGraph:
    """Parse an MG1 file."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except UnicodeDecodeError as e:
        raise GraphFormatError(f"{path} is not UTF-8 text: {e.reason}") from e
    return parse_graph(text)


def write_graph(g: MixedGraph, path: Union[str, Path]) -> Path:
    """Write the canonical MG1 text of a graph to a file."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(serialize_graph(g), encoding="utf-8")
    return path


class GraphBuilder:
    """Incremental construction of a mixed graph.

    The builder does not reject duplicate pairs; ``build`` hands the result
    to ``validate_graph`` when ``strict`` is set.
    """

    def __init__(self, m: int = 0, n: int = 0):
        self.m = m
        self.n = n
        self.num_vertices = 0
        self._arcs: Set[Tuple[int, int, int]] = set()
        self._edges: Set[Tuple[int, int, int]] = set()
        self._labels: Dict[int, str] = {}

    def add_vertex(self, label: Optional[str] = None) -> int:
        v = self.num_vertices
        self.num_vertices += 1
        if label is not None:
            self._labels[v] = label
        return v

    def add_vertices(self, count: int, labels: Optional[Sequence[str]] = None) -> List[int]:
        return [self.add_vertex(labels[i] if labels else None) for i in range(count)]

    def add_arc(self, tail: int, head: int, color: int = 0) -> None:
        self._arcs.add((tail, head, color))

    def add_edge(self, u: int, v: int, color: int) -> None:
        self._edges.add((min(u, v), max(u, v), color))

    def add_step(self, u: int, v: int, step: Step) -> None:
        """Add the link that lets a walk go from u to v by ``step``."""
        if isinstance(step, ArcStep):
            if step.forward:
                self.add_arc(u, v, step.color)
            else:
                self.add_arc(v, u, step.color)
        else:
            self.add_edge(u, v, step.color)

    def add_path(
        self,
        start: int,
        end: Optional[int],
        pattern: Union[LinkPattern, Sequence[Step]],
        label_prefix: Optional[str] = None,
    ) -> List[int]:
        """Add a path shaped by ``pattern`` from ``start``.

        Args:
            start: First vertex of the path
            end: Existing last vertex, or None to create a fresh one
            pattern: Steps from start towards end
            label_prefix: If given, internal vertices get labels prefix1, prefix2, ...

        Returns:
            All path vertices, start and end included
        """
        steps = list(pattern)
        path = [start]
        for i, step in enumerate(steps):
            last = i == len(steps) - 1
            if last and end is not None:
                nxt = end
            else:
                nxt = self.add_vertex(f"{label_prefix}{i + 1}" if label_prefix else None)
            self.add_step(path[-1], nxt, step)
            path.append(nxt)
        return path

    def add_graph(
        self,
        g: MixedGraph,
        identify: Optional[Dict[int, int]] = None,
        label_prefix: Optional[str] = None,
    ) -> List[int]:
        """Add a copy of ``g``, merging the vertices listed in ``identify``.

        Args:
            g: Graph to copy
            identify: Map from vertices of g to existing builder vertices
            label_prefix: Prefix for the labels of copied vertices

        Returns:
            Builder index of every vertex of g
        """
        identify = identify or {}
        mapping = []
        for v in g.vertices:
            if v in identify:
                mapping.append(identify[v])
            else:
                label = None
                if label_prefix is not None:
                    label = f"{label_prefix}{g.vertex_name(v)}"
                mapping.append(self.add_vertex(label))
        for t, h, c in g.arcs:
            self.add_arc(mapping[t], mapping[h], c)
        for u, v, c in g.edges:
            self.add_edge(mapping[u], mapping[v], c)
        return mapping

    def build(self, strict: bool = True) -> MixedGraph:
        graph = MixedGraph(
            self.num_vertices,
            self.m,
            self.n,
            frozenset(self._arcs),
            frozenset(self._edges),
            dict(self._labels),
        )
        if strict:
            violations = validate_graph(graph)
            if violations:
                raise GraphValidationError(violations)
        return graph
