"""Builtin target graphs, their fact sheets, and small-graph enumeration up to isomorphism."""

import itertools
import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

import pandas as pd

from .constants import BLUE, BUILTIN_TARGETS, MAX_RECONSTRUCT_ORDER, RED, TARGET_ALPHABET
from .core import GraphBuilder, serialize_graph
from .metrics import alternating_saturation, edge_class_spanning, is_bipartite
from .models import ArcStep, EdgeStep, LinkPattern, MixedGraph, Step
from .pathlab import path_profile
from .solver import exists_walk

logger = logging.getLogger(__name__)

FORWARD = ArcStep(0, True)
BLUE_STEP = EdgeStep(BLUE)
RED_STEP = EdgeStep(RED)


class UnknownTargetError(KeyError):
    """Exception raised when a builtin target name is not recognized."""
    pass


# Pair states
#
# A labelled graph on k vertices is a tuple with one state per pair (i, j),
# i < j, in lexicographic order: 0 for no link, 1 + 2c for the arc i -> j of
# color c, 2 + 2c for the arc j -> i, 1 + 2m + c for an edge of color c.


def pair_list(order: int) -> List[Tuple[int, int]]:
    return list(itertools.combinations(range(order), 2))


def state_count(m: int, n: int) -> int:
    return 1 + 2 * m + n


def link_state(i: int, j: int, step: Step, m: int) -> int:
    """State of pair {i, j} that lets a walk go from i to j by ``step``."""
    if isinstance(step, EdgeStep):
        return 1 + 2 * m + step.color
    tail_first = (i < j) == step.forward
    return 1 + 2 * step.color + (0 if tail_first else 1)


def graph_from_states(
    order: int, m: int, n: int, states: Sequence[int], labels: Optional[Dict[int, str]] = None
) -> MixedGraph:
    arcs = set()
    edges = set()
    for (i, j), state in zip(pair_list(order), states):
        if state == 0:
            continue
        if state <= 2 * m:
            color, backward = divmod(state - 1, 2)
            arcs.add((j, i, color) if backward else (i, j, color))
        else:
            edges.add((i, j, state - 1 - 2 * m))
    return MixedGraph(order, m, n, frozenset(arcs), frozenset(edges), labels or {})


def graph_states(g: MixedGraph) -> Tuple[int, ...]:
    index = {pair: k for k, pair in enumerate(pair_list(g.num_vertices))}
    states = [0] * len(index)
    for tail, head, color in g.arcs:
        states[index[(min(tail, head), max(tail, head))]] = 1 + 2 * color + (0 if tail < head else 1)
    for u, v, color in g.edges:
        states[index[(u, v)]] = 1 + 2 * g.m + color
    return tuple(states)


class _PermutationTable:
    """For every vertex permutation, where each pair goes and whether its arcs flip."""

    _cache: Dict[int, "_PermutationTable"] = {}

    def __init__(self, order: int):
        pairs = pair_list(order)
        index = {pair: k for k, pair in enumerate(pairs)}
        self.moves: List[List[Tuple[int, bool]]] = []
        for perm in itertools.permutations(range(order)):
            row = []
            for i, j in pairs:
                a, b = perm[i], perm[j]
                row.append((index[(min(a, b), max(a, b))], a > b))
            self.moves.append(row)

    @classmethod
    def of(cls, order: int) -> "_PermutationTable":
        if order not in cls._cache:
            cls._cache[order] = cls(order)
        return cls._cache[order]


def _flip(state: int, m: int) -> int:
    if 0 < state <= 2 * m:
        return state + 1 if state % 2 == 1 else state - 1
    return state


def _encode(states: Sequence[int], base: int) -> int:
    code = 0
    for state in reversed(states):
        code = code * base + state
    return code


def _orbit(states: Sequence[int], order: int, m: int, n: int) -> Iterator[int]:
    base = state_count(m, n)
    for row in _PermutationTable.of(order).moves:
        moved = [0] * len(states)
        for state, (target, flip) in zip(states, row):
            moved[target] = _flip(state, m) if flip else state
        yield _encode(moved, base)


def canonical_code(g: MixedGraph) -> int:
    """Isomorphism invariant: the smallest state code over all relabelings."""
    return min(_orbit(graph_states(g), g.num_vertices, g.m, g.n))


def isomorphic(g: MixedGraph, h: MixedGraph) -> bool:
    """Brute-force isomorphism test for small graphs."""
    if (g.num_vertices, g.m, g.n) != (h.num_vertices, h.m, h.n):
        return False
    if g.num_links != h.num_links:
        return False
    return canonical_code(g) == canonical_code(h)


def iter_labelled_graphs(
    order: int,
    m: int,
    n: int,
    allowed: Optional[Dict[Tuple[int, int], Iterable[int]]] = None,
    complete: bool = False,
    max_links: Optional[int] = None,
    labels: Optional[Dict[int, str]] = None,
) -> Iterator[MixedGraph]:
    """Every labelled (m, n)-graph on ``order`` vertices.

    Args:
        order: Number of vertices
        m: Arc colors
        n: Edge colors
        allowed: Optional per-pair restriction of the pair states
        complete: Only graphs with a link on every pair
        max_links: Only graphs with at most this many links
        labels: Labels given to every produced graph
    """
    pairs = pair_list(order)
    first = 1 if complete else 0
    choices = []
    for pair in pairs:
        states = range(first, state_count(m, n))
        if allowed is not None and pair in allowed:
            states = sorted(set(states) & set(allowed[pair]))
        choices.append(list(states))
    for states in itertools.product(*choices):
        if max_links is not None and sum(1 for s in states if s) > max_links:
            continue
        yield graph_from_states(order, m, n, states, labels)


def enumerate_mixed_graphs(
    order: int,
    m: int,
    n: int,
    complete: bool = False,
    max_links: Optional[int] = None,
    up_to_isomorphism: bool = True,
) -> List[MixedGraph]:
    """Labelled graphs of a signature, optionally one per isomorphism class.

    Classes are found by orbit marking: a code not yet marked starts a new
    class and every relabeling of it is marked.
    """
    graphs = iter_labelled_graphs(order, m, n, complete=complete, max_links=max_links)
    if not up_to_isomorphism:
        return list(graphs)
    seen = set()
    representatives = []
    base = state_count(m, n)
    for g in graphs:
        states = graph_states(g)
        if _encode(states, base) in seen:
            continue
        representatives.append(g)
        seen.update(_orbit(states, order, m, n))
    logger.debug(
        "%d isomorphism classes of (%d,%d)-graphs on %d vertices", len(representatives), m, n, order
    )
    return representatives


def enumerate_tournaments(order: int) -> List[MixedGraph]:
    """Tournaments on ``order`` vertices, one per isomorphism class."""
    return enumerate_mixed_graphs(order, 1, 0, complete=True)


def enumerate_complete_2ec(order: int) -> List[MixedGraph]:
    """Complete 2-edge-colored graphs on ``order`` vertices, one per isomorphism class."""
    return enumerate_mixed_graphs(order, 0, 2, complete=True)


def isomorphism_classes(graphs: Iterable[MixedGraph]) -> List[MixedGraph]:
    """First graph of every isomorphism class, in input order."""
    seen = set()
    result = []
    for g in graphs:
        key = (g.num_vertices, g.m, g.n, canonical_code(g))
        if key not in seen:
            seen.add(key)
            result.append(g)
    return result


# Builtin targets

_T5_ARCS = ["ab", "ac", "bc", "bd", "cd", "da", "ea", "be", "de"]
_T6_BLUE = ["ab", "ac", "af", "bd", "de", "ef"]
_T6_RED = ["ad", "ae", "bc", "be", "bf", "cd"]


def _letters(order: int) -> Dict[int, str]:
    return {i: TARGET_ALPHABET[i] for i in range(order)}


def _t5() -> MixedGraph:
    builder = GraphBuilder(1, 0)
    builder.add_vertices(5, TARGET_ALPHABET[:5])
    for tail, head in _T5_ARCS:
        builder.add_arc(TARGET_ALPHABET.index(tail), TARGET_ALPHABET.index(head))
    return builder.build()


def _t6() -> MixedGraph:
    builder = GraphBuilder(0, 2)
    builder.add_vertices(6, TARGET_ALPHABET[:6])
    for color, pairs in ((BLUE, _T6_BLUE), (RED, _T6_RED)):
        for u, v in pairs:
            builder.add_edge(TARGET_ALPHABET.index(u), TARGET_ALPHABET.index(v), color)
    return builder.build()


def builtin_target(name: str) -> MixedGraph:
    """A builtin target: t5, t6, or one of the two 4-vertex cliques they contain.

    Raises:
        UnknownTargetError: If the name is not a builtin target
    """
    if name == "t5":
        return _t5()
    if name == "t6":
        return _t6()
    if name == "t4_oriented":
        return _t5().induced(range(4))
    if name == "t4_2ec":
        return _t6().induced(range(4))
    raise UnknownTargetError(f"Unknown target {name!r}, expected one of {', '.join(BUILTIN_TARGETS)}")


# Facts


def _index(name: str) -> int:
    return TARGET_ALPHABET.index(name)


def _pair(i: int, j: int) -> Tuple[int, int]:
    return (min(i, j), max(i, j))


@dataclass(frozen=True)
class Fact:
    """A checkable statement about a labelled target."""

    kind = "fact"

    def holds(self, g: MixedGraph) -> bool:
        raise NotImplementedError

    def pins(self, m: int, n: int) -> Dict[Tuple[int, int], FrozenSet[int]]:
        """Pair states this fact leaves possible, for the pairs it decides."""
        return {}

    def describe(self) -> str:
        raise NotImplementedError


@dataclass(frozen=True)
class NeighborhoodFact(Fact):
    """The vertices reached from ``vertex`` by ``step`` are exactly ``expected``."""
    vertex: str
    step: Step
    expected: str

    kind = "neighborhood-equality"

    def holds(self, g):
        v = g.vertex_index(self.vertex)
        reached = {x for x in g.vertices if g.has_link(v, x, self.step)}
        return reached == {g.vertex_index(x) for x in self.expected}

    def pins(self, m, n):
        v = _index(self.vertex)
        every = frozenset(range(state_count(m, n)))
        result = {}
        for x in range(len(TARGET_ALPHABET)):
            if x == v:
                continue
            state = link_state(v, x, self.step, m)
            inside = TARGET_ALPHABET[x] in self.expected
            result[_pair(v, x)] = frozenset({state}) if inside else every - {state}
        return result

    def describe(self):
        return f"{self.step.token}-neighborhood({self.vertex}) = {{{','.join(self.expected)}}}"


@dataclass(frozen=True)
class LinkAbsenceFact(Fact):
    """No ``step`` leads from ``first`` to ``second``."""
    first: str
    second: str
    step: Step

    kind = "arc-absence"

    def holds(self, g):
        return not g.has_link(g.vertex_index(self.first), g.vertex_index(self.second), self.step)

    def pins(self, m, n):
        i, j = _index(self.first), _index(self.second)
        every = frozenset(range(state_count(m, n)))
        return {_pair(i, j): every - {link_state(i, j, self.step, m)}}

    def describe(self):
        return f"no {self.step.token} link from {self.first} to {self.second}"


@dataclass(frozen=True)
class InducedSubgraphFact(Fact):
    """The subgraph induced by ``vertices`` is isomorphic to ``expected``, or complete."""
    vertices: str
    expected: Optional[MixedGraph] = None
    complete: bool = False

    kind = "induced-subgraph-iso"

    def holds(self, g):
        sub = g.induced(g.vertex_index(x) for x in self.vertices)
        if self.complete and sub.num_links != len(pair_list(sub.num_vertices)):
            return False
        if self.expected is not None and not isomorphic(sub, self.expected):
            return False
        return True

    def pins(self, m, n):
        if not self.complete:
            return {}
        nonempty = frozenset(range(1, state_count(m, n)))
        return {
            _pair(_index(x), _index(y)): nonempty
            for x, y in itertools.combinations(self.vertices, 2)
        }

    def describe(self):
        if self.complete:
            return f"{{{','.join(self.vertices)}}} induces a complete graph"
        return f"{{{','.join(self.vertices)}}} induces the expected {self.expected.num_vertices}-vertex graph"


@dataclass(frozen=True)
class WalkAbsenceFact(Fact):
    """No walk shaped by ``pattern`` leads from ``start`` to ``end``."""
    pattern: LinkPattern
    start: str
    end: str

    kind = "walk-absence"

    def holds(self, g):
        return not exists_walk(g, self.pattern, g.vertex_index(self.start), g.vertex_index(self.end))

    def describe(self):
        return f"no walk ({self.pattern}) from {self.start} to {self.end}"


@dataclass(frozen=True)
class PathShapeAbsenceFact(Fact):
    """No walk shaped by ``pattern`` joins two (not necessarily distinct) vertices of ``ends``."""
    pattern: LinkPattern
    ends: str

    kind = "path-shape-absence"

    def holds(self, g):
        indices = [g.vertex_index(x) for x in self.ends]
        return not any(exists_walk(g, self.pattern, x, z) for x in indices for z in indices)

    def describe(self):
        return f"no ({self.pattern}) path between vertices of {{{','.join(self.ends)}}}"


@dataclass(frozen=True)
class CommonNeighborFact(Fact):
    """Common ``step``-neighbors of two vertices contain ``required`` (equal it when ``exact``)."""
    first: str
    second: str
    step: Step
    required: str = ""
    exact: bool = False

    kind = "neighborhood-equality"

    def holds(self, g):
        i, j = g.vertex_index(self.first), g.vertex_index(self.second)
        common = {x for x in g.vertices if g.has_link(i, x, self.step) and g.has_link(j, x, self.step)}
        wanted = {g.vertex_index(x) for x in self.required}
        return common == wanted if self.exact else wanted <= common

    def pins(self, m, n):
        result = {}
        for x in self.required:
            for end in (self.first, self.second):
                result[_pair(_index(end), _index(x))] = frozenset(
                    {link_state(_index(end), _index(x), self.step, m)}
                )
        return result

    def describe(self):
        relation = "are exactly" if self.exact else "include"
        wanted = ",".join(self.required) or "nothing"
        return f"common {self.step.token}-neighbors of {self.first} and {self.second} {relation} {{{wanted}}}"


def _cycles(g: MixedGraph, length: int) -> Iterator[Tuple[int, ...]]:
    """Cycles of the underlying graph, each listed once."""
    for sequence in itertools.permutations(g.vertices, length):
        if sequence[0] != min(sequence) or sequence[1] > sequence[-1]:
            continue
        if all(
            sequence[(i + 1) % length] in g.adjacency[sequence[i]] for i in range(length)
        ):
            yield sequence


def _cycle_key(sequence: Iterable[int]) -> FrozenSet[FrozenSet[int]]:
    sequence = list(sequence)
    return frozenset(
        frozenset((sequence[i], sequence[(i + 1) % len(sequence)])) for i in range(len(sequence))
    )


@dataclass(frozen=True)
class CycleEnumerationFact(Fact):
    """Within ``vertices``, the cycles of ``length`` with exactly ``count`` edges of ``color`` are ``expected``."""
    vertices: str
    length: int
    color: int
    count: int
    expected: Tuple[str, ...]

    kind = "cycle-enumeration"

    def holds(self, g):
        inside = [g.vertex_index(x) for x in self.vertices]
        sub = g.induced(inside)
        colors = {(u, v): c for u, v, c in sub.edges}
        found = set()
        for cycle in _cycles(sub, self.length):
            pairs = [_pair(cycle[i], cycle[(i + 1) % self.length]) for i in range(self.length)]
            if all(p in colors for p in pairs) and sum(colors[p] == self.color for p in pairs) == self.count:
                found.add(_cycle_key(sorted(inside)[x] for x in cycle))
        wanted = {_cycle_key(g.vertex_index(x) for x in cycle) for cycle in self.expected}
        return found == wanted

    def describe(self):
        return (
            f"{self.length}-cycles in {{{','.join(self.vertices)}}} with exactly {self.count} "
            f"edge(s) of color {self.color} are {', '.join(self.expected)}"
        )


@dataclass(frozen=True)
class CycleShapeFact(Fact):
    """The closed walk through ``sequence`` follows ``pattern``."""
    sequence: str
    pattern: LinkPattern

    kind = "cycle-enumeration"

    def _hops(self):
        length = len(self.sequence)
        return [
            (self.sequence[i], self.sequence[(i + 1) % length], step)
            for i, step in enumerate(self.pattern)
        ]

    def holds(self, g):
        return all(
            g.has_link(g.vertex_index(x), g.vertex_index(y), step) for x, y, step in self._hops()
        )

    def pins(self, m, n):
        return {
            _pair(_index(x), _index(y)): frozenset({link_state(_index(x), _index(y), step, m)})
            for x, y, step in self._hops()
        }

    def describe(self):
        return f"{self.sequence} is a closed walk shaped ({self.pattern})"


@dataclass(frozen=True)
class SpanningConnectivityFact(Fact):
    """An edge color class is connected and spanning, or an arc class has
    both-parity alternating walks between all ordered pairs."""
    step: Step

    kind = "spanning-connectivity"

    def holds(self, g):
        if isinstance(self.step, EdgeStep):
            return edge_class_spanning(g, self.step.color)
        return alternating_saturation(g, self.step.color) is not None

    def describe(self):
        if isinstance(self.step, EdgeStep):
            return f"{self.step.token} edges form a connected spanning subgraph"
        return f"arcs of color {self.step.color} give alternating walks of both parities between all pairs"


@dataclass(frozen=True)
class ColorClassPathFact(Fact):
    """The edges of one color form a Hamiltonian path."""
    color: int

    kind = "spanning-connectivity"

    def holds(self, g):
        chosen = [(u, v) for u, v, c in g.edges if c == self.color]
        degree = [0] * g.num_vertices
        for u, v in chosen:
            degree[u] += 1
            degree[v] += 1
        return (
            len(chosen) == g.num_vertices - 1
            and max(degree, default=0) <= 2
            and edge_class_spanning(g, self.color)
        )

    def describe(self):
        return f"edges of color {self.color} form a path through every vertex"


@dataclass(frozen=True)
class OddCycleForcingFact(Fact):
    """Edges of ``color`` contain an odd cycle, and none once ``vertex`` is deleted."""
    color: int
    vertex: str

    kind = "odd-cycle-forcing"

    def holds(self, g):
        class_graph = MixedGraph(
            g.num_vertices, 0, g.n, frozenset(e for e in g.edges if e[2] == self.color)
        )
        removed = g.vertex_index(self.vertex)
        rest = class_graph.induced(v for v in g.vertices if v != removed)
        return not is_bipartite(class_graph) and is_bipartite(rest)

    def describe(self):
        return f"color {self.color} has an odd cycle, and none without {self.vertex}"


@dataclass(frozen=True)
class ProfileFact(Fact):
    """Paths with ``length`` internal vertices have the given forbidden-set profile."""
    length: int
    min_allowed: int
    forbidden: Tuple[str, ...]

    kind = "path-profile"

    def holds(self, g):
        row = path_profile(g, self.length)
        found = {frozenset(s) for s in row.maximal_forbidden_sets}
        wanted = {frozenset(g.vertex_index(x) for x in s) for s in self.forbidden}
        return row.min_allowed == self.min_allowed and found == wanted

    def describe(self):
        return (
            f"l={self.length}: at least {self.min_allowed} allowed colors, "
            f"largest forbidden sets {', '.join('{' + ','.join(s) + '}' for s in self.forbidden)}"
        )


@dataclass
class TargetFactSheet:
    """Named list of facts about one target."""
    target_name: str
    facts: List[Fact] = field(default_factory=list)


@dataclass(frozen=True)
class FactResult:
    kind: str
    description: str
    passed: bool


@dataclass
class FactReport:
    """Outcome of evaluating a fact sheet on a graph."""
    target_name: str
    results: List[FactResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def failures(self) -> List[FactResult]:
        return [r for r in self.results if not r.passed]

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            [{"kind": r.kind, "fact": r.description, "passed": r.passed} for r in self.results]
        )


def _circuit3() -> MixedGraph:
    return MixedGraph(3, 1, 0, frozenset({(0, 1, 0), (1, 2, 0), (2, 0, 0)}))


def fact_sheet(name: str) -> TargetFactSheet:
    """The fact sheet of a builtin target.

    Raises:
        UnknownTargetError: If the name is not a builtin target
    """
    if name == "t5":
        facts: List[Fact] = [
            NeighborhoodFact("a", FORWARD, "bc"),
            NeighborhoodFact("c", FORWARD, "d"),
            NeighborhoodFact("e", FORWARD, "a"),
            LinkAbsenceFact("a", "d", FORWARD),
            InducedSubgraphFact("abd", expected=_circuit3()),
            InducedSubgraphFact("abcd", complete=True),
            PathShapeAbsenceFact(LinkPattern.from_tokens("F F"), "de"),
            SpanningConnectivityFact(FORWARD),
            ProfileFact(2, 2, ("bcd", "cde")),
        ]
    elif name == "t6":
        facts = [
            NeighborhoodFact("f", RED_STEP, "b"),
            WalkAbsenceFact(LinkPattern.from_tokens("B B B B B"), "c", "c"),
            WalkAbsenceFact(LinkPattern.from_tokens("B B R B"), "c", "c"),
            CommonNeighborFact("c", "e", BLUE_STEP, "", exact=True),
            CommonNeighborFact("a", "d", BLUE_STEP, "b"),
            CycleEnumerationFact("abcde", 4, RED, 1, ("aedb", "cdba")),
            CycleShapeFact("acde", LinkPattern.from_tokens("B R B R")),
            OddCycleForcingFact(RED, "c"),
            SpanningConnectivityFact(BLUE_STEP),
            SpanningConnectivityFact(RED_STEP),
            ProfileFact(0, 1, ("acdef", "bcdef")),
            ProfileFact(1, 2, ("abcf", "bcef")),
            ProfileFact(2, 3, ("bcf", "cef", "def")),
            ProfileFact(3, 4, ("bc",)),
            ProfileFact(4, 5, ("c", "f")),
        ]
    elif name == "t4_oriented":
        facts = [
            InducedSubgraphFact("abcd", complete=True),
            InducedSubgraphFact("abd", expected=_circuit3()),
            LinkAbsenceFact("a", "d", FORWARD),
        ]
    elif name == "t4_2ec":
        facts = [
            InducedSubgraphFact("abcd", complete=True),
            ColorClassPathFact(BLUE),
            ColorClassPathFact(RED),
        ]
    else:
        raise UnknownTargetError(f"Unknown target {name!r}, expected one of {', '.join(BUILTIN_TARGETS)}")
    return TargetFactSheet(name, facts)


def evaluate_sheet(sheet: TargetFactSheet, g: MixedGraph) -> FactReport:
    """Evaluate every fact of a sheet on a labelled graph."""
    report = FactReport(sheet.target_name)
    for fact in sheet.facts:
        report.results.append(FactResult(fact.kind, fact.describe(), bool(fact.holds(g))))
    return report


def verify_target_facts(name: str, graph: Optional[MixedGraph] = None) -> FactReport:
    """Evaluate a builtin target's fact sheet, on the target itself or on ``graph``."""
    sheet = fact_sheet(name)
    report = evaluate_sheet(sheet, graph if graph is not None else builtin_target(name))
    logger.info(
        "Fact sheet %s: %d/%d facts hold", name, sum(r.passed for r in report.results), len(report.results)
    )
    return report


def reconstruct_candidates(
    sheet: TargetFactSheet, signature: Tuple[int, int, int]
) -> List[MixedGraph]:
    """Every graph of a small signature satisfying a fact sheet, one per isomorphism class.

    Labelled graphs on the vertices a, b, c, ... are enumerated with the
    pair states the facts pin down, kept when they have at most 3k-6 links
    (k >= 3) and satisfy every fact, then reduced to one representative per
    isomorphism class. Representatives are sorted by their MG1 text.

    Args:
        sheet: Facts to satisfy
        signature: (number of vertices, m, n)
    """
    order, m, n = signature
    if order > MAX_RECONSTRUCT_ORDER:
        raise ValueError(f"Reconstruction is limited to {MAX_RECONSTRUCT_ORDER} vertices")
    allowed: Dict[Tuple[int, int], FrozenSet[int]] = {}
    for fact in sheet.facts:
        for pair, states in fact.pins(m, n).items():
            if pair[1] >= order:
                continue
            allowed[pair] = allowed.get(pair, states) & states

    limit = 3 * order - 6 if order >= 3 else None
    labels = _letters(order)
    survivors = [
        g
        for g in iter_labelled_graphs(order, m, n, allowed=allowed, max_links=limit, labels=labels)
        if all(fact.holds(g) for fact in sheet.facts)
    ]
    classes = sorted(isomorphism_classes(survivors), key=serialize_graph)
    if len(classes) > 1:
        logger.warning(
            "Fact sheet %s is ambiguous: %d isomorphism classes satisfy it",
            sheet.target_name,
            len(classes),
        )
    return classes
