"""Forced sets: gadget graphs, set transitions, cores, good sets and reachability search."""

import itertools
import logging
import math
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import pandas as pd

from .constants import (
    BLUE,
    DEFAULT_X_GIRTH,
    DEFAULT_Y_GIRTH,
    DEFAULT_Z_GIRTH,
    MAX_CORE_ORDER,
    ORIENTED,
    RED,
    TWO_EDGE_COLORED,
)
from .constructions import alternating_cycle, circuit, smallest_congruent
from .core import GraphBuilder
from .models import ArcStep, ColorSet, EdgeStep, ForcingGadget, MixedGraph, Step
from .solver import find_homomorphism, forced_colors
from .targets import builtin_target, isomorphic

logger = logging.getLogger(__name__)


class GadgetError(ValueError):
    """Exception raised when a gadget cannot be applied to a set."""
    pass


class CoreSizeError(ValueError):
    """Exception raised when a graph is too large for the brute-force core search."""
    pass


GADGET_SIGNATURES = {
    "out": ORIENTED,
    "in": ORIENTED,
    "Z": ORIENTED,
    "blue": TWO_EDGE_COLORED,
    "red": TWO_EDGE_COLORED,
    "dashed_blue": TWO_EDGE_COLORED,
    "dashed_red": TWO_EDGE_COLORED,
    "X": TWO_EDGE_COLORED,
    "Y": TWO_EDGE_COLORED,
}

ORIENTED_MENU = (ForcingGadget("out"), ForcingGadget("in"), ForcingGadget("Z"))
TWO_EDGE_COLORED_MENU = (
    ForcingGadget("blue"),
    ForcingGadget("red"),
    ForcingGadget("dashed_blue"),
    ForcingGadget("dashed_red"),
    ForcingGadget("X"),
    ForcingGadget("Y"),
)

_NEIGHBOR_STEPS: Dict[str, Step] = {
    "out": ArcStep(0, True),
    "in": ArcStep(0, False),
    "blue": EdgeStep(BLUE),
    "red": EdgeStep(RED),
}
_DASHED_COLORS = {"dashed_blue": BLUE, "dashed_red": RED}


def neighborhood_image(target: MixedGraph, s: Iterable[int], step: Step) -> ColorSet:
    """Vertices reached from some vertex of ``s`` by ``step``."""
    s = set(s)
    return frozenset(x for x in target.vertices if any(target.has_link(y, x, step) for y in s))


def dashed_image(target: MixedGraph, s: Iterable[int], color: int) -> ColorSet:
    """Vertices of ``s`` incident to an edge of ``color`` inside the subgraph induced by ``s``."""
    s = set(s)
    return frozenset(
        x for u, v, c in target.edges if c == color and u in s and v in s for x in (u, v)
    )


@dataclass(frozen=True)
class GadgetGraph:
    """A gadget graph with the vertices that carry the forced set and the output vertex."""
    graph: MixedGraph
    attachments: Tuple[int, ...]
    output: int


def gadget_graph(gadget: ForcingGadget) -> GadgetGraph:
    """Build the graph of a gadget.

    The attachments are the vertices identified with the forcing vertex of a
    copy of the input graph; the forced set is read at ``output``.

    Raises:
        GadgetError: If the gadget name or girth parameter is invalid
    """
    name = gadget.name
    if name in _NEIGHBOR_STEPS:
        m, n = GADGET_SIGNATURES[name]
        builder = GraphBuilder(m, n)
        v, w = builder.add_vertices(2, ["v", "w"])
        builder.add_step(v, w, _NEIGHBOR_STEPS[name])
        return GadgetGraph(builder.build(), (v,), w)

    if name in _DASHED_COLORS:
        builder = GraphBuilder(0, 2)
        first, second = builder.add_vertices(2, ["v", "v'"])
        builder.add_edge(first, second, _DASHED_COLORS[name])
        return GadgetGraph(builder.build(), (first, second), first)

    if name == "Z":
        g = gadget.girth_param or DEFAULT_Z_GIRTH
        if g < 3:
            raise GadgetError(f"Z needs a girth parameter of at least 3, got {g}")
        graph = circuit(smallest_congruent(g, 6, 4))
        return GadgetGraph(graph, tuple(range(1, graph.num_vertices)), 1)

    if name == "X":
        g = gadget.girth_param or DEFAULT_X_GIRTH
        if g < 3:
            raise GadgetError(f"X needs a girth parameter of at least 3, got {g}")
        length = 2 * math.ceil(g / 2)
        builder = GraphBuilder(0, 2)
        builder.add_vertices(length, [f"v{i + 1}" for i in range(length)])
        for i in range(length - 1):
            builder.add_edge(i, i + 1, BLUE)
        builder.add_edge(0, length - 1, RED)
        return GadgetGraph(builder.build(), tuple(range(length)), 0)

    if name == "Y":
        g = gadget.girth_param or DEFAULT_Y_GIRTH
        if g < 1:
            raise GadgetError(f"Y needs a positive girth parameter, got {g}")
        length = 8 * g
        builder = GraphBuilder(0, 2)
        builder.add_graph(alternating_cycle(length), label_prefix="")
        apex = builder.add_vertex("x")
        builder.add_edge(apex, 0, BLUE)
        builder.add_edge(apex, 4 * g + 2, BLUE)
        return GadgetGraph(builder.build(), tuple(range(length)), 0)

    raise GadgetError(f"Unknown gadget {name!r}, expected one of {', '.join(GADGET_SIGNATURES)}")


def _check_gadget(target: MixedGraph, gadget: ForcingGadget, s: Iterable[int]) -> FrozenSet[int]:
    s = frozenset(s)
    if not s:
        raise GadgetError("Cannot apply a gadget to an empty set")
    if gadget.name not in GADGET_SIGNATURES:
        raise GadgetError(f"Unknown gadget {gadget.name!r}")
    if GADGET_SIGNATURES[gadget.name] != target.signature:
        raise GadgetError(
            f"Gadget {gadget.name} needs signature {GADGET_SIGNATURES[gadget.name]}, "
            f"target has {target.signature}"
        )
    if any(not 0 <= x < target.num_vertices for x in s):
        raise GadgetError(f"Set {sorted(s)} names a missing target vertex")
    return s


def gadget_formula(target: MixedGraph, gadget: ForcingGadget, s: Iterable[int]) -> Optional[ColorSet]:
    """Closed-form output of the out, in, blue, red and dashed gadgets, None for the others."""
    s = _check_gadget(target, gadget, s)
    if gadget.name in _NEIGHBOR_STEPS:
        return neighborhood_image(target, s, _NEIGHBOR_STEPS[gadget.name])
    if gadget.name in _DASHED_COLORS:
        return dashed_image(target, s, _DASHED_COLORS[gadget.name])
    return None


def apply_gadget(target: MixedGraph, gadget: ForcingGadget, s: Iterable[int]) -> ColorSet:
    """Set forced at the gadget's output when every attachment is forced to ``s``.

    The attached copies of the graph forcing ``s`` are modelled as unary
    constraints, and the output set is read off the solver.

    Raises:
        GadgetError: If ``s`` is empty or the gadget does not fit the target
    """
    s = _check_gadget(target, gadget, s)
    built = gadget_graph(gadget)
    constraints = {v: s for v in built.attachments}
    return forced_colors(built.graph, built.output, target, constraints)


def core_of(g: MixedGraph) -> MixedGraph:
    """Smallest induced subgraph that g maps onto.

    Subsets are tried by increasing size, in lexicographic order within a
    size, so the result is deterministic.

    Raises:
        CoreSizeError: If g has more than MAX_CORE_ORDER vertices
    """
    if g.num_vertices > MAX_CORE_ORDER:
        raise CoreSizeError(
            f"Core search is limited to {MAX_CORE_ORDER} vertices, graph has {g.num_vertices}"
        )
    for size in range(1 if g.num_vertices else 0, g.num_vertices + 1):
        for subset in itertools.combinations(g.vertices, size):
            candidate = g.induced(subset)
            if find_homomorphism(g, candidate) is not None:
                logger.debug("Core of %d-vertex graph has %d vertices", g.num_vertices, size)
                return candidate
    return g


def is_good_set(target: MixedGraph, s: Iterable[int]) -> bool:
    """Whether the core of the subgraph induced by ``s`` is the 2-edge-colored 4-clique
    whose blue and red edges each form a path."""
    s = frozenset(s)
    if not s:
        raise GadgetError("A good set must be non-empty")
    if len(s) < 4:
        return False
    return isomorphic(core_of(target.induced(s)), builtin_target("t4_2ec"))


def nonempty_subsets(vertices: Sequence[int]) -> List[ColorSet]:
    """Every non-empty subset, by increasing size then lexicographically."""
    return [
        frozenset(combo)
        for size in range(1, len(vertices) + 1)
        for combo in itertools.combinations(sorted(vertices), size)
    ]


def _goal(target: MixedGraph, name: str) -> Callable[[ColorSet], bool]:
    if name == "equals_abcd":
        abcd = frozenset(range(4))
        return lambda s: s == abcd
    if name == "good_set":
        cache: Dict[ColorSet, bool] = {}

        def good(s: ColorSet) -> bool:
            if s not in cache:
                cache[s] = is_good_set(target, s)
            return cache[s]

        return good
    if name == "equals_full":
        full = frozenset(target.vertices)
        return lambda s: s == full
    raise GadgetError(f"Unknown goal {name!r}, expected equals_abcd, good_set or equals_full")


@dataclass
class ReachabilityEntry:
    """Search outcome for one start set.

    Attributes:
        start: Start set
        reachable: Whether a goal set was reached
        witness: Gadgets applied in order, each with the set it produced
    """
    start: ColorSet
    reachable: bool
    witness: List[Tuple[ForcingGadget, ColorSet]] = field(default_factory=list)


@dataclass
class ReachabilityReport:
    target_name: str
    goal: str
    entries: List[ReachabilityEntry] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(entry.reachable for entry in self.entries)

    def failures(self) -> List[ReachabilityEntry]:
        return [entry for entry in self.entries if not entry.reachable]

    def to_frame(self, target: Optional[MixedGraph] = None) -> pd.DataFrame:
        def show(s: ColorSet) -> str:
            names = target.names(s) if target is not None else sorted(s)
            return "{" + ",".join(str(x) for x in names) + "}"

        return pd.DataFrame(
            [
                {
                    "start": show(entry.start),
                    "reachable": entry.reachable,
                    "witness": " ".join(f"{gadget}->{show(s)}" for gadget, s in entry.witness),
                }
                for entry in self.entries
            ]
        )


def forcing_reachability(
    target: MixedGraph,
    start_sets: Sequence[Iterable[int]],
    goal: str,
    gadget_menu: Sequence[ForcingGadget],
    target_name: str = "",
) -> ReachabilityReport:
    """Breadth-first closure of each start set under the gadget menu.

    A start set that already satisfies the goal is reachable with an empty
    witness. Empty sets produced by a gadget are dead ends. Gadget outputs are
    shared between start sets.
    """
    predicate = _goal(target, goal)
    transitions: Dict[Tuple[ForcingGadget, ColorSet], ColorSet] = {}
    report = ReachabilityReport(target_name, goal)

    for start in start_sets:
        start = frozenset(start)
        parents: Dict[ColorSet, Optional[Tuple[ColorSet, ForcingGadget]]] = {start: None}
        queue = deque([start])
        found: Optional[ColorSet] = None
        while queue:
            current = queue.popleft()
            if predicate(current):
                found = current
                break
            for gadget in gadget_menu:
                key = (gadget, current)
                if key not in transitions:
                    transitions[key] = apply_gadget(target, gadget, current)
                produced = transitions[key]
                if produced and produced not in parents:
                    parents[produced] = (current, gadget)
                    queue.append(produced)

        witness: List[Tuple[ForcingGadget, ColorSet]] = []
        node = found
        while node is not None and parents[node] is not None:
            previous, gadget = parents[node]
            witness.append((gadget, node))
            node = previous
        witness.reverse()
        report.entries.append(ReachabilityEntry(start, found is not None, witness))
        logger.debug(
            "Start %s: %s in %d steps",
            sorted(start),
            "reached" if found is not None else "unreachable",
            len(witness),
        )

    logger.info(
        "Forcing closure towards %s: %d/%d start sets reach the goal",
        goal,
        sum(e.reachable for e in report.entries),
        len(report.entries),
    )
    return report
