"""Data models for colored-mixed graphs and the objects computed from them."""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Tuple, Union

import networkx as nx

from .constants import (
    ARC_BACKWARD_TOKEN,
    ARC_FORWARD_TOKEN,
    BLUE,
    EDGE_COLOR_TOKENS,
)

Arc = Tuple[int, int, int]
Edge = Tuple[int, int, int]
ColorSet = FrozenSet[int]
ConstraintSet = Dict[int, Iterable[int]]


@dataclass(frozen=True)
class ArcStep:
    """One arc of a walk shape.

    Attributes:
        color: Arc color, 0..m-1
        forward: True when the walk follows the arc from tail to head
    """
    color: int = 0
    forward: bool = True

    def reversed(self) -> "ArcStep":
        return ArcStep(self.color, not self.forward)

    @property
    def token(self) -> str:
        token = ARC_FORWARD_TOKEN if self.forward else ARC_BACKWARD_TOKEN
        return token if self.color == 0 else f"{token}{self.color}"


@dataclass(frozen=True)
class EdgeStep:
    """One edge of a walk shape.

    Attributes:
        color: Edge color, 0..n-1
    """
    color: int = BLUE

    def reversed(self) -> "EdgeStep":
        return self

    @property
    def token(self) -> str:
        for token, color in EDGE_COLOR_TOKENS.items():
            if color == self.color:
                return token
        return f"E{self.color}"


Step = Union[ArcStep, EdgeStep]


def _parse_step(token: str) -> Step:
    head, tail = token[:1].upper(), token[1:]
    color = int(tail) if tail else None
    if head == ARC_FORWARD_TOKEN:
        return ArcStep(color or 0, True)
    if head == ARC_BACKWARD_TOKEN:
        return ArcStep(color or 0, False)
    if head in EDGE_COLOR_TOKENS and not tail:
        return EdgeStep(EDGE_COLOR_TOKENS[head])
    if head == "E" and color is not None:
        return EdgeStep(color)
    raise ValueError(f"Unknown step token: {token!r}")


@dataclass(frozen=True)
class LinkPattern:
    """A non-empty sequence of typed steps describing a walk or path shape."""
    steps: Tuple[Step, ...]

    def __post_init__(self):
        if not self.steps:
            raise ValueError("A link pattern needs at least one step")
        object.__setattr__(self, "steps", tuple(self.steps))

    @classmethod
    def from_tokens(cls, text: Union[str, Iterable[str]]) -> "LinkPattern":
        """Build a pattern from tokens such as ``"B B R B"`` or ``"F K F"``.

        ``B``/``R`` are blue/red edges, ``F``/``K`` forward/backward arcs of
        color 0. A trailing integer selects another color (``F1``, ``E2``).
        """
        tokens = text.split() if isinstance(text, str) else list(text)
        return cls(tuple(_parse_step(token) for token in tokens))

    @classmethod
    def alternating(cls, length: int, color: int = 0, forward_first: bool = True) -> "LinkPattern":
        """Alternating forward/backward arc pattern of the given length."""
        return cls(tuple(ArcStep(color, (i % 2 == 0) == forward_first) for i in range(length)))

    @classmethod
    def uniform(cls, step: Step, length: int) -> "LinkPattern":
        return cls((step,) * length)

    def reversed(self) -> "LinkPattern":
        """The same shape walked from the other end."""
        return LinkPattern(tuple(step.reversed() for step in reversed(self.steps)))

    def fits(self, m: int, n: int) -> bool:
        """Whether every step uses a color of an (m, n) signature."""
        for step in self.steps:
            limit = m if isinstance(step, ArcStep) else n
            if not 0 <= step.color < limit:
                return False
        return True

    def __len__(self) -> int:
        return len(self.steps)

    def __iter__(self) -> Iterator[Step]:
        return iter(self.steps)

    def __str__(self) -> str:
        return " ".join(step.token for step in self.steps)


@dataclass(frozen=True)
class MixedGraph:
    """An (m, n)-colored-mixed graph.

    Attributes:
        num_vertices: Number of vertices, indexed 0..num_vertices-1
        m: Number of arc colors
        n: Number of edge colors
        arcs: Set of (tail, head, color) triples
        edges: Set of (u, v, color) triples with u < v
        labels: Optional vertex names
    """
    num_vertices: int
    m: int = 0
    n: int = 0
    arcs: FrozenSet[Arc] = frozenset()
    edges: FrozenSet[Edge] = frozenset()
    labels: Dict[int, str] = field(default_factory=dict, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "arcs", frozenset(self.arcs))
        object.__setattr__(
            self, "edges", frozenset((min(u, v), max(u, v), c) for u, v, c in self.edges)
        )
        object.__setattr__(self, "labels", dict(self.labels))

    @property
    def signature(self) -> Tuple[int, int]:
        return (self.m, self.n)

    @property
    def num_links(self) -> int:
        return len(self.arcs) + len(self.edges)

    @property
    def vertices(self) -> range:
        return range(self.num_vertices)

    def steps(self) -> List[Step]:
        """Every step type available in this graph's signature."""
        result: List[Step] = []
        for color in range(self.m):
            result.extend((ArcStep(color, True), ArcStep(color, False)))
        result.extend(EdgeStep(color) for color in range(self.n))
        return result

    def vertex_name(self, v: int) -> str:
        return self.labels.get(v, str(v))

    def vertex_index(self, name: Union[str, int]) -> int:
        """Resolve a vertex label (or decimal index) to its index."""
        if isinstance(name, int):
            index = name
        else:
            matches = [v for v, label in self.labels.items() if label == name]
            if matches:
                return matches[0]
            if not name.isdigit():
                raise KeyError(f"Unknown vertex: {name!r}")
            index = int(name)
        if not 0 <= index < self.num_vertices:
            raise KeyError(f"Vertex index out of range: {index}")
        return index

    def names(self, vertices: Iterable[int]) -> List[str]:
        return [self.vertex_name(v) for v in sorted(vertices)]

    def color_set(self, names: Iterable[Union[str, int]]) -> ColorSet:
        return frozenset(self.vertex_index(name) for name in names)

    @cached_property
    def neighbor_masks(self) -> Dict[Step, Tuple[int, ...]]:
        """Per step type, the bitmask of vertices reachable from each vertex."""
        masks = {step: [0] * self.num_vertices for step in self.steps()}
        for tail, head, color in self.arcs:
            masks[ArcStep(color, True)][tail] |= 1 << head
            masks[ArcStep(color, False)][head] |= 1 << tail
        for u, v, color in self.edges:
            masks[EdgeStep(color)][u] |= 1 << v
            masks[EdgeStep(color)][v] |= 1 << u
        return {step: tuple(row) for step, row in masks.items()}

    @cached_property
    def adjacency(self) -> Tuple[Tuple[int, ...], ...]:
        """Neighbors in the underlying simple graph."""
        neighbors: List[set] = [set() for _ in self.vertices]
        for u, v, _ in self.arcs:
            neighbors[u].add(v)
            neighbors[v].add(u)
        for u, v, _ in self.edges:
            neighbors[u].add(v)
            neighbors[v].add(u)
        return tuple(tuple(sorted(row)) for row in neighbors)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_link(self, u: int, v: int, step: Step) -> bool:
        """Whether walking ``step`` from u can reach v."""
        return bool(self.neighbor_masks[step][u] >> v & 1)

    def induced(self, vertices: Iterable[int]) -> "MixedGraph":
        """Induced subgraph, renumbered in ascending order, labels kept."""
        kept = sorted(set(vertices))
        index = {v: i for i, v in enumerate(kept)}
        return MixedGraph(
            num_vertices=len(kept),
            m=self.m,
            n=self.n,
            arcs=frozenset(
                (index[t], index[h], c) for t, h, c in self.arcs if t in index and h in index
            ),
            edges=frozenset(
                (index[u], index[v], c) for u, v, c in self.edges if u in index and v in index
            ),
            labels={index[v]: label for v, label in self.labels.items() if v in index},
        )

    def relabel(self, permutation: Tuple[int, ...]) -> "MixedGraph":
        """Image of the graph under the vertex bijection v -> permutation[v]."""
        p = permutation
        return MixedGraph(
            num_vertices=self.num_vertices,
            m=self.m,
            n=self.n,
            arcs=frozenset((p[t], p[h], c) for t, h, c in self.arcs),
            edges=frozenset((p[u], p[v], c) for u, v, c in self.edges),
            labels={p[v]: label for v, label in self.labels.items()},
        )

    def to_networkx(self) -> nx.Graph:
        """Underlying simple graph, links annotated with kind and color."""
        graph = nx.Graph()
        graph.add_nodes_from(self.vertices)
        graph.add_edges_from((t, h, {"kind": "arc", "color": c}) for t, h, c in self.arcs)
        graph.add_edges_from((u, v, {"kind": "edge", "color": c}) for u, v, c in self.edges)
        return graph


@dataclass(frozen=True)
class Violation:
    """One broken graph invariant.

    Attributes:
        kind: One of loop, duplicate_pair, color_range, index_range
        element: The offending arc, edge or label record
        message: Human-readable description
    """
    kind: str
    element: Tuple
    message: str


@dataclass(frozen=True)
class Homomorphism:
    """A total vertex map from a source graph to a target graph.

    Attributes:
        mapping: mapping[v] is the image of source vertex v
    """
    mapping: Tuple[int, ...]

    def __getitem__(self, v: int) -> int:
        return self.mapping[v]

    def __len__(self) -> int:
        return len(self.mapping)

    def is_valid(self, source: MixedGraph, target: MixedGraph) -> bool:
        """Check that every arc and edge is preserved with its color and orientation."""
        if len(self.mapping) != source.num_vertices:
            return False
        if any(not 0 <= x < target.num_vertices for x in self.mapping):
            return False
        f = self.mapping
        return all((f[t], f[h], c) in target.arcs for t, h, c in source.arcs) and all(
            (min(f[u], f[v]), max(f[u], f[v]), c) in target.edges for u, v, c in source.edges
        )

    def compose(self, other: "Homomorphism") -> "Homomorphism":
        """The map v -> other[self[v]]."""
        return Homomorphism(tuple(other.mapping[x] for x in self.mapping))

    def image(self) -> ColorSet:
        return frozenset(self.mapping)

    def describe(self, source: MixedGraph, target: MixedGraph) -> List[str]:
        return [
            f"{source.vertex_name(v)} -> {target.vertex_name(x)}"
            for v, x in enumerate(self.mapping)
        ]


@dataclass(frozen=True)
class ProfileRow:
    """Allowed-set statistics for paths with a fixed number of internal vertices.

    Attributes:
        length: Number of internal vertices l (the path has l+1 links)
        min_allowed: Smallest allowed-set size over all start colors and patterns
        max_forbidden_size: Order of the target minus min_allowed
        maximal_forbidden_sets: Every forbidden set of size max_forbidden_size
    """
    length: int
    min_allowed: int
    max_forbidden_size: int
    maximal_forbidden_sets: Tuple[ColorSet, ...]


@dataclass
class PathProfile:
    """Per-length allowed-set profile of a target.

    Attributes:
        target_name: Name of the profiled target
        rows: One row per internal length
    """
    target_name: str
    rows: List[ProfileRow] = field(default_factory=list)

    def min_allowed(self) -> Tuple[int, ...]:
        return tuple(row.min_allowed for row in self.rows)


@dataclass(frozen=True)
class BranchCase:
    """Internal 2-vertex counts on the three branches at a 3-vertex."""
    lengths: Tuple[int, int, int]

    def __post_init__(self):
        l1, l2, l3 = self.lengths
        if not l1 >= l2 >= l3 >= 0:
            raise ValueError(f"Branch lengths must satisfy l1 >= l2 >= l3 >= 0: {self.lengths}")


@dataclass
class DischargingReport:
    """Outcome of evaluating the discharging hypothesis on a graph.

    Attributes:
        k: Discharging parameter
        max_consecutive_2vertices: Longest run of 2-vertices (None when unbounded)
        max_2weak_neighbors_of_3vertex: Most 2-weak-neighbors of any 3-vertex
        hypothesis_holds: Whether every hypothesis is met
        mad_lower_bound: 2 + 2/(k+2)
        girth_exclusion: 2k+6
        reason: Why the hypothesis fails, if it does
        mad: Exact maximum average degree, computed when the hypothesis holds
        min_final_charge: Smallest charge after discharging, computed when the hypothesis holds
    """
    k: int
    max_consecutive_2vertices: Optional[int]
    max_2weak_neighbors_of_3vertex: int
    hypothesis_holds: bool
    mad_lower_bound: Fraction
    girth_exclusion: int
    reason: str = ""
    mad: Optional[Fraction] = None
    min_final_charge: Optional[Fraction] = None

    @property
    def bound_holds(self) -> Optional[bool]:
        """Whether mad meets the lower bound (None when not evaluated)."""
        if self.mad is None:
            return None
        return self.mad >= self.mad_lower_bound


@dataclass(frozen=True)
class EdgeBound:
    """Edge counts a universal planar target would need.

    Attributes:
        required: (2m+n)k - m - n
        planar_max: 3k - 6
        impossible: Whether the requirement beats the planar maximum for every k >= 3
    """
    required: int
    planar_max: int
    impossible: bool

    @property
    def exceeds(self) -> bool:
        """Whether the requirement beats the planar maximum at this k."""
        return self.required > self.planar_max


@dataclass(frozen=True)
class ConstructionSpec:
    """A named construction and its integer parameters."""
    name: str
    params: Tuple[Tuple[str, int], ...] = ()

    @classmethod
    def of(cls, name: str, **params: int) -> "ConstructionSpec":
        return cls(name, tuple(sorted(params.items())))

    def param(self, key: str, default: Optional[int] = None) -> Optional[int]:
        return dict(self.params).get(key, default)


@dataclass(frozen=True)
class ForcingGadget:
    """A gadget turning a forced set into another forced set.

    Attributes:
        name: out, in, blue, red, dashed_blue, dashed_red, Z, X or Y
        girth_param: Girth parameter for Z, X and Y (None for the default)
    """
    name: str
    girth_param: Optional[int] = None

    def __str__(self) -> str:
        return self.name if self.girth_param is None else f"{self.name}(g={self.girth_param})"
