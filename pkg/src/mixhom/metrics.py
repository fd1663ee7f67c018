"""Structural metrics and the counting bounds used by the discharging and universality arguments."""

import logging
import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Set, Tuple, Union

import networkx as nx
import pandas as pd
from networkx.algorithms.flow import minimum_cut

from .constants import MAX_BRUTEFORCE_MAD_ORDER
from .core import popcount
from .models import ArcStep, DischargingReport, EdgeBound, MixedGraph

logger = logging.getLogger(__name__)

_SOURCE = -1
_SINK = -2


def girth(g: MixedGraph) -> Union[int, float]:
    """Length of the shortest cycle of the underlying graph, ``math.inf`` for forests."""
    adjacency = g.adjacency
    best: Union[int, float] = math.inf
    for root in g.vertices:
        dist = {root: 0}
        parent = {root: -1}
        queue = deque([root])
        while queue:
            u = queue.popleft()
            if 2 * dist[u] >= best:
                break
            for w in adjacency[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif w != parent[u]:
                    best = min(best, dist[u] + dist[w] + 1)
        if best == 3:
            break
    return best


def is_bipartite(g: MixedGraph) -> bool:
    """Two-colorability of the underlying graph."""
    return nx.is_bipartite(g.to_networkx())


def bipartition(g: MixedGraph) -> Tuple[Set[int], Set[int]]:
    """Sides of a bipartite graph, the lowest index of each component on the first side.

    Raises:
        ValueError: If the graph has an odd cycle
    """
    side: Dict[int, int] = {}
    for root in g.vertices:
        if root in side:
            continue
        side[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in g.adjacency[u]:
                if w not in side:
                    side[w] = 1 - side[u]
                    queue.append(w)
                elif side[w] == side[u]:
                    raise ValueError("Graph is not bipartite")
    first = {v for v, s in side.items() if s == 0}
    return first, set(side) - first


def _underlying_edges(g: MixedGraph) -> List[Tuple[int, int]]:
    return [(u, w) for u in g.vertices for w in g.adjacency[u] if u < w]


def _denser_subgraph(
    g: MixedGraph, edges: List[Tuple[int, int]], density: Fraction
) -> Optional[Set[int]]:
    """Vertex set of a subgraph strictly denser than ``density``, if one exists.

    Goldberg's cut network, scaled by the denominator so every capacity is
    an integer.
    """
    p, q = density.numerator, density.denominator
    total = len(edges)
    network = nx.DiGraph()
    for v in g.vertices:
        network.add_edge(_SOURCE, v, capacity=total * q)
        network.add_edge(v, _SINK, capacity=total * q + 2 * p - g.degree(v) * q)
    for u, w in edges:
        network.add_edge(u, w, capacity=q)
        network.add_edge(w, u, capacity=q)
    cut_value, (reachable, _) = minimum_cut(network, _SOURCE, _SINK, capacity="capacity")
    if cut_value >= total * q * g.num_vertices:
        return None
    return set(reachable) - {_SOURCE}


def mad_exact(g: MixedGraph) -> Fraction:
    """Maximum average degree, exactly.

    Starts from the density of the whole graph and repeatedly replaces it by
    the density of a strictly denser subgraph found by a minimum cut, until
    none exists.

    Raises:
        ValueError: If the graph has no vertex
    """
    if g.num_vertices == 0:
        raise ValueError("mad is undefined on the empty graph")
    edges = _underlying_edges(g)
    if not edges:
        return Fraction(0)
    density = Fraction(len(edges), g.num_vertices)
    rounds = 0
    while True:
        denser = _denser_subgraph(g, edges, density)
        if denser is None:
            break
        inside = sum(1 for u, w in edges if u in denser and w in denser)
        density = Fraction(inside, len(denser))
        rounds += 1
    logger.debug("mad settled after %d improving cuts", rounds)
    return 2 * density


def mad_bruteforce(g: MixedGraph) -> Fraction:
    """Maximum average degree by enumerating every induced subgraph."""
    order = g.num_vertices
    if order == 0:
        raise ValueError("mad is undefined on the empty graph")
    if order > MAX_BRUTEFORCE_MAD_ORDER:
        raise ValueError(f"Exhaustive mad is limited to {MAX_BRUTEFORCE_MAD_ORDER} vertices")
    neighbor_bits = [sum(1 << w for w in g.adjacency[v]) for v in g.vertices]
    best = Fraction(0)
    for subset in range(1, 1 << order):
        doubled_edges = 0
        rest = subset
        while rest:
            low = rest & -rest
            doubled_edges += popcount(neighbor_bits[low.bit_length() - 1] & subset)
            rest ^= low
        value = Fraction(doubled_edges, popcount(subset))
        if value > best:
            best = value
    return best


@dataclass
class Thread:
    """A maximal run of 2-vertices.

    Attributes:
        ends: The two vertices of degree other than 2 at the ends of the run,
            None for both when the run closes up into a cycle
        members: The 2-vertices of the run, in walking order
    """
    ends: Tuple[Optional[int], Optional[int]]
    members: List[int]


def threads(g: MixedGraph) -> List[Thread]:
    """Maximal runs of 2-vertices of the underlying graph."""
    degree = [g.degree(v) for v in g.vertices]
    adjacency = g.adjacency
    seen: Set[int] = set()
    result = []
    for start in g.vertices:
        if degree[start] != 2 or start in seen:
            continue
        seen.add(start)
        halves: List[List[int]] = []
        ends: List[Optional[int]] = []
        for first in adjacency[start]:
            run: List[int] = []
            previous, current = start, first
            while degree[current] == 2 and current not in seen:
                seen.add(current)
                run.append(current)
                a, b = adjacency[current]
                previous, current = current, (b if a == previous else a)
            ends.append(None if degree[current] == 2 else current)
            halves.append(run)
        members = list(reversed(halves[0])) + [start] + halves[1]
        if None in ends:
            ends = [None, None]
        result.append(Thread((ends[0], ends[1]), members))
    return result


def discharge(g: MixedGraph, k: int) -> Dict[int, Fraction]:
    """Final charges after every 3+-vertex sends 1/(k+2) to each 2-weak-neighbor.

    Initial charge is the degree. A thread whose two ends are the same vertex
    is served by that vertex from both sides.
    """
    share = Fraction(1, k + 2)
    charge = {v: Fraction(g.degree(v)) for v in g.vertices}
    for thread in threads(g):
        for end in thread.ends:
            if end is None:
                continue
            charge[end] -= share * len(thread.members)
            for x in thread.members:
                charge[x] += share
    return charge


def check_discharging(g: MixedGraph, k: int) -> DischargingReport:
    """Evaluate the discharging hypothesis for parameter k.

    The hypothesis: minimum degree at least 2, every run of consecutive
    2-vertices has at most floor((k+1)/2) vertices, and every 3-vertex has
    at most k 2-weak-neighbors (counted per incident thread). When it holds,
    the report also carries the exact mad and the smallest final charge.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    bound = 2 + Fraction(2, k + 2)
    run_limit = (k + 1) // 2
    all_threads = threads(g)

    weak: Dict[int, int] = {}
    longest: Optional[int] = 0
    for thread in all_threads:
        if thread.ends[0] is None:
            longest = None
        elif longest is not None:
            longest = max(longest, len(thread.members))
        for end in thread.ends:
            if end is not None:
                weak[end] = weak.get(end, 0) + len(thread.members)
    most_weak = max((weak.get(v, 0) for v in g.vertices if g.degree(v) == 3), default=0)

    reasons = []
    min_degree = min((g.degree(v) for v in g.vertices), default=0)
    if g.num_vertices == 0 or min_degree < 2:
        reasons.append(f"minimum degree is {min_degree}, not at least 2")
    if longest is None:
        reasons.append("a cycle component consists of 2-vertices only")
    elif longest > run_limit:
        reasons.append(f"a run of {longest} consecutive 2-vertices exceeds {run_limit}")
    if most_weak > k:
        reasons.append(f"a 3-vertex has {most_weak} 2-weak-neighbors, more than {k}")

    report = DischargingReport(
        k=k,
        max_consecutive_2vertices=longest,
        max_2weak_neighbors_of_3vertex=most_weak,
        hypothesis_holds=not reasons,
        mad_lower_bound=bound,
        girth_exclusion=2 * k + 6,
        reason="; ".join(reasons),
    )
    if report.hypothesis_holds:
        report.mad = mad_exact(g)
        report.min_final_charge = min(discharge(g, k).values())
        if report.mad < bound:
            logger.error("mad %s below %s although the hypothesis holds", report.mad, bound)
    return report


def universality_edge_bound(m: int, n: int, k: int) -> EdgeBound:
    """Edges a P_g^(m,n)-universal target on k vertices needs, against the planar maximum."""
    if m < 0 or n < 0:
        raise ValueError("m and n must be non-negative")
    if k < 3:
        raise ValueError("k must be at least 3")
    return EdgeBound(
        required=(2 * m + n) * k - m - n,
        planar_max=3 * k - 6,
        impossible=2 * m + n >= 3,
    )


@dataclass(frozen=True)
class PlanarBounds:
    """The two necessary conditions every planar graph meets.

    Attributes:
        edges: Number of edges of the underlying graph
        edge_limit: 3|V| - 6
        edges_ok: edges <= edge_limit (always true below 3 vertices)
        mad: Exact maximum average degree
        girth: Girth of the underlying graph
        mad_girth_ok: (mad - 2)(girth - 2) < 4
    """
    edges: int
    edge_limit: int
    edges_ok: bool
    mad: Fraction
    girth: Union[int, float]
    mad_girth_ok: bool

    @property
    def passed(self) -> bool:
        return self.edges_ok and self.mad_girth_ok


def planar_bounds(g: MixedGraph) -> PlanarBounds:
    """Check the edge-count and mad/girth conditions of planar graphs."""
    edges = g.num_links
    limit = 3 * g.num_vertices - 6
    mad = mad_exact(g)
    g_girth = girth(g)
    if g_girth == math.inf:
        mad_girth_ok = True
    else:
        mad_girth_ok = (mad - 2) * (g_girth - 2) < 4
    return PlanarBounds(
        edges=edges,
        edge_limit=limit,
        edges_ok=g.num_vertices < 3 or edges <= limit,
        mad=mad,
        girth=g_girth,
        mad_girth_ok=mad_girth_ok,
    )


def edge_class_spanning(g: MixedGraph, color: int) -> bool:
    """Whether the edges of one color form a connected spanning subgraph."""
    if g.num_vertices == 0:
        return True
    graph = nx.Graph()
    graph.add_nodes_from(g.vertices)
    graph.add_edges_from((u, v) for u, v, c in g.edges if c == color)
    return nx.is_connected(graph)


def alternating_saturation(g: MixedGraph, color: int) -> Optional[int]:
    """Least walk length from which alternating walks reach every vertex.

    Walks start with a forward arc of ``color`` and then alternate. The
    result is the least p such that, from every start vertex, walks of
    length p, p+1 and p+2 reach every vertex; from there on every length
    does, so every ordered pair is joined by alternating walks of both
    parities. None if that does not happen within 2|V|^2 steps.
    """
    order = g.num_vertices
    if order == 0:
        return 0
    full = (1 << order) - 1
    forward = g.neighbor_masks[ArcStep(color, True)]
    backward = g.neighbor_masks[ArcStep(color, False)]
    limit = 2 * order * order
    worst = 0
    for start in g.vertices:
        mask = 1 << start
        history = [mask]
        for i in range(limit + 2):
            row = forward if i % 2 == 0 else backward
            image = 0
            rest = mask
            while rest:
                low = rest & -rest
                image |= row[low.bit_length() - 1]
                rest ^= low
            mask = image
            history.append(mask)
        saturation = next(
            (
                p
                for p in range(limit + 1)
                if history[p] == full and history[p + 1] == full and history[p + 2] == full
            ),
            None,
        )
        if saturation is None:
            return None
        worst = max(worst, saturation)
    return worst


@dataclass(frozen=True)
class ClassConnectivity:
    """Connectivity of one arc or edge color class.

    Attributes:
        kind: "arc" or "edge"
        color: Color index
        links: Number of links of this color
        required_links: 2|V|-1 for arcs, |V|-1 for edges
        connected: Spanning connectivity (edges) or both-parity alternating reachability (arcs)
        saturation_length: Alternating saturation length (arcs only)
    """
    kind: str
    color: int
    links: int
    required_links: int
    connected: bool
    saturation_length: Optional[int] = None

    @property
    def passed(self) -> bool:
        return self.connected and self.links >= self.required_links


@dataclass
class ConnectivityReport:
    """Per-class connectivity of a target."""
    classes: List[ClassConnectivity] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.classes)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            [
                {
                    "kind": c.kind,
                    "color": c.color,
                    "links": c.links,
                    "required": c.required_links,
                    "connected": c.connected,
                    "saturation": c.saturation_length,
                    "passed": c.passed,
                }
                for c in self.classes
            ]
        )


def color_class_connectivity(target: MixedGraph) -> ConnectivityReport:
    """Check the connectivity every universal target must have, per color class."""
    order = target.num_vertices
    report = ConnectivityReport()
    for color in range(target.m):
        saturation = alternating_saturation(target, color)
        report.classes.append(
            ClassConnectivity(
                kind="arc",
                color=color,
                links=sum(1 for arc in target.arcs if arc[2] == color),
                required_links=2 * order - 1,
                connected=saturation is not None,
                saturation_length=saturation,
            )
        )
    for color in range(target.n):
        report.classes.append(
            ClassConnectivity(
                kind="edge",
                color=color,
                links=sum(1 for edge in target.edges if edge[2] == color),
                required_links=order - 1,
                connected=edge_class_spanning(target, color),
            )
        )
    return report
