"""Deterministic generators for the negative-result constructions and their building blocks."""

import logging
from typing import Callable, Dict, List, Optional, Tuple

from .constants import BLUE, RED
from .core import GraphBuilder
from .metrics import bipartition
from .models import ArcStep, ConstructionSpec, EdgeStep, LinkPattern, MixedGraph

logger = logging.getLogger(__name__)


class ConstructionError(ValueError):
    """Exception raised for an unknown construction or invalid parameters."""
    pass


def smallest_congruent(lower: int, modulus: int, residue: int) -> int:
    """Smallest h >= lower with h = residue (mod modulus)."""
    return lower + (residue - lower) % modulus


def _require_girth(g: int, minimum: int = 3) -> None:
    if g < minimum:
        raise ConstructionError(f"Girth parameter must be at least {minimum}, got {g}")


# Building blocks


def circuit(k: int) -> MixedGraph:
    """Directed cycle v1 -> v2 -> ... -> vk -> v1."""
    if k < 3:
        raise ConstructionError(f"A circuit needs at least 3 vertices, got {k}")
    builder = GraphBuilder(1, 0)
    builder.add_vertices(k, [f"v{i + 1}" for i in range(k)])
    for i in range(k):
        builder.add_arc(i, (i + 1) % k)
    return builder.build()


def alternating_cycle(k: int, first_color: int = BLUE) -> MixedGraph:
    """2-edge-colored cycle v0 ... v(k-1) whose colors alternate, v0v1 having ``first_color``."""
    if k < 4 or k % 2:
        raise ConstructionError(f"An alternating cycle needs an even length of at least 4, got {k}")
    builder = GraphBuilder(0, 2)
    builder.add_vertices(k, [f"v{i}" for i in range(k)])
    for i in range(k):
        builder.add_edge(i, (i + 1) % k, first_color ^ (i % 2))
    return builder.build()


def cycle_graph(pattern: LinkPattern, m: int, n: int) -> MixedGraph:
    """Cycle v0 ... v(k-1) whose i-th link lets a walk go from v_i to v_(i+1) by the i-th step."""
    if len(pattern) < 3:
        raise ConstructionError("A cycle needs at least 3 links")
    builder = GraphBuilder(m, n)
    k = len(pattern)
    builder.add_vertices(k, [f"v{i}" for i in range(k)])
    for i, step in enumerate(pattern):
        builder.add_step(i, (i + 1) % k, step)
    return builder.build()


def path_graph(pattern: LinkPattern, m: int, n: int) -> MixedGraph:
    """Path p0 ... pk shaped by ``pattern``."""
    builder = GraphBuilder(m, n)
    start = builder.add_vertex("p0")
    builder.add_path(start, None, pattern, label_prefix="p")
    return builder.build()


def cactus_cycle(k: int) -> MixedGraph:
    """Cycle w1 ... wk with arcs w(2i-1) -> w(2i), w(2i+1) -> w(2i) and wk -> w1.

    Mapping it to the 4-vertex tournament with w1 colored d is impossible.
    """
    if k < 4 or k % 2:
        raise ConstructionError(f"The cycle needs an even length of at least 4, got {k}")
    builder = GraphBuilder(1, 0)
    builder.add_vertices(k, [f"w{i + 1}" for i in range(k)])
    for i in range(k // 2):
        builder.add_arc(2 * i, 2 * i + 1)
    for i in range(1, k // 2):
        builder.add_arc(2 * i, 2 * i - 1)
    builder.add_arc(k - 1, 0)
    return builder.build()


# Constructions


def cactus(g: int = 3) -> MixedGraph:
    """Oriented cactus of girth at least g with no homomorphism to a 4-vertex tournament.

    A circuit v1 ... vg' with g' the smallest value >= g congruent to 4 mod 6,
    with every v_i identified with the vertex w1 of its own copy of the cycle
    built by ``cactus_cycle``.
    """
    _require_girth(g)
    length = smallest_congruent(g, 6, 4)
    builder = GraphBuilder(1, 0)
    builder.add_graph(circuit(length), label_prefix="")
    cycle = cactus_cycle(length)
    for i in range(length):
        builder.add_graph(cycle, identify={0: i}, label_prefix=f"v{i + 1}.")
    graph = builder.build()
    logger.debug("cactus(%d): g'=%d, %d vertices", g, length, graph.num_vertices)
    return graph


def outerplanar5(g: int = 3) -> MixedGraph:
    """Bipartite outerplanar 2-edge-colored graph of girth at least g with no
    homomorphism to a planar target on 5 vertices.

    An alternating cycle v0 ... v(g'-1), g' the smallest value >= g congruent
    to 2 mod 4, and for 0 <= i <= g'-3 a path of g'-2 internal vertices from
    v_i to v_(i+1) colored opposite to the edge v_i v_(i+1).
    """
    _require_girth(g)
    length = smallest_congruent(g, 4, 2)
    builder = GraphBuilder(0, 2)
    builder.add_graph(alternating_cycle(length), label_prefix="")
    for i in range(length - 2):
        color = RED if i % 2 == 0 else BLUE
        builder.add_path(
            i, i + 1, LinkPattern.uniform(EdgeStep(color), length - 1), label_prefix=f"w{i}."
        )
    graph = builder.build()
    logger.debug("outerplanar5(%d): g'=%d, %d vertices", g, length, graph.num_vertices)
    return graph


def x14() -> MixedGraph:
    """Oriented 14-cycle whose arcs have their tail at the even index, except v13 -> v0.

    No homomorphism to T5 avoids b on every even-index vertex.
    """
    builder = GraphBuilder(1, 0)
    builder.add_vertices(14, [f"v{i}" for i in range(14)])
    for i in range(13):
        if i % 2 == 0:
            builder.add_arc(i, i + 1)
        else:
            builder.add_arc(i + 1, i)
    builder.add_arc(13, 0)
    return builder.build()


def p7() -> MixedGraph:
    """Oriented path p0 ... p6 that cannot map to T5 with both ends colored b."""
    return path_graph(LinkPattern.from_tokens("K F K K K F"), 1, 0)


def y_graph() -> MixedGraph:
    """Bipartite oriented graph of girth 14 with no homomorphism to T5.

    Eight copies of ``x14`` (main, X0, X2, ..., X12) and, for every pair of
    even indices (i, j), a copy of ``p7`` from v_i of the main copy to v_j
    of X_i.
    """
    even = range(0, 14, 2)
    cycle = x14()
    path = p7()
    builder = GraphBuilder(1, 0)
    main = builder.add_graph(cycle, label_prefix="main.")
    copies = {i: builder.add_graph(cycle, label_prefix=f"X{i}.") for i in even}
    for i in even:
        for j in even:
            builder.add_graph(
                path, identify={0: main[i], 6: copies[i][j]}, label_prefix=f"P{i}_{j}."
            )
    return builder.build()


def red_cycles(length: int = 11) -> MixedGraph:
    """2-edge-colored graph of girth ``length`` with no homomorphism to T6.

    Red cycles X0 ... X(length) on vertices 0 ... length-1; for every i, j in
    0 ... length-1, a path of 5 blue edges joins vertex i of the hub cycle
    X(length) to vertex j of X_i.
    """
    if length < 3 or length % 2 == 0:
        raise ConstructionError(f"The red cycles need an odd length of at least 3, got {length}")
    cycle = cycle_graph(LinkPattern.uniform(EdgeStep(RED), length), 0, 2)
    blue = LinkPattern.uniform(EdgeStep(BLUE), 5)
    builder = GraphBuilder(0, 2)
    copies = [builder.add_graph(cycle, label_prefix=f"X{i}.") for i in range(length + 1)]
    hub = copies[length]
    for i in range(length):
        for j in range(length):
            builder.add_path(hub[i], copies[i][j], blue, label_prefix=f"P{i}_{j}.")
    return builder.build()


def bip_g10(swap: bool = False) -> MixedGraph:
    """Bipartite 2-edge-colored graph of girth 10 with no homomorphism to T6.

    A main copy of M = outerplanar5(10) and, per vertex v of the main copy, a
    copy of M with parts (A, B); v is joined to every vertex of A by 5 blue
    edges and to every vertex of B by a path colored blue, blue, red, blue.

    Args:
        swap: Exchange the roles of A and B
    """
    base = outerplanar5(10)
    side_a, side_b = bipartition(base)
    if swap:
        side_a, side_b = side_b, side_a
    to_a = LinkPattern.uniform(EdgeStep(BLUE), 5)
    to_b = LinkPattern.from_tokens("B B R B")
    builder = GraphBuilder(0, 2)
    main = builder.add_graph(base, label_prefix="Y.")
    for v in base.vertices:
        copy = builder.add_graph(base, label_prefix=f"Y{v}.")
        for w in base.vertices:
            pattern = to_a if w in side_a else to_b
            builder.add_path(main[v], copy[w], pattern)
    graph = builder.build()
    logger.debug("bip_g10: %d vertices, %d links", graph.num_vertices, graph.num_links)
    return graph


def replication_gadget(g: MixedGraph, girth_param: int) -> MixedGraph:
    """Add, for every link uv, the degree-2 paths from u to v that spread every color.

    Per edge color, one path of girth_param-1 edges of that color. Per arc
    color, two alternating paths of girth_param-1 arcs and two of girth_param
    arcs; one of each pair leaves u along its first arc, the other enters u.
    The original links are kept.
    """
    _require_girth(girth_param)
    builder = GraphBuilder(g.m, g.n)
    builder.add_graph(g, label_prefix="")
    links = sorted((t, h) for t, h, _ in g.arcs) + sorted((u, v) for u, v, _ in g.edges)
    for u, v in links:
        for color in range(g.n):
            builder.add_path(u, v, LinkPattern.uniform(EdgeStep(color), girth_param - 1))
        for color in range(g.m):
            for length in (girth_param - 1, girth_param):
                for forward_first in (True, False):
                    builder.add_path(u, v, LinkPattern.alternating(length, color, forward_first))
    graph = builder.build()
    logger.debug(
        "replication_gadget: %d links replicated, %d vertices", len(links), graph.num_vertices
    )
    return graph


def minimal_counterexample_subdivision(
    g: MixedGraph, link: Tuple[int, int, int]
) -> Tuple[MixedGraph, int]:
    """Replace one link of g by a short path and return the designated vertex.

    An arc v0 -> v3 becomes v0 -> v1 <- v2 -> v3 and v2 is designated. An
    edge v0v3 becomes v0 v1 v2 v3 with v0v1 and v1v2 red and v2v3 in the
    original color, and v1 is designated.

    Raises:
        ConstructionError: If ``link`` is not a link of g
    """
    v0, v3, color = link
    edge = (min(v0, v3), max(v0, v3), color)
    builder = GraphBuilder(g.m, g.n)
    if link in g.arcs:
        builder.add_graph(
            MixedGraph(g.num_vertices, g.m, g.n, g.arcs - {link}, g.edges, g.labels), label_prefix=""
        )
        v1, v2 = builder.add_vertices(2)
        builder.add_arc(v0, v1, color)
        builder.add_arc(v2, v1, color)
        builder.add_arc(v2, v3, color)
        return builder.build(), v2
    if edge in g.edges:
        if g.n < 2:
            raise ConstructionError("Edge subdivision needs a red edge color")
        builder.add_graph(
            MixedGraph(g.num_vertices, g.m, g.n, g.arcs, g.edges - {edge}, g.labels), label_prefix=""
        )
        v1, v2 = builder.add_vertices(2)
        builder.add_edge(v0, v1, RED)
        builder.add_edge(v1, v2, RED)
        builder.add_edge(v2, v3, color)
        return builder.build(), v1
    raise ConstructionError(f"{link} is not a link of the graph")


GENERATORS: Dict[str, Callable[..., MixedGraph]] = {
    "cactus": cactus,
    "outerplanar5": outerplanar5,
    "x14": x14,
    "p7": p7,
    "y_graph": y_graph,
    "red_cycles": red_cycles,
    "bip_g10": bip_g10,
}

# Parameter names each generator accepts, mapped to its keyword argument
_PARAMETERS: Dict[str, Dict[str, str]] = {
    "cactus": {"g": "g"},
    "outerplanar5": {"g": "g"},
    "red_cycles": {"length": "length"},
    "bip_g10": {"swap": "swap"},
}


def generate(spec: ConstructionSpec) -> MixedGraph:
    """Build the construction named by ``spec``.

    Raises:
        ConstructionError: If the name is unknown or a parameter is not accepted
    """
    if spec.name not in GENERATORS:
        raise ConstructionError(
            f"Unknown construction {spec.name!r}, expected one of {', '.join(GENERATORS)}"
        )
    accepted = _PARAMETERS.get(spec.name, {})
    kwargs = {}
    for key, value in spec.params:
        if key not in accepted:
            raise ConstructionError(f"Construction {spec.name!r} takes no parameter {key!r}")
        kwargs[accepted[key]] = bool(value) if key == "swap" else value
    return GENERATORS[spec.name](**kwargs)


def construction_names() -> List[str]:
    return list(GENERATORS)


def construction_spec(name: str, girth: Optional[int] = None) -> ConstructionSpec:
    """Spec for ``name`` with an optional girth parameter, as the command line passes it."""
    if girth is None:
        return ConstructionSpec.of(name)
    if name in ("cactus", "outerplanar5"):
        return ConstructionSpec.of(name, g=girth)
    if name == "red_cycles":
        return ConstructionSpec.of(name, length=girth)
    raise ConstructionError(f"Construction {name!r} has a fixed girth")
