"""Homomorphism search between mixed graphs, walk queries and transfer sets."""

import logging
import sys
import time
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from .constants import (
    DEFAULT_TIME_LIMIT,
    FULL_IMAGE_TABLE_LIMIT,
    RECURSION_HEADROOM,
    TIME_CHECK_INTERVAL,
)
from .core import mask_of, members, popcount
from .models import (
    ArcStep,
    ColorSet,
    ConstraintSet,
    EdgeStep,
    Homomorphism,
    LinkPattern,
    MixedGraph,
    Step,
)

logger = logging.getLogger(__name__)


class SignatureMismatchError(ValueError):
    """Exception raised when two graphs (or a graph and a pattern) disagree on (m, n)."""
    pass


class SearchLimitExceeded(RuntimeError):
    """Exception raised when a search runs past its time limit."""

    def __init__(self, time_limit: float, nodes: int):
        self.time_limit = time_limit
        self.nodes = nodes
        super().__init__(f"Search exceeded {time_limit}s after {nodes} nodes")


def _check_signatures(source: MixedGraph, target: MixedGraph) -> None:
    if source.signature != target.signature:
        raise SignatureMismatchError(
            f"Source signature {source.signature} differs from target signature {target.signature}"
        )


def _check_pattern(target: MixedGraph, pattern: LinkPattern) -> None:
    if not pattern.fits(target.m, target.n):
        raise SignatureMismatchError(
            f"Pattern {pattern} does not fit signature {target.signature}"
        )


def step_image(target: MixedGraph, step: Step, mask: int) -> int:
    """Bitmask of vertices reachable by one ``step`` from any vertex of ``mask``."""
    row = target.neighbor_masks[step]
    image = 0
    for x in members(mask):
        image |= row[x]
    return image


def transfer_sequence(
    target: MixedGraph, pattern: LinkPattern, start: Iterable[int]
) -> List[ColorSet]:
    """Sets of possible colors along a walk shape.

    Args:
        target: Target graph
        pattern: Walk shape
        start: Colors allowed at the first vertex

    Returns:
        len(pattern)+1 sets; entry i+1 is the image of entry i across step i

    Raises:
        SignatureMismatchError: If the pattern uses colors the target lacks
    """
    _check_pattern(target, pattern)
    mask = mask_of(start)
    sequence = [frozenset(members(mask))]
    for step in pattern:
        mask = step_image(target, step, mask)
        sequence.append(frozenset(members(mask)))
    return sequence


def exists_walk(target: MixedGraph, pattern: LinkPattern, source: int, destination: int) -> bool:
    """Whether a walk realizing ``pattern`` leads from ``source`` to ``destination``."""
    return destination in transfer_sequence(target, pattern, [source])[-1]


class HomSolver:
    """Backtracking homomorphism search with arc-consistency propagation.

    Domains are bitmasks over target vertices. Variables are picked by
    smallest domain, ties broken by lowest index, and values are tried in
    ascending order. After each decision the undecided vertices are split
    into connected components that are solved independently; solved and
    refuted components are memoized by their domains, which stays valid
    across queries on the same solver.

    The enumeration generator shares state with the other queries, so it
    must be exhausted (or dropped) before another query is issued.
    """

    def __init__(
        self,
        source: MixedGraph,
        target: MixedGraph,
        constraints: Optional[ConstraintSet] = None,
        time_limit: Optional[float] = DEFAULT_TIME_LIMIT,
    ):
        """Prepare a search.

        Args:
            source: Graph to map
            target: Graph to map onto
            constraints: Optional unary restrictions, source vertex -> allowed target vertices
            time_limit: Seconds after which a query raises SearchLimitExceeded

        Raises:
            SignatureMismatchError: If source and target signatures differ
            ValueError: If a constraint names a vertex that does not exist
        """
        _check_signatures(source, target)
        self.source = source
        self.target = target
        self.time_limit = time_limit

        self._links: List[List[Tuple[int, Step]]] = [[] for _ in source.vertices]
        for tail, head, color in source.arcs:
            self._links[tail].append((head, ArcStep(color, True)))
            self._links[head].append((tail, ArcStep(color, False)))
        for u, v, color in source.edges:
            self._links[u].append((v, EdgeStep(color)))
            self._links[v].append((u, EdgeStep(color)))

        self._tables: Dict[Step, Sequence[int]] = {}
        self._image_cache: Dict[Tuple[Step, int], int] = {}
        if target.num_vertices <= FULL_IMAGE_TABLE_LIMIT:
            for step in target.steps():
                self._tables[step] = self._build_table(step)

        full = (1 << target.num_vertices) - 1
        self._doms: List[int] = [full] * source.num_vertices
        for v, allowed in (constraints or {}).items():
            if not 0 <= v < source.num_vertices:
                raise ValueError(f"Constraint on missing source vertex {v}")
            allowed = list(allowed)
            if any(not 0 <= x < target.num_vertices for x in allowed):
                raise ValueError(f"Constraint on vertex {v} names a missing target vertex")
            self._doms[v] &= mask_of(allowed)
        self._trail: List[Tuple[int, int]] = []
        self._initial: Optional[Tuple[int, ...]] = None
        if all(self._doms) and self._propagate(list(source.vertices)):
            self._initial = tuple(self._doms)

        self._solve_memo: Dict[Tuple, Optional[Tuple[int, ...]]] = {}
        self._count_memo: Dict[Tuple, int] = {}
        self._nodes = 0
        self._deadline: Optional[float] = None

        needed = 3 * source.num_vertices + RECURSION_HEADROOM
        if sys.getrecursionlimit() < needed:
            sys.setrecursionlimit(needed)

    def _build_table(self, step: Step) -> List[int]:
        row = self.target.neighbor_masks[step]
        table = [0] * (1 << self.target.num_vertices)
        for mask in range(1, len(table)):
            low = mask & -mask
            table[mask] = table[mask ^ low] | row[low.bit_length() - 1]
        return table

    def _image(self, step: Step, mask: int) -> int:
        table = self._tables.get(step)
        if table is not None:
            return table[mask]
        key = (step, mask)
        image = self._image_cache.get(key)
        if image is None:
            image = step_image(self.target, step, mask)
            self._image_cache[key] = image
        return image

    # Propagation

    def _propagate(self, queue: List[int]) -> bool:
        doms = self._doms
        trail = self._trail
        while queue:
            x = queue.pop()
            dx = doms[x]
            for u, step in self._links[x]:
                du = doms[u]
                nu = du & self._image(step, dx)
                if nu != du:
                    if not nu:
                        return False
                    trail.append((u, du))
                    doms[u] = nu
                    queue.append(u)
        return True

    def _restrict(self, v: int, mask: int) -> bool:
        old = self._doms[v]
        new = old & mask
        if new == old:
            return True
        if not new:
            return False
        self._trail.append((v, old))
        self._doms[v] = new
        return self._propagate([v])

    def _undo(self, mark: int) -> None:
        trail = self._trail
        doms = self._doms
        while len(trail) > mark:
            v, old = trail.pop()
            doms[v] = old

    def _reset(self) -> bool:
        self._trail = []
        self._nodes = 0
        self._deadline = None if self.time_limit is None else time.monotonic() + self.time_limit
        if self._initial is None:
            return False
        self._doms = list(self._initial)
        return True

    def _tick(self) -> None:
        self._nodes += 1
        if (
            self._deadline is not None
            and self._nodes % TIME_CHECK_INTERVAL == 0
            and time.monotonic() > self._deadline
        ):
            raise SearchLimitExceeded(self.time_limit, self._nodes)

    def _components(self, vertices: Iterable[int]) -> List[Tuple[int, ...]]:
        doms = self._doms
        remaining = {v for v in vertices if doms[v] & (doms[v] - 1)}
        components = []
        for root in sorted(remaining):
            if root not in remaining:
                continue
            remaining.discard(root)
            component = [root]
            stack = [root]
            while stack:
                x = stack.pop()
                for u, _ in self._links[x]:
                    if u in remaining:
                        remaining.discard(u)
                        component.append(u)
                        stack.append(u)
            components.append(tuple(sorted(component)))
        components.sort(key=lambda c: (len(c), c))
        return components

    def _choose(self, vertices: Iterable[int]) -> int:
        doms = self._doms
        return min(vertices, key=lambda v: (popcount(doms[v]), v))

    # Decision

    def _solve_all(self, components: List[Tuple[int, ...]]) -> bool:
        for component in components:
            if not self._solve(component):
                return False
        return True

    def _solve(self, component: Tuple[int, ...]) -> bool:
        self._tick()
        doms = self._doms
        key = (component, tuple(doms[v] for v in component))
        if key in self._solve_memo:
            solution = self._solve_memo[key]
            if solution is None:
                return False
            for v, d in zip(component, solution):
                if doms[v] != d:
                    self._trail.append((v, doms[v]))
                    doms[v] = d
            return True

        var = self._choose(component)
        for x in members(doms[var]):
            mark = len(self._trail)
            if self._restrict(var, 1 << x) and self._solve_all(self._components(component)):
                self._solve_memo[key] = tuple(doms[v] for v in component)
                return True
            self._undo(mark)
        self._solve_memo[key] = None
        return False

    def _count(self, component: Tuple[int, ...]) -> int:
        self._tick()
        doms = self._doms
        key = (component, tuple(doms[v] for v in component))
        cached = self._count_memo.get(key)
        if cached is not None:
            return cached

        var = self._choose(component)
        total = 0
        for x in members(doms[var]):
            mark = len(self._trail)
            if self._restrict(var, 1 << x):
                product = 1
                for sub in self._components(component):
                    product *= self._count(sub)
                    if not product:
                        break
                total += product
            self._undo(mark)
        self._count_memo[key] = total
        return total

    def _enumerate(self) -> Iterator[Homomorphism]:
        doms = self._doms
        open_vertices = [v for v in self.source.vertices if doms[v] & (doms[v] - 1)]
        if not open_vertices:
            yield Homomorphism(tuple(d.bit_length() - 1 for d in doms))
            return
        self._tick()
        var = self._choose(open_vertices)
        for x in members(doms[var]):
            mark = len(self._trail)
            if self._restrict(var, 1 << x):
                yield from self._enumerate()
            self._undo(mark)

    # Queries

    def find(self) -> Optional[Homomorphism]:
        """First homomorphism in search order, or None if there is none."""
        if not self._reset():
            return None
        found = self._solve_all(self._components(self.source.vertices))
        logger.debug(
            "Search %s after %d nodes (%d memoized components)",
            "succeeded" if found else "refuted",
            self._nodes,
            len(self._solve_memo),
        )
        if not found:
            return None
        return Homomorphism(tuple(d.bit_length() - 1 for d in self._doms))

    def count(self) -> int:
        """Exact number of homomorphisms."""
        if not self._reset():
            return 0
        total = 1
        for component in self._components(self.source.vertices):
            total *= self._count(component)
            if not total:
                break
        return total

    def forced(self, v: int) -> ColorSet:
        """Every target vertex that some homomorphism assigns to ``v``."""
        if not 0 <= v < self.source.num_vertices:
            raise ValueError(f"Source has no vertex {v}")
        if not self._reset():
            return frozenset()
        result = set()
        everything = list(self.source.vertices)
        for x in members(self._doms[v]):
            mark = len(self._trail)
            if self._restrict(v, 1 << x) and self._solve_all(self._components(everything)):
                result.add(x)
            self._undo(mark)
        return frozenset(result)

    def iter(self) -> Iterator[Homomorphism]:
        """Every homomorphism exactly once, in deterministic order."""
        if not self._reset():
            return
        yield from self._enumerate()


def find_homomorphism(
    source: MixedGraph,
    target: MixedGraph,
    constraints: Optional[ConstraintSet] = None,
    time_limit: Optional[float] = DEFAULT_TIME_LIMIT,
) -> Optional[Homomorphism]:
    """Find a homomorphism respecting the constraints, or None if none exists."""
    return HomSolver(source, target, constraints, time_limit).find()


def count_homomorphisms(
    source: MixedGraph,
    target: MixedGraph,
    constraints: Optional[ConstraintSet] = None,
    time_limit: Optional[float] = DEFAULT_TIME_LIMIT,
) -> int:
    """Count the homomorphisms respecting the constraints."""
    return HomSolver(source, target, constraints, time_limit).count()


def forced_colors(
    source: MixedGraph,
    v: int,
    target: MixedGraph,
    constraints: Optional[ConstraintSet] = None,
    time_limit: Optional[float] = DEFAULT_TIME_LIMIT,
) -> ColorSet:
    """Target vertices that ``v`` takes in at least one homomorphism."""
    return HomSolver(source, target, constraints, time_limit).forced(v)


def iter_homomorphisms(
    source: MixedGraph,
    target: MixedGraph,
    constraints: Optional[ConstraintSet] = None,
    time_limit: Optional[float] = DEFAULT_TIME_LIMIT,
) -> Iterator[Homomorphism]:
    """Enumerate homomorphisms in deterministic search order."""
    return HomSolver(source, target, constraints, time_limit).iter()
