"""Exhaustive sweeps of a source graph against families of small targets."""

import logging
import time
from dataclasses import dataclass, field
from multiprocessing import Pool
from typing import List, Optional, Sequence, Tuple

import pandas as pd
from tqdm import tqdm

from .constants import (
    DEFAULT_SWEEP_CHUNK_SIZE,
    DEFAULT_TIME_LIMIT,
    DEFAULT_WORKERS,
    MAX_PLANAR_TARGET_ORDER,
)
from .models import MixedGraph
from .solver import find_homomorphism
from .targets import enumerate_mixed_graphs, enumerate_tournaments

logger = logging.getLogger(__name__)


def _check_chunk(
    args: Tuple[MixedGraph, Sequence[Tuple[int, MixedGraph]], Optional[float]]
) -> List[int]:
    source, chunk, time_limit = args
    return [
        index
        for index, target in chunk
        if find_homomorphism(source, target, time_limit=time_limit) is not None
    ]


@dataclass
class SweepResult:
    """Outcome of sweeping one source against a list of targets.

    Attributes:
        source_vertices: Order of the source graph
        targets: Orders and link counts of the swept targets, by index
        admitting: Indices of the targets the source maps to, ascending
        elapsed: Wall-clock seconds
    """
    source_vertices: int
    targets: List[Tuple[int, int]] = field(default_factory=list)
    admitting: List[int] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def refuted(self) -> bool:
        """Whether no swept target admits a homomorphism."""
        return not self.admitting

    def to_frame(self) -> pd.DataFrame:
        admitting = set(self.admitting)
        return pd.DataFrame(
            [
                {"target": i, "vertices": order, "links": links, "admits": i in admitting}
                for i, (order, links) in enumerate(self.targets)
            ]
        )


class TargetSweep:
    """Runs the solver from one source against many targets.

    Targets are split into chunks; with more than one worker the chunks run
    in a process pool. Results are collected in target order whatever the
    worker count.
    """

    def __init__(
        self,
        workers: int = DEFAULT_WORKERS,
        show_progress: bool = True,
        chunk_size: int = DEFAULT_SWEEP_CHUNK_SIZE,
        time_limit: Optional[float] = DEFAULT_TIME_LIMIT,
    ):
        """Configure a sweep.

        Args:
            workers: Number of worker processes (1 runs in-process)
            show_progress: Whether to show a progress bar
            chunk_size: Targets per work item
            time_limit: Per-target solver time limit in seconds
        """
        if workers < 1:
            raise ValueError("At least one worker is needed")
        if chunk_size < 1:
            raise ValueError("Chunk size must be positive")
        self.workers = workers
        self.show_progress = show_progress
        self.chunk_size = chunk_size
        self.time_limit = time_limit

    def _chunks(self, source: MixedGraph, targets: Sequence[MixedGraph]):
        indexed = list(enumerate(targets))
        for start in range(0, len(indexed), self.chunk_size):
            yield source, indexed[start:start + self.chunk_size], self.time_limit

    def refute(self, source: MixedGraph, targets: Sequence[MixedGraph]) -> SweepResult:
        """Try every target and report the ones that admit a homomorphism."""
        started = time.perf_counter()
        targets = list(targets)
        chunks = list(self._chunks(source, targets))
        logger.info(
            "Sweeping a %d-vertex source against %d targets with %d worker(s)",
            source.num_vertices,
            len(targets),
            self.workers,
        )

        progress = tqdm(
            total=len(targets), desc="Targets", unit="target", disable=not self.show_progress
        )
        admitting: List[int] = []
        try:
            if self.workers > 1 and len(chunks) > 1:
                with Pool(processes=min(self.workers, len(chunks))) as pool:
                    for chunk, found in zip(chunks, pool.imap(_check_chunk, chunks)):
                        admitting.extend(found)
                        progress.update(len(chunk[1]))
            else:
                for chunk in chunks:
                    admitting.extend(_check_chunk(chunk))
                    progress.update(len(chunk[1]))
        finally:
            progress.close()

        result = SweepResult(
            source_vertices=source.num_vertices,
            targets=[(t.num_vertices, t.num_links) for t in targets],
            admitting=sorted(admitting),
            elapsed=time.perf_counter() - started,
        )
        logger.info(
            "Sweep finished in %.1fs: %d of %d targets admit a homomorphism",
            result.elapsed,
            len(result.admitting),
            len(targets),
        )
        return result


def admissible_targets(
    source: MixedGraph, targets: Sequence[MixedGraph], workers: int = DEFAULT_WORKERS
) -> List[int]:
    """Indices of the targets ``source`` maps to."""
    return TargetSweep(workers=workers, show_progress=False).refute(source, targets).admitting


def complete_targets(order: int, m: int, n: int) -> List[MixedGraph]:
    """Complete (m, n)-graphs on ``order`` vertices, one per isomorphism class.

    Every (m, n)-graph on ``order`` vertices is a subgraph of one of them.
    """
    if (m, n) == (1, 0):
        return enumerate_tournaments(order)
    return enumerate_mixed_graphs(order, m, n, complete=True)


def mixed_chromatic_number(g: MixedGraph, max_order: int) -> Optional[int]:
    """Smallest order of an (m, n)-graph that g maps to, or None above ``max_order``."""
    for order in range(1, max_order + 1):
        if admissible_targets(g, complete_targets(order, g.m, g.n)):
            logger.debug("Mixed chromatic number is %d", order)
            return order
    return None


def planar_targets(max_order: int, m: int, n: int) -> List[MixedGraph]:
    """(m, n)-graphs with a planar underlying graph on 1..max_order vertices,
    one per isomorphism class.

    Up to 5 vertices the only non-planar underlying graph is K5, which the
    3k-6 link limit already rules out.
    """
    if max_order > MAX_PLANAR_TARGET_ORDER:
        raise ValueError(f"Planar targets are enumerated up to {MAX_PLANAR_TARGET_ORDER} vertices")
    result: List[MixedGraph] = []
    for order in range(1, max_order + 1):
        limit = 3 * order - 6 if order >= 3 else None
        result.extend(enumerate_mixed_graphs(order, m, n, max_links=limit))
    logger.debug("%d planar (%d,%d)-targets on at most %d vertices", len(result), m, n, max_order)
    return result


def sweep_planar_targets(
    source: MixedGraph,
    max_order: int,
    workers: int = DEFAULT_WORKERS,
    show_progress: bool = False,
) -> SweepResult:
    """Sweep ``source`` against every planar target of its signature up to ``max_order`` vertices."""
    targets = planar_targets(max_order, source.m, source.n)
    return TargetSweep(workers=workers, show_progress=show_progress).refute(source, targets)

