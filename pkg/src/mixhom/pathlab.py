"""Path extension checks: allowed sets at path ends, forbidden-set profiles, branch cases."""

import itertools
import logging
from typing import FrozenSet, Iterable, Iterator, List, Optional, Sequence, Set, Tuple

import pandas as pd

from .constants import PATTERN_KINDS
from .core import members
from .models import (
    BranchCase,
    ColorSet,
    LinkPattern,
    MixedGraph,
    PathProfile,
    ProfileRow,
)
from .solver import SignatureMismatchError, step_image, transfer_sequence

logger = logging.getLogger(__name__)


def _steps_for(target: MixedGraph, kind: Optional[str]):
    if kind is not None:
        if kind not in PATTERN_KINDS:
            raise ValueError(f"Unknown pattern kind {kind!r}, expected one of {sorted(PATTERN_KINDS)}")
        if PATTERN_KINDS[kind] != target.signature:
            raise SignatureMismatchError(
                f"Kind {kind!r} needs signature {PATTERN_KINDS[kind]}, target has {target.signature}"
            )
    return target.steps()


def iter_patterns(target: MixedGraph, links: int, kind: Optional[str] = None) -> Iterator[LinkPattern]:
    """Every pattern of ``links`` steps over the target's step types."""
    steps = _steps_for(target, kind)
    for combo in itertools.product(steps, repeat=links):
        yield LinkPattern(combo)


def path_allowed_set(target: MixedGraph, pattern: LinkPattern, start_color: int) -> ColorSet:
    """Colors the far end of a path shaped by ``pattern`` can take when the near end has ``start_color``."""
    return transfer_sequence(target, pattern, [start_color])[-1]


def allowed_relation(target: MixedGraph, pattern: LinkPattern) -> FrozenSet[Tuple[int, int]]:
    """Pairs (start, end) of colors the two ends of the path can take together."""
    return frozenset(
        (x, y) for x in target.vertices for y in path_allowed_set(target, pattern, x)
    )


def _allowed_masks(target: MixedGraph, links: int, kind: Optional[str]) -> Set[int]:
    """Distinct allowed-set masks over every start color and pattern of ``links`` steps.

    Patterns are expanded step by step so shared prefixes are computed once.
    """
    steps = _steps_for(target, kind)
    frontier = {1 << x for x in target.vertices}
    for _ in range(links):
        frontier = {step_image(target, step, mask) for mask in frontier for step in steps}
    return frontier


def path_profile(target: MixedGraph, length: int, kind: Optional[str] = None) -> ProfileRow:
    """Profile of paths with ``length`` internal vertices (``length`` + 1 links).

    Args:
        target: Target graph
        length: Number of internal vertices
        kind: "oriented" or "2ec"; inferred from the target when omitted

    Returns:
        The smallest allowed-set size and every forbidden set of the largest size
    """
    if length < 0:
        raise ValueError("Path length must be non-negative")
    full = (1 << target.num_vertices) - 1
    allowed = _allowed_masks(target, length + 1, kind)
    min_allowed = min(bin(mask).count("1") for mask in allowed)
    forbidden = sorted(
        (frozenset(members(full & ~mask)) for mask in allowed if bin(mask).count("1") == min_allowed),
        key=lambda s: sorted(s),
    )
    return ProfileRow(
        length=length,
        min_allowed=min_allowed,
        max_forbidden_size=target.num_vertices - min_allowed,
        maximal_forbidden_sets=tuple(forbidden),
    )


def profile_table(
    target: MixedGraph, max_length: int, kind: Optional[str] = None, target_name: str = ""
) -> PathProfile:
    """Profiles for every internal length 0..max_length."""
    return PathProfile(
        target_name=target_name,
        rows=[path_profile(target, length, kind) for length in range(max_length + 1)],
    )


def profile_frame(target: MixedGraph, profile: PathProfile) -> pd.DataFrame:
    """Tabular form of a profile, forbidden sets written with vertex names."""
    return pd.DataFrame(
        [
            {
                "l": row.length,
                "min_allowed": row.min_allowed,
                "max_forbidden_size": row.max_forbidden_size,
                "forbidden_sets": " ".join(
                    "{" + ",".join(target.names(s)) + "}" for s in row.maximal_forbidden_sets
                ),
            }
            for row in profile.rows
        ]
    )


def verify_path_extension(target: MixedGraph, internal: int, kind: Optional[str] = None) -> bool:
    """Whether every precoloring of the two ends of a path extends to its internal vertices.

    The path has ``internal`` internal vertices and every pattern of
    ``internal`` + 1 links is tried from every start color.
    """
    if internal < 0:
        raise ValueError("Number of internal vertices must be non-negative")
    full = (1 << target.num_vertices) - 1
    allowed = _allowed_masks(target, internal + 1, kind)
    extendable = all(mask == full for mask in allowed)
    logger.info(
        "Path extension with %d internal vertices: %s", internal, "holds" if extendable else "fails"
    )
    return extendable


def _minimal(masks: Iterable[int]) -> List[int]:
    """Masks with no proper subset in the family."""
    ordered = sorted(set(masks), key=lambda m: (bin(m).count("1"), m))
    kept: List[int] = []
    for mask in ordered:
        if not any(k & mask == k for k in kept):
            kept.append(mask)
    return kept


def find_blocking_triple(
    target: MixedGraph, case: BranchCase, kind: Optional[str] = None
) -> Optional[Tuple[ColorSet, ColorSet, ColorSet]]:
    """Three branch allowed sets with an empty common intersection, if any exist.

    Each branch i runs from an outer vertex through l_i internal 2-vertices
    to the center; the outer colors and the branch patterns are chosen
    independently.
    """
    families = [_minimal(_allowed_masks(target, length + 1, kind)) for length in case.lengths]
    for first in families[0]:
        for second in families[1]:
            both = first & second
            for third in families[2]:
                if not both & third:
                    return tuple(frozenset(members(m)) for m in (first, second, third))
    return None


def verify_branch_cases(
    target: MixedGraph, cases: Sequence[BranchCase], kind: Optional[str] = None
) -> bool:
    """Whether the center of every branch case always keeps a color."""
    if not cases:
        raise ValueError("At least one branch case is needed")
    for case in cases:
        blocking = find_blocking_triple(target, case, kind)
        if blocking is not None:
            logger.info(
                "Branch case %s blocked by %s",
                case.lengths,
                [target.names(s) for s in blocking],
            )
            return False
    return True
