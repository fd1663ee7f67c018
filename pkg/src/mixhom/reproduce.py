"""Reproduction driver: graph references, the check manifest, and the check runner."""

import json
import logging
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Union

import pandas as pd
from tqdm import tqdm

from .constants import BUILTIN_TARGETS, DISCHARGE_K, MANIFEST_COLUMNS, MANIFEST_FILENAME, RED
from .constructions import (
    alternating_cycle,
    cactus_cycle,
    circuit,
    construction_spec,
    cycle_graph,
    generate,
    minimal_counterexample_subdivision,
    replication_gadget,
)
from .core import read_graph
from .forcing import (
    ORIENTED_MENU,
    TWO_EDGE_COLORED_MENU,
    apply_gadget,
    core_of,
    forcing_reachability,
    is_good_set,
    nonempty_subsets,
)
from .metrics import (
    check_discharging,
    color_class_connectivity,
    girth,
    is_bipartite,
    mad_exact,
    planar_bounds,
    universality_edge_bound,
)
from .models import BranchCase, EdgeStep, ForcingGadget, LinkPattern, MixedGraph
from .pathlab import path_profile, verify_branch_cases, verify_path_extension
from .solver import (
    count_homomorphisms,
    exists_walk,
    find_homomorphism,
    forced_colors,
    iter_homomorphisms,
)
from .sweep import complete_targets, mixed_chromatic_number, sweep_planar_targets
from .targets import (
    builtin_target,
    fact_sheet,
    isomorphic,
    reconstruct_candidates,
    verify_target_facts,
)

logger = logging.getLogger(__name__)


class ManifestError(ValueError):
    """Exception raised when the manifest cannot be read."""
    pass


def resolve_graph(reference: str) -> MixedGraph:
    """Turn a graph reference into a graph.

    Accepted forms: a builtin target name (t5, t6, t4_oriented, t4_2ec);
    ``gen:<name>`` or ``gen:<name>:<girth>`` for a construction;
    ``circuit:<k>``, ``alt_cycle:<k>``, ``red_cycle:<k>`` and
    ``cactus_cycle:<k>`` for the building blocks; anything else is read as
    an MG1 file path.
    """
    if reference in BUILTIN_TARGETS:
        return builtin_target(reference)
    kind, _, rest = reference.partition(":")
    if kind == "gen" and rest:
        name, _, girth_text = rest.partition(":")
        return generate(construction_spec(name, int(girth_text) if girth_text else None))
    blocks: Dict[str, Callable[[int], MixedGraph]] = {
        "circuit": circuit,
        "alt_cycle": alternating_cycle,
        "cactus_cycle": cactus_cycle,
        "red_cycle": lambda k: cycle_graph(LinkPattern.uniform(EdgeStep(RED), k), 0, 2),
    }
    if kind in blocks and rest.isdigit():
        return blocks[kind](int(rest))
    return read_graph(reference)


def _names(graph: MixedGraph, vertices) -> str:
    return "".join(graph.names(vertices))


def _constraints(
    graph: MixedGraph,
    target: MixedGraph,
    spec: Optional[Dict[str, str]],
    exclude: Optional[str] = None,
):
    """Per-vertex allowed colors; ``exclude`` removes colors from every vertex."""
    if not spec and not exclude:
        return None
    allowed = frozenset(target.vertices) - target.color_set(exclude or "")
    constraints = {v: allowed for v in graph.vertices} if exclude else {}
    for v, colors in (spec or {}).items():
        index = graph.vertex_index(v)
        constraints[index] = constraints.get(index, allowed) & target.color_set(colors)
    return constraints


# Operations: each takes the JSON arguments of a check and returns a JSON-comparable outcome


def _op_path_extension(target: str, internal: int) -> bool:
    return verify_path_extension(builtin_target(target), internal)


def _op_profile_min(target: str, max_length: int) -> List[int]:
    graph = builtin_target(target)
    return [path_profile(graph, length).min_allowed for length in range(max_length + 1)]


def _op_profile_sets(target: str, length: int) -> List[str]:
    graph = builtin_target(target)
    return [_names(graph, s) for s in path_profile(graph, length).maximal_forbidden_sets]


def _op_branch_cases(target: str, cases: List[List[int]]) -> bool:
    return verify_branch_cases(builtin_target(target), [BranchCase(tuple(c)) for c in cases])


def _op_has_homomorphism(
    source: str,
    target: str,
    constraints: Optional[Dict[str, str]] = None,
    exclude: Optional[str] = None,
) -> bool:
    g, t = resolve_graph(source), resolve_graph(target)
    return find_homomorphism(g, t, _constraints(g, t, constraints, exclude)) is not None


def _op_count_homomorphisms(
    source: str,
    target: str,
    constraints: Optional[Dict[str, str]] = None,
    exclude: Optional[str] = None,
) -> int:
    g, t = resolve_graph(source), resolve_graph(target)
    return count_homomorphisms(g, t, _constraints(g, t, constraints, exclude))


def _op_forced_colors(
    source: str, vertex: str, target: str, constraints: Optional[Dict[str, str]] = None
) -> str:
    g, t = resolve_graph(source), resolve_graph(target)
    return _names(t, forced_colors(g, g.vertex_index(vertex), t, _constraints(g, t, constraints)))


def _op_admitting_complete(source: str, order: int) -> int:
    g = resolve_graph(source)
    return sum(find_homomorphism(g, t) is not None for t in complete_targets(order, g.m, g.n))


def _op_chromatic_number(source: str, max_order: int) -> Optional[int]:
    return mixed_chromatic_number(resolve_graph(source), max_order)


def _op_planar_sweep(source: str, max_order: int) -> int:
    return len(sweep_planar_targets(resolve_graph(source), max_order).admitting)


def _op_graph_stats(source: str) -> Dict[str, Any]:
    g = resolve_graph(source)
    value = girth(g)
    return {
        "vertices": g.num_vertices,
        "girth": None if value == math.inf else value,
        "bipartite": is_bipartite(g),
    }


def _op_planar_bounds(source: str) -> bool:
    return planar_bounds(resolve_graph(source)).passed


def _op_walk_exists(target: str, pattern: str, start: str, end: str) -> bool:
    graph = builtin_target(target)
    return exists_walk(
        graph, LinkPattern.from_tokens(pattern), graph.vertex_index(start), graph.vertex_index(end)
    )


def _op_every_hom_uses(source: str, target: str, color: str) -> bool:
    g, t = resolve_graph(source), resolve_graph(target)
    wanted = t.vertex_index(color)
    return all(wanted in h.image() for h in iter_homomorphisms(g, t))


def _op_gadget(target: str, gadget: str, colors: str, girth_param: Optional[int] = None) -> str:
    graph = builtin_target(target)
    return _names(graph, apply_gadget(graph, ForcingGadget(gadget, girth_param), graph.color_set(colors)))


def _op_reachability(target: str, within: str, goal: str) -> bool:
    graph = builtin_target(target)
    menu = ORIENTED_MENU if graph.m else TWO_EDGE_COLORED_MENU
    starts = nonempty_subsets(sorted(graph.color_set(within)))
    return forcing_reachability(graph, starts, goal, menu, target).passed


def _op_good_set(target: str, colors: str) -> bool:
    graph = builtin_target(target)
    return is_good_set(graph, graph.color_set(colors))


def _op_is_core(source: str) -> bool:
    g = resolve_graph(source)
    return core_of(g).num_vertices == g.num_vertices


def _op_subdivision_avoids(target: str, source: str, link: List[int], exclude: str, avoided: str) -> bool:
    """Whether the designated vertex of the subdivided link never takes ``avoided`` while
    the first end of the link stays out of ``exclude``."""
    g, t = resolve_graph(source), builtin_target(target)
    subdivided, designated = minimal_counterexample_subdivision(g, tuple(link))
    allowed = frozenset(t.vertices) - t.color_set(exclude)
    forced = forced_colors(subdivided, designated, t, {link[0]: allowed})
    return t.vertex_index(avoided) not in forced


def _op_target_facts(target: str) -> bool:
    return verify_target_facts(target).passed


def _op_reconstruct(target: str) -> bool:
    graph = builtin_target(target)
    candidates = reconstruct_candidates(fact_sheet(target), (graph.num_vertices, graph.m, graph.n))
    return any(isomorphic(graph, c) for c in candidates)


def _op_edge_bound_grid(max_colors: int) -> bool:
    return all(
        universality_edge_bound(m, n, 3).impossible == (2 * m + n >= 3)
        for m in range(max_colors + 1)
        for n in range(max_colors + 1)
    )


def _op_edge_bound(m: int, n: int, k: int) -> List[Any]:
    bound = universality_edge_bound(m, n, k)
    return [bound.required, bound.planar_max, bound.impossible]


def _op_class_connectivity(target: str) -> bool:
    return color_class_connectivity(builtin_target(target)).passed


def _op_girth_exclusion(target: str) -> int:
    return 2 * DISCHARGE_K[target] + 6


def _op_discharging_bound(source: str, k: int) -> Optional[bool]:
    return check_discharging(resolve_graph(source), k).bound_holds


def _op_replication_girth(source: str, girth_param: int) -> bool:
    g = resolve_graph(source)
    return girth(replication_gadget(g, girth_param)) >= min(girth(g), girth_param)


def _op_mad(source: str) -> str:
    return str(mad_exact(resolve_graph(source)))


OPERATIONS: Dict[str, Callable[..., Any]] = {
    "path_extension": _op_path_extension,
    "profile_min": _op_profile_min,
    "profile_sets": _op_profile_sets,
    "branch_cases": _op_branch_cases,
    "has_homomorphism": _op_has_homomorphism,
    "count_homomorphisms": _op_count_homomorphisms,
    "forced_colors": _op_forced_colors,
    "admitting_complete": _op_admitting_complete,
    "chromatic_number": _op_chromatic_number,
    "planar_sweep": _op_planar_sweep,
    "graph_stats": _op_graph_stats,
    "planar_bounds": _op_planar_bounds,
    "walk_exists": _op_walk_exists,
    "every_hom_uses": _op_every_hom_uses,
    "gadget": _op_gadget,
    "reachability": _op_reachability,
    "good_set": _op_good_set,
    "is_core": _op_is_core,
    "subdivision_avoids": _op_subdivision_avoids,
    "target_facts": _op_target_facts,
    "reconstruct": _op_reconstruct,
    "edge_bound_grid": _op_edge_bound_grid,
    "edge_bound": _op_edge_bound,
    "class_connectivity": _op_class_connectivity,
    "girth_exclusion": _op_girth_exclusion,
    "discharging_bound": _op_discharging_bound,
    "replication_girth": _op_replication_girth,
    "mad": _op_mad,
}


@dataclass(frozen=True)
class ManifestCheck:
    """One reproducible claim.

    Attributes:
        check_id: Unique identifier
        operation: Key into OPERATIONS
        arguments: Keyword arguments of the operation
        expected: Expected outcome, compared with ==
        reference: Where the claim comes from
        slow: Whether the check is skipped unless slow checks are requested
    """
    check_id: str
    operation: str
    arguments: Dict[str, Any] = field(default_factory=dict, hash=False)
    expected: Any = field(default=None, hash=False)
    reference: str = ""
    slow: bool = False


def default_manifest_path() -> Path:
    return Path(__file__).parent / "data" / MANIFEST_FILENAME


def _parse_str_field(value) -> str:
    if pd.isna(value):
        return ""
    return str(value).strip()


def _parse_bool_field(value) -> bool:
    if pd.isna(value):
        return False
    return str(value).strip().lower() in ("1", "yes", "true")


def _parse_json_field(value, check_id: str, column: str):
    text = _parse_str_field(value)
    if not text:
        return None
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ManifestError(f"Check {check_id}: invalid JSON in {column}: {e}")


def load_manifest(path: Optional[Union[str, Path]] = None) -> List[ManifestCheck]:
    """Read the check manifest.

    Args:
        path: CSV file; defaults to the packaged manifest

    Raises:
        ManifestError: If a row names an unknown operation, repeats an ID or holds invalid JSON
    """
    path = Path(path) if path is not None else default_manifest_path()
    df = pd.read_csv(path, dtype=str, keep_default_na=False)
    missing = [c for c in MANIFEST_COLUMNS.values() if c not in df.columns]
    if missing:
        raise ManifestError(f"Manifest {path} lacks columns: {', '.join(missing)}")

    checks = []
    seen = set()
    for _, row in df.iterrows():
        check_id = _parse_str_field(row.get(MANIFEST_COLUMNS["check_id"]))
        if not check_id:
            continue
        if check_id in seen:
            raise ManifestError(f"Duplicate check ID {check_id!r}")
        seen.add(check_id)
        operation = _parse_str_field(row.get(MANIFEST_COLUMNS["operation"]))
        if operation not in OPERATIONS:
            raise ManifestError(f"Check {check_id}: unknown operation {operation!r}")
        checks.append(
            ManifestCheck(
                check_id=check_id,
                operation=operation,
                arguments=_parse_json_field(row.get(MANIFEST_COLUMNS["arguments"]), check_id, "arguments") or {},
                expected=_parse_json_field(row.get(MANIFEST_COLUMNS["expected"]), check_id, "expected"),
                reference=_parse_str_field(row.get(MANIFEST_COLUMNS["reference"])),
                slow=_parse_bool_field(row.get(MANIFEST_COLUMNS["slow"])),
            )
        )
    logger.debug("Loaded %d checks from %s", len(checks), path)
    return checks


@dataclass
class CheckOutcome:
    check_id: str
    reference: str
    expected: Any
    outcome: Any = None
    passed: bool = False
    skipped: bool = False
    error: str = ""
    elapsed: float = 0.0


@dataclass
class ReproductionReport:
    """Outcomes of a manifest run, in manifest order."""
    outcomes: List[CheckOutcome] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(o.passed for o in self.outcomes if not o.skipped)

    def failures(self) -> List[CheckOutcome]:
        return [o for o in self.outcomes if not o.skipped and not o.passed]

    def to_frame(self) -> pd.DataFrame:
        rows = []
        for o in self.outcomes:
            status = "skipped" if o.skipped else ("pass" if o.passed else "FAIL")
            rows.append(
                {
                    "check": o.check_id,
                    "status": status,
                    "expected": json.dumps(o.expected),
                    "outcome": o.error or json.dumps(o.outcome),
                    "seconds": round(o.elapsed, 2),
                    "reference": o.reference,
                }
            )
        return pd.DataFrame(rows)


def _normalize(value: Any) -> Any:
    if isinstance(value, tuple):
        return [_normalize(v) for v in value]
    if isinstance(value, Fraction):
        return str(value)
    return value


def run_check(check: ManifestCheck) -> CheckOutcome:
    """Run one check; an exception counts as a failure and is recorded."""
    result = CheckOutcome(check.check_id, check.reference, check.expected)
    started = time.perf_counter()
    try:
        result.outcome = _normalize(OPERATIONS[check.operation](**check.arguments))
        result.passed = result.outcome == check.expected
    except Exception as e:  # noqa: BLE001
        result.error = f"{type(e).__name__}: {e}"
        logger.error("Check %s raised %s", check.check_id, result.error)
    result.elapsed = time.perf_counter() - started
    logger.info(
        "Check %s: %s (%.2fs)", check.check_id, "pass" if result.passed else "FAIL", result.elapsed
    )
    return result


def run_checks(
    checks: List[ManifestCheck], include_slow: bool = False, show_progress: bool = False
) -> ReproductionReport:
    """Run checks in manifest order; slow checks are skipped unless ``include_slow``."""
    report = ReproductionReport()
    for check in tqdm(checks, desc="Checks", unit="check", disable=not show_progress):
        if check.slow and not include_slow:
            report.outcomes.append(
                CheckOutcome(check.check_id, check.reference, check.expected, skipped=True)
            )
            continue
        report.outcomes.append(run_check(check))
    return report
