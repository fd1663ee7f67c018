"""mixhom - homomorphisms of colored-mixed graphs.

Example:
    >>> from mixhom import builtin_target, find_homomorphism, generate, construction_spec
    >>> cactus = generate(construction_spec("cactus", 3))
    >>> t5 = builtin_target("t5")
    >>> find_homomorphism(cactus, t5) is not None
    True
"""

from .constructions import ConstructionError, construction_spec, generate
from .core import GraphFormatError, GraphValidationError, GraphBuilder, parse_graph, read_graph, serialize_graph, write_graph
from .forcing import apply_gadget, core_of, forcing_reachability, is_good_set
from .metrics import check_discharging, girth, mad_exact, planar_bounds, universality_edge_bound
from .models import ArcStep, EdgeStep, Homomorphism, LinkPattern, MixedGraph
from .pathlab import path_profile, profile_table, verify_branch_cases, verify_path_extension
from .reproduce import ManifestError, load_manifest, resolve_graph, run_checks
from .solver import (
    HomSolver,
    SearchLimitExceeded,
    SignatureMismatchError,
    count_homomorphisms,
    find_homomorphism,
    forced_colors,
)
from .sweep import TargetSweep, mixed_chromatic_number, sweep_planar_targets
from .targets import UnknownTargetError, builtin_target, isomorphic, verify_target_facts

__version__ = "0.1.0"
__all__ = [
    "MixedGraph",
    "ArcStep",
    "EdgeStep",
    "LinkPattern",
    "Homomorphism",
    "GraphBuilder",
    "GraphFormatError",
    "GraphValidationError",
    "parse_graph",
    "serialize_graph",
    "read_graph",
    "write_graph",
    "HomSolver",
    "SearchLimitExceeded",
    "SignatureMismatchError",
    "find_homomorphism",
    "count_homomorphisms",
    "forced_colors",
    "builtin_target",
    "isomorphic",
    "verify_target_facts",
    "UnknownTargetError",
    "path_profile",
    "profile_table",
    "verify_path_extension",
    "verify_branch_cases",
    "girth",
    "mad_exact",
    "check_discharging",
    "planar_bounds",
    "universality_edge_bound",
    "ConstructionError",
    "construction_spec",
    "generate",
    "apply_gadget",
    "core_of",
    "is_good_set",
    "forcing_reachability",
    "TargetSweep",
    "mixed_chromatic_number",
    "sweep_planar_targets",
    "ManifestError",
    "load_manifest",
    "resolve_graph",
    "run_checks",
]
