"""Group-regular 2-factorizations of cocktail party graphs.

The package builds three concrete groups of order 24 and 48 with exact
arithmetic, models Cayley graphs under the right-translation action, and
constructs 2-factorizations of K_v minus a 1-factor from orbits of base
cycles.  Nine solutions of HWP(v; 3, 4; r, s) are bundled and can be
re-verified from scratch; a backtracking searcher looks for new ones
with a prescribed orbit-type signature.
"""

from .cayley import (
    CayleyGraph,
    ConnectionSet,
    cayley_graph,
    cocktail_party_connection,
    cocktail_party_graph,
    complete_graph,
    connection_set,
    edge,
    full_connection,
    one_factor,
)
from .cycles import (
    Cycle,
    CycleError,
    CycleOrbit,
    DecompositionReport,
    PartitionReport,
    cycle,
    cycle_from_texts,
    cycle_orbit,
    cycle_stabilizer,
    forward_differences,
    omega_representatives,
    partial_differences,
    translate_cycle,
    verify_orbit_decomposition,
    verify_partition,
)
from .factors import (
    CERTIFICATE_FORMAT,
    Certificate,
    FactorRecipe,
    FactorReport,
    OmegaReport,
    RecipeError,
    RecipePart,
    TwoFactor,
    assemble_factor,
    factor_orbit,
    factor_stabilizer,
    hwp_feasibility,
    translate_factor,
    translation_permutes_factors,
    verify_factorization,
)
from .groups import (
    GROUP_IDS,
    ElementError,
    FiniteGroup,
    GroupError,
    Subgroup,
    build_group,
)
from .search import (
    SearchOutcome,
    SearchStats,
    SearchTarget,
    SignatureEntry,
    TargetFormatError,
    canonical_pruning_key,
    load_target_file,
    parse_target_dict,
    parse_target_text,
    search_hwp,
    target_from_solution,
)
from .solutions import (
    SOLUTION_IDS,
    SolutionFormatError,
    SolutionSpec,
    list_solutions,
    load_solution,
    load_solution_file,
    omega_reports,
    parse_solution_dict,
    parse_solution_text,
    resolve_subgroup,
    solution_recipes,
    verify_solution,
    verify_solution_by_id,
)

__version__ = "1.0.0"

__all__ = [
    "CERTIFICATE_FORMAT",
    "CayleyGraph",
    "Certificate",
    "ConnectionSet",
    "Cycle",
    "CycleError",
    "CycleOrbit",
    "DecompositionReport",
    "ElementError",
    "FactorRecipe",
    "FactorReport",
    "FiniteGroup",
    "GROUP_IDS",
    "GroupError",
    "OmegaReport",
    "PartitionReport",
    "RecipeError",
    "RecipePart",
    "SOLUTION_IDS",
    "SearchOutcome",
    "SearchStats",
    "SearchTarget",
    "SignatureEntry",
    "SolutionFormatError",
    "SolutionSpec",
    "Subgroup",
    "TargetFormatError",
    "TwoFactor",
    "assemble_factor",
    "build_group",
    "canonical_pruning_key",
    "cayley_graph",
    "cocktail_party_connection",
    "cocktail_party_graph",
    "complete_graph",
    "connection_set",
    "cycle",
    "cycle_from_texts",
    "cycle_orbit",
    "cycle_stabilizer",
    "edge",
    "factor_orbit",
    "factor_stabilizer",
    "forward_differences",
    "full_connection",
    "hwp_feasibility",
    "list_solutions",
    "load_solution",
    "load_solution_file",
    "load_target_file",
    "omega_reports",
    "omega_representatives",
    "one_factor",
    "parse_solution_dict",
    "parse_solution_text",
    "parse_target_dict",
    "parse_target_text",
    "partial_differences",
    "resolve_subgroup",
    "search_hwp",
    "solution_recipes",
    "target_from_solution",
    "translate_cycle",
    "translate_factor",
    "translation_permutes_factors",
    "verify_factorization",
    "verify_orbit_decomposition",
    "verify_partition",
    "verify_solution",
    "verify_solution_by_id",
]
