"""Graph matching by reduction to maximum weight clique search."""

from .association import (
    AssociationGraph,
    CompatibilityFunction,
    build_association,
    clique_to_morphism,
    morphism_to_clique,
    objective,
    round_trip_check,
)
from .errors import CapacityError, CliqueMatchError, ContractViolation, FormatError, InputError
from .graph import (
    DUMMY,
    NULL_COLOR,
    VOID,
    AttributedGraph,
    Item,
    ItemType,
    complete_graph,
    dummy_extension,
    empty_graph,
    induced_subgraph,
    item_type,
    null_extension,
    path_graph,
    relabel,
)
from .morphism import (
    ItemPairRelation,
    MorphismClass,
    PartialMorphism,
    enumerate_p_morphisms,
    gamma,
    generated_relation,
    is_p_morphism,
    standard_property,
    verify_closure,
)
from .mwcp import (
    CliqueInstance,
    CliqueSolution,
    Mode,
    SolveConfig,
    Status,
    clique_weight,
    enumerate_cliques,
    enumerate_maximal,
    solve,
    solve_exact,
    solve_heuristic,
)
from .problems import (
    EditCostModel,
    ExactWeights,
    MatchingProblem,
    best_common_subgraph_problem,
    edit_cost,
    edit_distance,
    edit_distance_problem,
    exact_kappa,
    mcisp_kappa,
    probabilistic_problem,
    table1_problem,
)

__version__ = "0.1.0"

__all__ = [
    "CapacityError",
    "CliqueMatchError",
    "ContractViolation",
    "FormatError",
    "InputError",
    "AssociationGraph",
    "CompatibilityFunction",
    "build_association",
    "clique_to_morphism",
    "morphism_to_clique",
    "objective",
    "round_trip_check",
    "DUMMY",
    "NULL_COLOR",
    "VOID",
    "AttributedGraph",
    "Item",
    "ItemType",
    "complete_graph",
    "dummy_extension",
    "empty_graph",
    "induced_subgraph",
    "item_type",
    "null_extension",
    "path_graph",
    "relabel",
    "ItemPairRelation",
    "MorphismClass",
    "PartialMorphism",
    "enumerate_p_morphisms",
    "gamma",
    "generated_relation",
    "is_p_morphism",
    "standard_property",
    "verify_closure",
    "CliqueInstance",
    "CliqueSolution",
    "Mode",
    "SolveConfig",
    "Status",
    "clique_weight",
    "enumerate_cliques",
    "enumerate_maximal",
    "solve",
    "solve_exact",
    "solve_heuristic",
    "EditCostModel",
    "ExactWeights",
    "MatchingProblem",
    "best_common_subgraph_problem",
    "edit_cost",
    "edit_distance",
    "edit_distance_problem",
    "exact_kappa",
    "mcisp_kappa",
    "probabilistic_problem",
    "table1_problem",
]
