"""Greedy matchings on weighted graphs: exact and polynomial solvers, randomized
greedy algorithms with exact expectation oracles, and CNF gadget reductions."""

from .bush import (
    Bush,
    BushDecompositionResult,
    BushGraph,
    bush_decompose,
    rgma,
    rgma_expected_weight_exact,
    validate_bush,
)
from .certificates import assignment_to_matching, matching_to_assignment
from .cnf import CnfFormula, NormalizedFormula, brute_force_max_sat, normalize, parse_dimacs, satisfied_clauses
from .errors import (
    BoundViolationError,
    BudgetExceededError,
    GreedyMatchingError,
    InputError,
    LimitExceededError,
    NotABushGraphError,
    ParseError,
    PreconditionError,
)
from .exact import (
    Decision,
    SolveResult,
    count_greedy_matchings,
    decide_greedy_edge,
    decide_greedy_vertex,
    max_cardinality_matching,
    max_weight_matching,
    solve_exact,
)
from .graph import (
    WeightedGraph,
    check_matching,
    graph_params,
    is_bipartite,
    is_maximal_matching,
    lambda0,
    matching_weight,
    mu,
    unit_graph,
    weight_classes,
)
from .greedy import (
    LexTieBreak,
    PriorityTieBreak,
    RandomTieBreak,
    enumerate_greedy_matchings,
    is_greedy,
    run_greedy,
)
from .harness import ExperimentConfig, RatioEstimate, estimate_ratio, parse_config, report
from .io import format_graph, parse_graph, read_graph, write_graph
from .mrg import compare_rgma_mrg, mrg, mrg_expected_cardinality_exact
from .poly import solve_lambda0_ge2
from .reductions import (
    ReductionOutput,
    build_bipartite_reduction,
    build_greedy_edge_reduction,
    build_main_reduction,
    build_mu2_reduction,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
