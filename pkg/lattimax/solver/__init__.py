from lattimax.solver.config import SolverConfig, GreedyTrace, TraceStep, thresholds
from lattimax.solver.cardinality import (
    CardinalityConstraint,
    max_step_dr,
    maximize_dr_cardinality,
    binary_search_lattice,
    maximize_lattice_cardinality,
)
from lattimax.solver.knapsack import (
    KnapsackInstance,
    InitialSolutionSet,
    greedy_knapsack,
    increase_support,
    partial_enumeration,
    maximize_knapsack,
)
from lattimax.solver.polymatroid import (
    PolymatroidOracle,
    FunctionPolymatroid,
    translated_rank,
    extension_exact,
    extension_estimate,
    extension_marginal_estimate,
    extension_gradient,
    EstimatorParams,
    DirectionConfig,
    binary_search_polymatroid,
    direction_polymatroid,
    continuous_greedy,
    round_polymatroid,
    maximize_polymatroid,
)
