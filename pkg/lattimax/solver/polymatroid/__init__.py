from lattimax.solver.polymatroid.oracle import (
    PolymatroidOracle,
    FunctionPolymatroid,
    k_max_in_polymatroid,
    translated_rank,
    check_rank_axioms,
)
from lattimax.solver.polymatroid.extension import (
    extension_exact,
    extension_estimate,
    extension_marginal_estimate,
    extension_gradient,
)
from lattimax.solver.polymatroid.direction import (
    EstimatorParams,
    DirectionConfig,
    binary_search_polymatroid,
    direction_polymatroid,
    continuous_greedy,
)
from lattimax.solver.polymatroid.rounding import RoundingState, round_polymatroid, maximize_polymatroid
