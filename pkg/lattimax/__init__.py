from lattimax.errors import (
    LattimaxError,
    DomainError,
    PreconditionError,
    CapacityError,
    ConfigError,
    ConstructionError,
)
from lattimax.lattice import (
    LatticePoint,
    FractionalPoint,
    ValueOracle,
    FunctionOracle,
    TableOracle,
    ConditionedOracle,
    marginal,
    join_meet,
    multiset_diff,
    check_property,
    exhaustive_check,
    tau,
)
from lattimax.solver import (
    SolverConfig,
    CardinalityConstraint,
    maximize_dr_cardinality,
    maximize_lattice_cardinality,
    PolymatroidOracle,
    continuous_greedy,
    round_polymatroid,
    maximize_polymatroid,
    KnapsackInstance,
    maximize_knapsack,
)
from lattimax.instances import (
    make_separable_concave,
    make_budget_allocation,
    make_lattice_non_dr,
    make_polymatroid,
    InstanceSpec,
)
from lattimax.bruteforce import ExactResult, brute_force_opt, certify_ratio
from lattimax.result import SolverReport
