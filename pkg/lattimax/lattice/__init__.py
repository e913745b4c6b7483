from lattimax.lattice.types import GroundSet, LatticePoint, FractionalPoint, scaled
from lattimax.lattice.oracle import ValueOracle, FunctionOracle, TableOracle, ConditionedOracle, marginal
from lattimax.lattice.operations import join_meet, multiset_diff, unit, box_points, box_size
from lattimax.lattice.properties import (
    Property,
    PropertyReport,
    Violation,
    check_property,
    exhaustive_check,
    tabulate,
    tau,
)
