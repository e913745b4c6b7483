from lattimax.instances.families import (
    SeparableConcaveOracle,
    BudgetAllocationOracle,
    LatticeTableOracle,
    make_separable_concave,
    make_budget_allocation,
    make_lattice_non_dr,
    search_lattice_table,
    random_separable_concave,
    random_budget_allocation,
    random_lattice_table,
    random_knapsack,
)
from lattimax.instances.polymatroids import (
    UniformPolymatroid,
    PartitionPolymatroid,
    RankTablePolymatroid,
    make_polymatroid,
)
from lattimax.instances.fixtures import load_fixture
from lattimax.instances.spec import InstanceSpec, FAMILIES, ALGORITHMS
