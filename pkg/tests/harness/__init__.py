CONFIG = """
instances:
  - id: modular
    family: separable_concave
    params: {coeffs: [3, 1], powers: [1, 1], cap: [2, 2]}
    constraint: {budget: 2}
  - id: pantry
    family: separable_concave
    params: {coeffs: [3, 1], powers: [1, 1], cap: [2, 2]}
    constraint: {kind: knapsack, weights: [0.5, 0.5]}

experiments:
  - instances: [modular]
    algorithms: [dr_cardinality, lattice_cardinality]
    epsilons: [0.1, 0.2]
    seeds: [0, 1]
  - instances: [pantry]
    algorithms: [knapsack]
    epsilons: [0.1]

assertions:
  - min_ratio: 0.5
"""
