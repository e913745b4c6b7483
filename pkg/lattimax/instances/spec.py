"""Serializable description of an instance: objective family, its parameters, seed and constraint.

Oracles are rebuilt from the description whenever they are needed, so every harness cell gets its
own oracle and its own call counter.
"""

from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Mapping, Union

from lattimax.errors import DomainError
from lattimax.instances.families import (
    make_budget_allocation,
    make_lattice_non_dr,
    make_separable_concave,
    random_budget_allocation,
    random_lattice_table,
    random_separable_concave,
)
from lattimax.instances.fixtures import load_fixture
from lattimax.instances.polymatroids import make_polymatroid
from lattimax.lattice.oracle import ValueOracle
from lattimax.solver.cardinality import CardinalityConstraint
from lattimax.solver.knapsack import KnapsackInstance
from lattimax.solver.polymatroid.oracle import PolymatroidOracle

Constraint = Union[CardinalityConstraint, PolymatroidOracle, KnapsackInstance]

FAMILIES: Dict[str, Callable[[Mapping[str, Any], int], ValueOracle]] = {
    "separable_concave": lambda p, seed: make_separable_concave(p["coeffs"], p["powers"], p["cap"]),
    "budget_allocation": lambda p, seed: make_budget_allocation(
        [tuple(edge) for edge in p["edges"]], p["cap"], p.get("targets")
    ),
    "lattice_table": lambda p, seed: make_lattice_non_dr(p["table"]),
    "lattice_fixture": lambda p, seed: load_fixture(p["name"]),
    "random_separable_concave": lambda p, seed: random_separable_concave(p["n"], p["cap_max"], seed),
    "random_budget_allocation": lambda p, seed: random_budget_allocation(
        p["sources"], p["targets"], p["cap_max"], seed, p.get("density", 0.5)
    ),
    "random_lattice_table": lambda p, seed: random_lattice_table(p["shape"], seed),
}

CONSTRAINT_KINDS = ("cardinality", "polymatroid", "knapsack")

ALGORITHMS = {
    "dr_cardinality": "cardinality",
    "lattice_cardinality": "cardinality",
    "polymatroid": "polymatroid",
    "knapsack": "knapsack",
}


@dataclass(frozen=True)
class InstanceSpec:
    """Instance given by an objective family and a constraint

    Parameters
    ----------
    instance_id: str
        unique name, used in the reports
    family: str
        objective family, one of :data:`FAMILIES`
    params: Mapping[str, Any]
        family parameters
    seed: int
        seed of the random families, ignored by the others
    constraint: Mapping[str, Any]
        ``kind`` (``cardinality``, ``polymatroid`` or ``knapsack``) and its parameters:
        ``budget`` and optional ``cap`` for cardinality; ``family`` and the
        :func:`lattimax.instances.polymatroids.make_polymatroid` parameters for polymatroids;
        ``weights`` or ``raw_weights`` with ``budget`` and optional ``cap`` for knapsacks.
        A missing cap is the oracle box.

    Examples
    --------
    >>> spec = InstanceSpec("modular", "separable_concave", {"coeffs": [3, 1], "powers": [1, 1], "cap": [2, 2]},
    ...                     constraint={"kind": "knapsack", "weights": [0.5, 0.5]})
    >>> f, inst = spec.build()
    >>> inst.weights, inst.cap
    ((0.5, 0.5), LatticePoint([2, 2]))
    """

    instance_id: str
    family: str
    params: Mapping[str, Any]
    seed: int = 0
    constraint: Mapping[str, Any] = field(default_factory=dict)

    @property
    def constraint_kind(self) -> str:
        return self.constraint.get("kind", "cardinality")

    def build_oracle(self) -> ValueOracle:
        try:
            builder = FAMILIES[self.family]
        except KeyError:
            raise DomainError(f"unknown family {self.family!r}, expected one of {sorted(FAMILIES)}") from None
        try:
            return builder(self.params, self.seed)
        except KeyError as e:
            raise DomainError(f"family {self.family} needs parameter {e.args[0]!r}") from None

    def build_constraint(self, f: ValueOracle) -> Constraint:
        params = dict(self.constraint)
        kind = params.pop("kind", "cardinality")
        try:
            if kind == "cardinality":
                return CardinalityConstraint(params.get("cap", f.box), params["budget"])
            if kind == "polymatroid":
                family = params.pop("family")
                return make_polymatroid(family, **params)
            if kind == "knapsack":
                cap = params.get("cap", f.box)
                if "raw_weights" in params:
                    return KnapsackInstance.from_budget(params["raw_weights"], params["budget"], cap)
                return KnapsackInstance(params["weights"], cap)
        except KeyError as e:
            raise DomainError(f"{kind} constraint needs parameter {e.args[0]!r}") from None
        raise DomainError(f"unknown constraint kind {kind!r}, expected one of {list(CONSTRAINT_KINDS)}")

    def build(self):
        """Fresh oracle and its constraint"""
        f = self.build_oracle()
        return f, self.build_constraint(f)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "id": self.instance_id,
            "family": self.family,
            "params": dict(self.params),
            "seed": self.seed,
            "constraint": dict(self.constraint),
        }
