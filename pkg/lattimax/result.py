from dataclasses import dataclass, field, replace
from functools import singledispatch
from typing import TYPE_CHECKING, Any, Optional, Tuple

from lattimax.lattice.types import LatticePoint

if TYPE_CHECKING:
    from lattimax.solver.config import GreedyTrace

CSV_COLUMNS = (
    "instance_id",
    "algorithm",
    "epsilon",
    "seed",
    "value",
    "opt_value",
    "ratio",
    "oracle_calls",
    "wall_time_ms",
    "solution",
)


@dataclass(frozen=True)
class SolverReport:
    """Outcome of one solver run

    Warnings
    --------
    Solvers and the harness create reports, there should be no need for user to create them,
    but they can be used as base class for extensions.

    Parameters
    ----------
    algorithm: str
        ``dr_cardinality``, ``lattice_cardinality``, ``polymatroid`` or ``knapsack``
    epsilon: float
        effective accuracy parameter the solver ran with
    seed: int
        seed of the run
    solution: LatticePoint
        returned feasible point
    value: float
        ``f(solution)``
    oracle_calls: int
        oracle evaluations made by the solver
    wall_time_ms: int
        elapsed time, the harness writes 0 unless timing is requested
    instance_id: str
        filled by the harness
    opt_value: Optional[float]
        exact optimum, if known
    trace: Optional[GreedyTrace]
        greedy trace of the run, never serialized

    Examples
    --------
    >>> report = SolverReport("knapsack", 0.1, 0, LatticePoint([2, 0]), 6.0, oracle_calls=17)
    >>> report.ratio is None, report.with_optimum(8.0).ratio
    (True, 0.75)
    >>> report.with_optimum(8.0).row()[2:]
    ('0.1', '0', '6.0', '8.0', '0.75', '17', '0', '2;0')
    """

    algorithm: str
    epsilon: float
    seed: int
    solution: LatticePoint
    value: float
    oracle_calls: int
    wall_time_ms: int = 0
    instance_id: str = ""
    opt_value: Optional[float] = None
    trace: Optional["GreedyTrace"] = field(default=None, compare=False, repr=False)

    @property
    def ratio(self) -> Optional[float]:
        """``value / opt_value``, present only when the optimum is known and positive"""
        if self.opt_value is None or self.opt_value <= 0:
            return None
        return self.value / self.opt_value

    def with_optimum(self, opt_value: Optional[float]) -> "SolverReport":
        return replace(self, opt_value=opt_value)

    def with_instance(self, instance_id: str) -> "SolverReport":
        return replace(self, instance_id=instance_id)

    def without_timing(self) -> "SolverReport":
        return replace(self, wall_time_ms=0)

    def row(self) -> Tuple[str, ...]:
        """Report as CSV fields in the order of :data:`CSV_COLUMNS`"""
        return tuple(convert_report_value(getattr(self, name)) for name in CSV_COLUMNS)

    def __str__(self):
        return f"{self.algorithm}: {self.solution} with value {self.value}"


@singledispatch
def convert_report_value(value: Any) -> str:
    return str(value)


@convert_report_value.register
def _(value: float) -> str:
    return repr(0.0 if value == 0 else float(value))


@convert_report_value.register
def _(value: bool) -> str:
    return "true" if value else "false"


@convert_report_value.register(type(None))
def _(value) -> str:
    return ""


@convert_report_value.register
def _(value: LatticePoint) -> str:
    return ";".join(str(v) for v in value)
