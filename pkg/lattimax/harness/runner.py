"""Runs the cells of a harness configuration.

Every cell builds its own oracle from the instance description, so ``oracle_calls`` is the counter
of that oracle only. Optima and ``tau`` are computed once per instance on separate oracles.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
import logging
import time
from typing import Dict, List, Optional, Sequence

from lattimax.bruteforce import ExactResult, brute_force_opt, certify_ratio
from lattimax.errors import CapacityError, LattimaxError
from lattimax.harness.config import AssertionSpec, Cell, HarnessConfig
from lattimax.instances.spec import InstanceSpec
from lattimax.lattice.properties import tau
from lattimax.result import SolverReport
from lattimax.solver.cardinality import maximize_dr_cardinality, maximize_lattice_cardinality
from lattimax.solver.config import SolverConfig
from lattimax.solver.knapsack import maximize_knapsack
from lattimax.solver.polymatroid.rounding import maximize_polymatroid

log = logging.getLogger(__name__)

PASSED = "passed"
FAILED = "failed"
SKIPPED = "skipped"


@dataclass(frozen=True)
class CellResult:
    cell: Cell
    report: Optional[SolverReport] = None
    error: Optional[str] = None


@dataclass(frozen=True)
class InstanceFacts:
    """What is known about an instance independently of the solvers"""

    exact: Optional[ExactResult] = None
    exact_error: Optional[str] = None
    tau: Optional[float] = None


@dataclass(frozen=True)
class AssertionOutcome:
    assertion: AssertionSpec
    status: str
    cells: int
    worst_ratio: Optional[float] = None


@dataclass(frozen=True)
class RunResult:
    cells: List[CellResult]
    facts: Dict[str, InstanceFacts]
    assertions: List[AssertionOutcome]

    @property
    def passed(self) -> bool:
        return all(outcome.status != FAILED for outcome in self.assertions)


def run(
    config: HarnessConfig,
    algorithms: Optional[Sequence[str]] = None,
    seed: Optional[int] = None,
    bruteforce: bool = True,
    workers: int = 1,
    timing: bool = False,
) -> RunResult:
    """Runs every cell of ``config``, results are in config order whatever ``workers`` is

    Parameters
    ----------
    algorithms: Optional[Sequence[str]]
        run only the cells of these algorithms
    seed: Optional[int]
        replaces the seeds of every experiment
    bruteforce: bool
        compute the exact optimum of every instance, assertions are skipped without it
    workers: int
        size of the cell worker pool
    timing: bool
        keep the wall time in the reports, otherwise it is 0 so reports are reproducible
    """
    cells = list(config.cells(algorithms, seed))
    used = list(dict.fromkeys(cell.instance.instance_id for cell in cells))
    facts = {instance_id: _facts(config.instance(instance_id), bruteforce) for instance_id in used}

    def execute(cell: Cell) -> CellResult:
        return _run_cell(cell, facts[cell.instance.instance_id], timing)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            results = list(executor.map(execute, cells))
    else:
        results = [execute(cell) for cell in cells]
    outcomes = [_check_assertion(assertion, results, facts) for assertion in config.assertions]
    return RunResult(results, facts, outcomes)


def solve(cell: Cell, f, constraint) -> SolverReport:
    """Runs the algorithm of a cell on an already built instance"""
    cfg = SolverConfig(cell.epsilon, cell.seed)
    if cell.algorithm in ("dr_cardinality", "lattice_cardinality"):
        maximize = maximize_dr_cardinality if cell.algorithm == "dr_cardinality" else maximize_lattice_cardinality
        start_calls = f.call_count
        started = time.perf_counter()
        solution, trace = maximize(f, constraint, cfg)
        calls = f.call_count - start_calls
        wall_time_ms = round((time.perf_counter() - started) * 1000)
        return SolverReport(
            algorithm=cell.algorithm,
            epsilon=cfg.effective_epsilon,
            seed=cell.seed,
            solution=solution,
            value=f.eval(solution),
            oracle_calls=calls,
            wall_time_ms=wall_time_ms,
            trace=trace,
        )
    if cell.algorithm == "polymatroid":
        return maximize_polymatroid(f, constraint, cfg, repeats=cell.repeats)[1]
    if cell.algorithm == "knapsack":
        return maximize_knapsack(f, constraint, cfg)[1]
    raise LattimaxError(f"unknown algorithm {cell.algorithm!r}")


def _run_cell(cell: Cell, facts: InstanceFacts, timing: bool) -> CellResult:
    instance_id = cell.instance.instance_id
    log.info("cell %d: %s on %s, epsilon %s, seed %d", cell.index, cell.algorithm, instance_id, cell.epsilon, cell.seed)
    try:
        f, constraint = cell.instance.build()
        report = solve(cell, f, constraint)
    except LattimaxError as e:
        log.warning("cell %d (%s on %s) failed: %s", cell.index, cell.algorithm, instance_id, e)
        return CellResult(cell, error=f"{type(e).__name__}: {e}")
    # re-verified after the calls were counted
    report = replace(report, value=f.eval(report.solution), instance_id=instance_id)
    if facts.exact is not None:
        report = report.with_optimum(facts.exact.opt_value)
    if not timing:
        report = report.without_timing()
    return CellResult(cell, report)


def _facts(spec: InstanceSpec, bruteforce: bool) -> InstanceFacts:
    exact, exact_error, tau_value = None, None, None
    if bruteforce:
        try:
            f, constraint = spec.build()
            exact = brute_force_opt(f, constraint)
        except CapacityError as e:
            exact_error = str(e)
            log.warning("no optimum for %s: %s", spec.instance_id, e)
    try:
        tau_value = tau(spec.build_oracle())
    except CapacityError:
        log.debug("box of %s is too large to compute tau", spec.instance_id)
    return InstanceFacts(exact, exact_error, tau_value)


def _check_assertion(
    assertion: AssertionSpec, results: Sequence[CellResult], facts: Dict[str, InstanceFacts]
) -> AssertionOutcome:
    statuses = []
    ratios = []
    for result in results:
        if not assertion.matches(result.cell):
            continue
        exact = facts[result.cell.instance.instance_id].exact
        if result.report is None:
            statuses.append(FAILED)
        elif exact is None:
            statuses.append(SKIPPED)
        else:
            ok = certify_ratio(result.report.value, exact, assertion.min_ratio)
            statuses.append(PASSED if ok else FAILED)
            if result.report.ratio is not None:
                ratios.append(result.report.ratio)
    if FAILED in statuses:
        status = FAILED
    elif PASSED in statuses:
        status = PASSED
    else:
        status = SKIPPED
    worst = min(ratios) if ratios else None
    log.info("assertion %s: %s over %d cells", assertion, status, len(statuses))
    return AssertionOutcome(assertion, status, len(statuses), worst)
