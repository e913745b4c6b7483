"""Command line entry point of the experiment harness.

Exit codes: 0 when every ratio assertion passed or was skipped, 1 when some assertion failed,
2 when the configuration is invalid.
"""

import argparse
import logging
import sys
from typing import List, Optional

from lattimax.errors import ConfigError
from lattimax.harness.config import load_config
from lattimax.harness.report import write_reports
from lattimax.harness.runner import run
from lattimax.instances.spec import ALGORITHMS

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ASSERTION_FAILED = 1
EXIT_CONFIG_ERROR = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lattimax", description="Run lattice submodular maximization experiments and compare with brute force."
    )
    parser.add_argument("--config", required=True, help="harness configuration, a YAML file")
    parser.add_argument("--out", default=".", help="directory for report.csv and summary.yaml")
    parser.add_argument("--seed", type=int, default=None, help="use this seed for every cell")
    parser.add_argument(
        "--algo", default=None, help=f"comma separated algorithms to run, some of {', '.join(ALGORITHMS)}"
    )
    parser.add_argument("--no-bruteforce", action="store_true", help="don't compute optima, ratio assertions are skipped")
    parser.add_argument("--workers", type=int, default=1, help="number of cells run in parallel")
    parser.add_argument("--timing", action="store_true", help="record wall time, reports are no longer reproducible")
    parser.add_argument("--verbose", action="store_true", help="log solver progress")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        algorithms = _algorithms(args.algo)
        if args.workers < 1:
            raise ConfigError(f"workers should be positive, but it is {args.workers}", path="--workers")
        config = load_config(args.config)
    except ConfigError as e:
        log.error("%s", e)
        return EXIT_CONFIG_ERROR
    result = run(
        config,
        algorithms=algorithms,
        seed=args.seed,
        bruteforce=not args.no_bruteforce,
        workers=args.workers,
        timing=args.timing,
    )
    csv_path, summary_path = write_reports(result, args.out)
    print(f"{len(result.cells)} cells, report {csv_path}, summary {summary_path}")
    for outcome in result.assertions:
        if outcome.status == "failed":
            log.error("assertion failed: %s", outcome.assertion)
    return EXIT_OK if result.passed else EXIT_ASSERTION_FAILED


def _algorithms(value: Optional[str]) -> Optional[List[str]]:
    if value is None:
        return None
    names = [name.strip() for name in value.split(",") if name.strip()]
    for name in names:
        if name not in ALGORITHMS:
            raise ConfigError(f"unknown algorithm {name!r}, expected one of {list(ALGORITHMS)}", path="--algo")
    return names
