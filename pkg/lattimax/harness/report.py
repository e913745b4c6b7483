"""Report files of a harness run: ``report.csv`` with one row per cell and ``summary.yaml``."""

import csv
import logging
from pathlib import Path
from typing import Any, Dict, Tuple, Union

import yaml

from lattimax.harness.runner import CellResult, RunResult
from lattimax.result import CSV_COLUMNS, convert_report_value

log = logging.getLogger(__name__)

CSV_NAME = "report.csv"
SUMMARY_NAME = "summary.yaml"


def report_row(result: CellResult) -> Tuple[str, ...]:
    """CSV fields of a cell, a failed cell only has its coordinates filled"""
    if result.report is not None:
        return result.report.row()
    cell = result.cell
    known = {
        "instance_id": cell.instance.instance_id,
        "algorithm": cell.algorithm,
        "epsilon": cell.epsilon,
        "seed": cell.seed,
    }
    return tuple(convert_report_value(known.get(name)) for name in CSV_COLUMNS)


def summary(result: RunResult) -> Dict[str, Any]:
    """Plain data summary: cell count, errors, optima, tau and assertion outcomes"""
    return {
        "cells": len(result.cells),
        "passed": result.passed,
        "errors": [
            {
                "index": r.cell.index,
                "instance": r.cell.instance.instance_id,
                "algorithm": r.cell.algorithm,
                "epsilon": r.cell.epsilon,
                "seed": r.cell.seed,
                "error": r.error,
            }
            for r in result.cells
            if r.error is not None
        ],
        "instances": {
            instance_id: {
                "opt_value": None if facts.exact is None else facts.exact.opt_value,
                "argmax": None if facts.exact is None else list(facts.exact.argmax),
                "points_enumerated": None if facts.exact is None else facts.exact.points_enumerated,
                "bruteforce_error": facts.exact_error,
                "tau": facts.tau,
            }
            for instance_id, facts in result.facts.items()
        },
        "assertions": [
            {
                "instance": outcome.assertion.instance,
                "algorithm": outcome.assertion.algorithm,
                "min_ratio": outcome.assertion.min_ratio,
                "status": outcome.status,
                "cells": outcome.cells,
                "worst_ratio": outcome.worst_ratio,
            }
            for outcome in result.assertions
        ],
    }


def write_reports(result: RunResult, out: Union[str, Path]) -> Tuple[Path, Path]:
    """Writes ``report.csv`` and ``summary.yaml`` into ``out``, creating the directory if needed"""
    out = Path(out)
    out.mkdir(parents=True, exist_ok=True)
    csv_path = out / CSV_NAME
    with csv_path.open("w", newline="", encoding="UTF-8") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for cell in result.cells:
            writer.writerow(report_row(cell))
    summary_path = out / SUMMARY_NAME
    with summary_path.open("w", encoding="UTF-8") as f:
        yaml.safe_dump(summary(result), f, sort_keys=False)
    log.info("reports written to %s", out)
    return csv_path, summary_path
