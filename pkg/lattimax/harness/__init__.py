from lattimax.harness.config import HarnessConfig, ExperimentSpec, AssertionSpec, Cell, load_config, parse_config
from lattimax.harness.runner import RunResult, CellResult, run, solve
from lattimax.harness.report import write_reports, summary
from lattimax.harness.cli import main
