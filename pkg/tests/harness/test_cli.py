import pytest

from lattimax.harness.cli import EXIT_ASSERTION_FAILED, EXIT_CONFIG_ERROR, EXIT_OK, main
from tests.harness import CONFIG


@pytest.fixture
def config_path(tmp_path):
    path = tmp_path / "config.yaml"
    path.write_text(CONFIG, encoding="UTF-8")
    return path


def test_ok(config_path, tmp_path, capsys):
    out = tmp_path / "out"
    assert main(["--config", str(config_path), "--out", str(out)]) == EXIT_OK
    assert (out / "report.csv").exists()
    assert (out / "summary.yaml").exists()
    assert "9 cells" in capsys.readouterr().out


def test_assertion_failed(tmp_path):
    path = tmp_path / "config.yaml"
    path.write_text(CONFIG.replace("min_ratio: 0.5", "min_ratio: 1.5"), encoding="UTF-8")
    assert main(["--config", str(path), "--out", str(tmp_path)]) == EXIT_ASSERTION_FAILED


def test_skipped_assertions_pass(tmp_path):
    path = tmp_path / "config.yaml"
    path.write_text(CONFIG.replace("min_ratio: 0.5", "min_ratio: 1.5"), encoding="UTF-8")
    assert main(["--config", str(path), "--out", str(tmp_path), "--no-bruteforce"]) == EXIT_OK


@pytest.mark.parametrize(
    "text, args",
    [
        ("instances: [", []),
        ("experiments: [{algorithms: [greedy], epsilons: [0.1]}]", []),
        (CONFIG, ["--algo", "greedy"]),
        (CONFIG, ["--workers", "0"]),
    ],
)
def test_config_error(tmp_path, text, args):
    path = tmp_path / "config.yaml"
    path.write_text(text, encoding="UTF-8")
    assert main(["--config", str(path), "--out", str(tmp_path / "out")] + args) == EXIT_CONFIG_ERROR
    assert not (tmp_path / "out").exists()


def test_missing_config(tmp_path):
    assert main(["--config", str(tmp_path / "missing.yaml")]) == EXIT_CONFIG_ERROR


def test_algo_filter(config_path, tmp_path):
    out = tmp_path / "out"
    assert main(["--config", str(config_path), "--out", str(out), "--algo", "knapsack"]) == EXIT_OK
    lines = (out / "report.csv").read_text(encoding="UTF-8").splitlines()
    assert len(lines) == 2
    assert lines[1].startswith("pantry,knapsack,")


def test_reports_are_reproducible(config_path, tmp_path):
    first, second = tmp_path / "first", tmp_path / "second"
    assert main(["--config", str(config_path), "--out", str(first)]) == EXIT_OK
    assert main(["--config", str(config_path), "--out", str(second), "--workers", "3"]) == EXIT_OK
    assert (first / "report.csv").read_bytes() == (second / "report.csv").read_bytes()
    assert (first / "summary.yaml").read_bytes() == (second / "summary.yaml").read_bytes()


def test_seed_override(config_path, tmp_path):
    out = tmp_path / "out"
    assert main(["--config", str(config_path), "--out", str(out), "--seed", "7"]) == EXIT_OK
    lines = (out / "report.csv").read_text(encoding="UTF-8").splitlines()[1:]
    assert len(lines) == 5
    assert all(line.split(",")[3] == "7" for line in lines)
