import nox

nox.options.stop_on_first_error = True

PACKAGE = "lattimax"


def _install(session, *extra):
    session.install("-r", "requirements.txt")
    for requirements in extra:
        session.install("-r", requirements)
    session.install("-e", ".")


@nox.session
def lint(session):
    session.install("ruff")
    session.run("ruff", "check", PACKAGE, "tests")


@nox.session
def test(session):
    _install(session, "requirements_dev.txt")
    session.run(
        "pytest",
        "tests",
        PACKAGE,
        "-m",
        "not acceptance",
        f"--cov={PACKAGE}",
        "--cov-branch",
        "--cov-report=term-missing",
        "--doctest-modules",
    )


@nox.session(default=False)
def acceptance(session):
    """Randomized ratio suites against brute force, takes minutes"""
    _install(session, "requirements_dev.txt")
    session.run("pytest", "tests", "-m", "acceptance")


@nox.session
def doctest(session):
    _install(session, "requirements_dev.txt")
    session.run("pytest", "docs", "--doctest-glob=*.rst", "--doctest-modules")


@nox.session
def harness(session):
    """Runs the documented example configuration end to end"""
    _install(session)
    out = session.create_tmp()
    session.run("python", "-m", PACKAGE, "--config", "docs/source/harness/example.yaml", "--out", out)


@nox.session(default=False)
def gendoc(session):
    _install(session, "requirements_doc.txt")
    session.run("sphinx-apidoc", "-f", "-o", "docs/source/api", PACKAGE)
    # runs the testcode blocks of the tutorial and guides
    session.run(
        "python", "-m", "sphinx", "-b", "doctest", "-d", "docs/_build/doctrees", "docs/source", "docs/build/doctest"
    )
    session.run(
        "python",
        "-m",
        "sphinx",
        "-T",
        "-E",
        "-b",
        "html",
        "-d",
        "docs/_build/doctrees",
        "-D",
        "language=en",
        "docs/source",
        "docs/build/html",
    )
