from pathlib import Path

from setuptools import setup, find_packages

from read_version import read_version

setup(
    name="lattimax",
    version=read_version(),
    python_requires=">=3.10",
    description="Monotone submodular maximization on the integer lattice under cardinality, "
    "polymatroid and knapsack constraints",
    long_description=Path("README.md").read_text(encoding="UTF-8"),
    long_description_content_type="text/markdown",
    packages=[p for p in find_packages() if p.startswith("lattimax")],
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Programming Language :: Python :: 3.12",
        "Programming Language :: Python :: 3.13",
        "Programming Language :: Python :: Implementation :: CPython",
        "Intended Audience :: Science/Research",
        "Operating System :: OS Independent",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
    install_requires=[
        "numpy >= 1.22",
        "PyYAML >= 6.0",
    ],
    entry_points={
        "console_scripts": ["lattimax = lattimax.harness.cli:main"],
    },
)
