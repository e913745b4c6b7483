"""Harness configuration: a YAML document with ``instances``, ``experiments`` and ``assertions``.

The schema is documented in ``docs/source/guides/harness.rst``. Every problem is reported as a
:class:`lattimax.errors.ConfigError` with the line and column of a syntax error or the dotted path
of the offending entry.
"""

from dataclasses import dataclass
import logging
from pathlib import Path
from typing import Any, Iterator, List, Mapping, NamedTuple, Optional, Sequence, Tuple, Union

import yaml

from lattimax.errors import ConfigError, LattimaxError
from lattimax.instances.spec import ALGORITHMS, FAMILIES, InstanceSpec

log = logging.getLogger(__name__)

TOP_LEVEL_KEYS = ("instances", "experiments", "assertions")


@dataclass(frozen=True)
class ExperimentSpec:
    """Grid of cells ``instances x algorithms x epsilons x seeds``, in this nesting order"""

    instances: Tuple[str, ...]
    algorithms: Tuple[str, ...]
    epsilons: Tuple[float, ...]
    seeds: Tuple[int, ...] = (0,)
    repeats: int = 1


@dataclass(frozen=True)
class AssertionSpec:
    """``value >= min_ratio * OPT`` for every cell matching ``instance`` and ``algorithm`` (``None`` matches all)"""

    min_ratio: float
    instance: Optional[str] = None
    algorithm: Optional[str] = None

    def matches(self, cell: "Cell") -> bool:
        return (self.instance is None or self.instance == cell.instance.instance_id) and (
            self.algorithm is None or self.algorithm == cell.algorithm
        )


class Cell(NamedTuple):
    index: int
    instance: InstanceSpec
    algorithm: str
    epsilon: float
    seed: int
    repeats: int = 1


@dataclass(frozen=True)
class HarnessConfig:
    instances: Tuple[InstanceSpec, ...] = ()
    experiments: Tuple[ExperimentSpec, ...] = ()
    assertions: Tuple[AssertionSpec, ...] = ()

    def instance(self, instance_id: str) -> InstanceSpec:
        for spec in self.instances:
            if spec.instance_id == instance_id:
                return spec
        raise KeyError(instance_id)

    def cells(self, algorithms: Optional[Sequence[str]] = None, seed: Optional[int] = None) -> Iterator[Cell]:
        """Cells in config order, restricted to ``algorithms`` and with every seed replaced by ``seed`` if given"""
        index = 0
        for experiment in self.experiments:
            seeds = experiment.seeds if seed is None else (seed,)
            for instance_id in experiment.instances:
                spec = self.instance(instance_id)
                for algorithm in experiment.algorithms:
                    if algorithms is not None and algorithm not in algorithms:
                        continue
                    for epsilon in experiment.epsilons:
                        for cell_seed in seeds:
                            yield Cell(index, spec, algorithm, epsilon, cell_seed, experiment.repeats)
                            index += 1


def load_config(path: Union[str, Path]) -> HarnessConfig:
    """Reads and validates a harness configuration file

    Raises
    ------
    ConfigError
        if the file can't be read, isn't valid YAML or doesn't follow the schema
    """
    try:
        text = Path(path).read_text(encoding="UTF-8")
    except OSError as e:
        raise ConfigError(f"can't read the configuration: {e.strerror}", path=str(path)) from None
    return parse_config(text)


def parse_config(text: str) -> HarnessConfig:
    """Validates a harness configuration given as YAML text

    Examples
    --------
    >>> parse_config("experiments: []")
    HarnessConfig(instances=(), experiments=(), assertions=())
    >>> parse_config("instances: [")
    Traceback (most recent call last):
    ...
    lattimax.errors.ConfigError: line ...: invalid YAML: ...
    """
    try:
        document = yaml.safe_load(text)
    except yaml.YAMLError as e:
        mark = getattr(e, "problem_mark", None)
        problem = getattr(e, "problem", None) or str(e)
        if mark is None:
            raise ConfigError(f"invalid YAML: {problem}") from None
        raise ConfigError(f"invalid YAML: {problem}", line=mark.line + 1, column=mark.column + 1) from None
    if document is None:
        document = {}
    _expect(isinstance(document, dict), "configuration should be a mapping", "<root>")
    for key in document:
        _expect(key in TOP_LEVEL_KEYS, f"unknown section {key!r}, expected one of {list(TOP_LEVEL_KEYS)}", str(key))
    instances = tuple(_instance(item, f"instances[{i}]") for i, item in enumerate(_list(document, "instances", "")))
    ids = [spec.instance_id for spec in instances]
    for i, instance_id in enumerate(ids):
        _expect(instance_id not in ids[:i], f"instance id {instance_id!r} is used twice", f"instances[{i}].id")
    known = {spec.instance_id: spec for spec in instances}
    experiments = tuple(
        _experiment(item, f"experiments[{i}]", known) for i, item in enumerate(_list(document, "experiments", ""))
    )
    assertions = tuple(
        _assertion(item, f"assertions[{i}]", known) for i, item in enumerate(_list(document, "assertions", ""))
    )
    config = HarnessConfig(instances, experiments, assertions)
    log.debug(
        "configuration: %d instances, %d experiments, %d assertions", len(instances), len(experiments), len(assertions)
    )
    return config


def _instance(item: Any, path: str) -> InstanceSpec:
    _expect(isinstance(item, dict), "instance should be a mapping", path)
    _only(item, ("id", "family", "params", "seed", "constraint"), path)
    instance_id = _required(item, "id", str, path)
    family = _required(item, "family", str, path)
    params = item.get("params", {})
    _expect(isinstance(params, dict), "params should be a mapping", f"{path}.params")
    seed = item.get("seed", 0)
    _expect(_is_int(seed), f"seed should be an integer, but it is {seed!r}", f"{path}.seed")
    constraint = item.get("constraint", {})
    _expect(isinstance(constraint, dict), "constraint should be a mapping", f"{path}.constraint")
    _expect(family in FAMILIES, f"unknown family {family!r}, expected one of {sorted(FAMILIES)}", f"{path}.family")
    spec = InstanceSpec(instance_id, family, params, seed, constraint)
    try:
        f = spec.build_oracle()
    except LattimaxError as e:
        raise ConfigError(str(e), path=f"{path}.params") from None
    try:
        spec.build_constraint(f)
    except LattimaxError as e:
        raise ConfigError(str(e), path=f"{path}.constraint") from None
    return spec


def _experiment(item: Any, path: str, known: Mapping[str, InstanceSpec]) -> ExperimentSpec:
    _expect(isinstance(item, dict), "experiment should be a mapping", path)
    _only(item, ("instances", "algorithms", "epsilons", "seeds", "repeats"), path)
    instances = tuple(item.get("instances", list(known)))
    for i, instance_id in enumerate(instances):
        _expect(instance_id in known, f"unknown instance {instance_id!r}", f"{path}.instances[{i}]")
    algorithms = tuple(_required(item, "algorithms", list, path))
    for i, algorithm in enumerate(algorithms):
        where = f"{path}.algorithms[{i}]"
        _expect(algorithm in ALGORITHMS, f"unknown algorithm {algorithm!r}, expected one of {list(ALGORITHMS)}", where)
        for instance_id in instances:
            kind = known[instance_id].constraint_kind
            _expect(
                ALGORITHMS[algorithm] == kind,
                f"algorithm {algorithm} can't solve instance {instance_id!r} with a {kind} constraint",
                where,
            )
    epsilons = tuple(_required(item, "epsilons", list, path))
    for i, epsilon in enumerate(epsilons):
        _expect(
            _is_number(epsilon) and 0 < epsilon < 1,
            f"epsilon should be in (0, 1), but it is {epsilon!r}",
            f"{path}.epsilons[{i}]",
        )
    seeds = tuple(item.get("seeds", [0]))
    for i, seed in enumerate(seeds):
        _expect(_is_int(seed), f"seed should be an integer, but it is {seed!r}", f"{path}.seeds[{i}]")
    repeats = item.get("repeats", 1)
    _expect(
        _is_int(repeats) and repeats >= 1,
        f"repeats should be a positive integer, but it is {repeats!r}",
        f"{path}.repeats",
    )
    return ExperimentSpec(instances, algorithms, tuple(float(e) for e in epsilons), seeds, repeats)


def _assertion(item: Any, path: str, known: Mapping[str, InstanceSpec]) -> AssertionSpec:
    _expect(isinstance(item, dict), "assertion should be a mapping", path)
    _only(item, ("instance", "algorithm", "min_ratio"), path)
    min_ratio = item.get("min_ratio")
    _expect(
        _is_number(min_ratio) and min_ratio >= 0,
        f"min_ratio should be a non-negative number, but it is {min_ratio!r}",
        f"{path}.min_ratio",
    )
    instance = item.get("instance")
    _expect(instance is None or instance in known, f"unknown instance {instance!r}", f"{path}.instance")
    algorithm = item.get("algorithm")
    _expect(algorithm is None or algorithm in ALGORITHMS, f"unknown algorithm {algorithm!r}", f"{path}.algorithm")
    return AssertionSpec(float(min_ratio), instance, algorithm)


def _list(document: Mapping, key: str, path: str) -> List:
    value = document.get(key)
    if value is None:
        return []
    _expect(isinstance(value, list), f"{key} should be a list", f"{path}{key}")
    return value


def _required(item: Mapping, key: str, kind: type, path: str):
    _expect(key in item, f"{key} is required", path)
    value = item[key]
    _expect(isinstance(value, kind), f"{key} should be of type {kind.__name__}, but it is {value!r}", f"{path}.{key}")
    return value


def _only(item: Mapping, keys: Sequence[str], path: str):
    for key in item:
        _expect(key in keys, f"unknown key {key!r}, expected one of {list(keys)}", f"{path}.{key}")


def _is_int(value) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


def _is_number(value) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool)


def _expect(condition: bool, message: str, path: str):
    if not condition:
        raise ConfigError(message, path=path)
