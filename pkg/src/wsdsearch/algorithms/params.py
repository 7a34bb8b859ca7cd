"""Parameter sets for the four search algorithms."""

from __future__ import annotations

from dataclasses import asdict, dataclass, fields
from typing import Union

from ..errors import InvalidInputError
from ..levy import LevyParams


@dataclass(frozen=True)
class SaParams:
    cooling_rate: float = 0.95
    iterations: int = 100
    initial_acceptance: float = 0.8

    def __post_init__(self):
        if not 0.0 < self.cooling_rate < 1.0:
            raise InvalidInputError("cooling_rate must lie in (0, 1)")
        if self.iterations < 1:
            raise InvalidInputError("iterations must be positive")
        if not 0.0 < self.initial_acceptance < 1.0:
            raise InvalidInputError("initial_acceptance must lie in (0, 1)")


@dataclass(frozen=True)
class GaParams:
    population: int = 100
    crossover_rate: float = 0.01
    mutation_rate: float = 0.01

    def __post_init__(self):
        if self.population < 2:
            raise InvalidInputError("population must be at least 2")
        for name in ("crossover_rate", "mutation_rate"):
            if not 0.0 <= getattr(self, name) <= 1.0:
                raise InvalidInputError(f"{name} must lie in [0, 1]")


@dataclass(frozen=True)
class BaParams:
    bats: int = 50
    min_frequency: float = 0.0
    max_frequency: float = 100.0
    min_loudness: float = 0.0
    max_loudness: float = 38.0
    alpha: float = 0.1
    gamma: float = 0.95

    def __post_init__(self):
        if self.bats < 1:
            raise InvalidInputError("bats must be positive")
        if self.min_frequency > self.max_frequency:
            raise InvalidInputError("min_frequency exceeds max_frequency")
        if self.min_loudness < 0 or self.min_loudness > self.max_loudness:
            raise InvalidInputError("need 0 <= min_loudness <= max_loudness")
        if not 0.0 < self.alpha <= 1.0:
            raise InvalidInputError("alpha must lie in (0, 1]")
        if self.gamma <= 0:
            raise InvalidInputError("gamma must be positive")


@dataclass(frozen=True)
class CsaParams:
    nests: int = 1
    destroyed: int = 0
    levy_location: float = 5.0
    levy_scale: float = 0.5

    def __post_init__(self):
        if self.nests < 1:
            raise InvalidInputError("nests must be positive")
        if self.destroyed < 0 or (self.destroyed >= self.nests and self.nests > 1):
            raise InvalidInputError("destroyed must lie in [0, nests)")
        if self.nests == 1 and self.destroyed != 0:
            raise InvalidInputError("a single nest cannot be destroyed")
        self.levy  # validates the distribution parameters

    @property
    def levy(self) -> LevyParams:
        return LevyParams(self.levy_location, self.levy_scale)


AlgorithmParams = Union[SaParams, GaParams, BaParams, CsaParams]

PARAM_TYPES = {"sa": SaParams, "ga": GaParams, "ba": BaParams, "csa": CsaParams}

_INT_FIELDS = {"iterations", "population", "bats", "nests", "destroyed"}


def params_from_mapping(algorithm: str, values: dict) -> AlgorithmParams:
    """Build a parameter set from ``{field: value}``, coercing strings."""
    try:
        cls = PARAM_TYPES[algorithm]
    except KeyError:
        raise InvalidInputError(f"unknown algorithm {algorithm!r}") from None
    known = {f.name for f in fields(cls)}
    unknown = set(values) - known
    if unknown:
        raise InvalidInputError(
            f"unknown {algorithm} parameter(s): {', '.join(sorted(unknown))}"
        )
    kwargs = {}
    for name, value in values.items():
        try:
            number = float(value)
        except (TypeError, ValueError):
            raise InvalidInputError(f"{algorithm}.{name}: not a number: {value!r}") from None
        if name in _INT_FIELDS:
            if number != int(number):
                raise InvalidInputError(f"{algorithm}.{name} must be an integer")
            number = int(number)
        kwargs[name] = number
    return cls(**kwargs)


def params_to_mapping(params: AlgorithmParams) -> dict:
    return asdict(params)


def algorithm_of(params: AlgorithmParams) -> str:
    for name, cls in PARAM_TYPES.items():
        if isinstance(params, cls):
            return name
    raise InvalidInputError(f"not an algorithm parameter set: {params!r}")
