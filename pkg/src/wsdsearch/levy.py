"""Levy(location, scale) sampling and integer flight lengths."""

from __future__ import annotations

import math
from dataclasses import dataclass
from statistics import NormalDist

from .core import Rng
from .errors import InvalidInputError

# Upper cap on a flight length; keeps int conversion finite and within the
# range numpy's multinomial accepts.
MAX_FLIGHT = 1 << 62

# median of Levy(0, 1): 1 / Phi^-1(3/4)^2
_UNIT_MEDIAN = 1.0 / NormalDist().inv_cdf(0.75) ** 2


@dataclass(frozen=True)
class LevyParams:
    location: float = 0.0
    scale: float = 1.0

    def __post_init__(self):
        if not (self.scale > 0 and math.isfinite(self.scale)):
            raise InvalidInputError("Levy scale must be a positive finite number")
        if not math.isfinite(self.location):
            raise InvalidInputError("Levy location must be finite")

    @property
    def median(self) -> float:
        return self.location + self.scale * _UNIT_MEDIAN


def sample_levy(params: LevyParams, rng: Rng) -> float:
    """Draw ``location + scale / Z**2`` with ``Z`` standard normal."""
    z = rng.normal()
    while z == 0.0:
        z = rng.normal()
    return params.location + params.scale / (z * z)


def flight_distance(params: LevyParams, rng: Rng) -> int:
    """Number of random changes for one flight: the sample truncated toward 0."""
    d = sample_levy(params, rng)
    if d <= 0.0:
        return 0
    if d >= MAX_FLIGHT:
        return MAX_FLIGHT
    return int(d)
