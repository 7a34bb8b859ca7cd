"""The four global search algorithms and a name-based registry."""

from .annealing import simulated_annealing
from .bat import BatState, bat_algorithm
from .cuckoo import Nest, cuckoo_search
from .genetic import genetic_algorithm
from .params import (
    PARAM_TYPES,
    AlgorithmParams,
    BaParams,
    CsaParams,
    GaParams,
    SaParams,
    algorithm_of,
    params_from_mapping,
    params_to_mapping,
)
from .presets import PRESET_BUDGETS, PRESETS, preset_for
from ..errors import ConfigError

ALGORITHMS = {
    "sa": simulated_annealing,
    "ga": genetic_algorithm,
    "ba": bat_algorithm,
    "csa": cuckoo_search,
}


def run_algorithm(name, doc, scorer, params, seed):
    """Dispatch to the algorithm called ``name`` ("sa", "ga", "ba" or "csa")."""
    try:
        fn = ALGORITHMS[name]
    except KeyError:
        raise ConfigError(f"unknown algorithm {name!r}; choose from {', '.join(ALGORITHMS)}") from None
    if not isinstance(params, PARAM_TYPES[name]):
        raise ConfigError(f"{name} expects {PARAM_TYPES[name].__name__}, got {type(params).__name__}")
    return fn(doc, scorer, params, seed)


__all__ = [
    "ALGORITHMS",
    "AlgorithmParams",
    "BaParams",
    "BatState",
    "CsaParams",
    "GaParams",
    "Nest",
    "PARAM_TYPES",
    "PRESETS",
    "PRESET_BUDGETS",
    "SaParams",
    "algorithm_of",
    "bat_algorithm",
    "cuckoo_search",
    "genetic_algorithm",
    "params_from_mapping",
    "params_to_mapping",
    "preset_for",
    "run_algorithm",
    "simulated_annealing",
]
