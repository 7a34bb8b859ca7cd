"""Preset parameter sets per scorer-call budget (200, 800, 2000, 4000).

Budgets above 4000 reuse the 4000-call row.
"""

from __future__ import annotations

from ..errors import ConfigError
from .params import BaParams, CsaParams, GaParams, SaParams

PRESET_BUDGETS = (200, 800, 2000, 4000)

PRESETS = {
    "ba": {
        200: BaParams(50, 45, 100, 23, 24, 0.40, 0.14),
        800: BaParams(50, 38, 38, 6, 10, 0.65, 0.95),
        2000: BaParams(50, 28, 100, 0, 38, 0.1, 0.72),
        4000: BaParams(50, 0, 100, 0, 38, 0.1, 0.95),
    },
    "csa": {
        200: CsaParams(1, 0, 20, 5),
        800: CsaParams(1, 0, 0.37, 5),
        2000: CsaParams(1, 0, 5, 0.5),
        4000: CsaParams(1, 0, 5, 0.5),
    },
    "ga": {
        200: GaParams(100, 0.02, 0.01),
        800: GaParams(100, 0.01, 0.01),
        2000: GaParams(100, 0.01, 0.01),
        4000: GaParams(73, 0.01, 0.01),
    },
    "sa": {
        200: SaParams(0.95, 1),
        800: SaParams(0.1, 100),
        2000: SaParams(0.1, 50),
        4000: SaParams(0.1, 77),
    },
}


def preset_for(algorithm: str, budget: int):
    try:
        table = PRESETS[algorithm]
    except KeyError:
        raise ConfigError(f"unknown algorithm {algorithm!r}") from None
    if budget in table:
        return table[budget]
    if budget > PRESET_BUDGETS[-1]:
        return table[PRESET_BUDGETS[-1]]
    raise ConfigError(
        f"no preset for {algorithm} at budget {budget}; "
        f"presets exist for {', '.join(map(str, PRESET_BUDGETS))} and above 4000"
    )
