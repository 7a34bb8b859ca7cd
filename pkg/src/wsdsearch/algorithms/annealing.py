"""Simulated annealing over sense configurations."""

from __future__ import annotations

import math

from ..core import Document, Rng, make_random_changes, random_configuration
from ..errors import BudgetExhausted
from ..scorer import BudgetedScorer
from .params import SaParams

# Single-change moves sampled (and charged to the budget) to calibrate T0.
PROBE_MOVES = 50


def initial_temperature(doc, scorer, start, start_score, acceptance, rng, moves=PROBE_MOVES):
    """Temperature at which the mean worsening step is accepted with ``acceptance``.

    Probes ``moves`` single changes away from ``start``.  Returns 1.0 when
    no probe move was worse than the start.
    """
    losses = []
    for _ in range(moves):
        s = scorer.score(make_random_changes(doc, start, 1, rng))
        if s < start_score:
            losses.append(start_score - s)
    if not losses:
        return 1.0
    return -(sum(losses) / len(losses)) / math.log(acceptance)


def simulated_annealing(
    doc: Document, scorer: BudgetedScorer, params: SaParams, seed: int, observer=None
):
    """Run SA until the scorer's budget is spent and return its best configuration.

    ``observer(cycle, delta, accepted)`` is called after every move, if given.
    """
    rng = Rng(seed)
    try:
        current = random_configuration(doc, rng)
        current_score = scorer.score(current)
        temperature = initial_temperature(
            doc, scorer, current, current_score, params.initial_acceptance, rng
        )
        cycle = 0
        while True:
            for _ in range(params.iterations):
                candidate = make_random_changes(doc, current, 1, rng)
                s = scorer.score(candidate)
                delta = s - current_score
                if delta >= 0:
                    accepted = True
                else:
                    accepted = temperature > 0 and rng.random() < math.exp(delta / temperature)
                if observer is not None:
                    observer(cycle, delta, accepted)
                if accepted:
                    current, current_score = candidate, s
            temperature *= params.cooling_rate
            cycle += 1
    except BudgetExhausted:
        pass
    return scorer.best_config
