"""Discrete Bat Algorithm.

Positions are configurations and a velocity is a number of random changes.
A bat either makes a local flight around the best bat (``int(mean
loudness)`` changes applied to a copy of the best position) or flies on its
own: its velocity accumulates its Hamming distance to the best bat, is
scaled by a fresh frequency, and that many changes are applied to its
position.  A move is kept only if the bat is loud enough and beats the best
bat; each success lowers the bat's loudness by ``alpha`` and resets its
pulse rate.  A bat whose loudness falls below ``min_loudness`` is finished,
and the search ends when every bat is finished or the budget is spent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..core import Document, Rng, hamming_distance, make_random_changes, random_configuration
from ..errors import BudgetExhausted
from ..scorer import BudgetedScorer
from .params import BaParams


@dataclass
class BatState:
    position: np.ndarray
    velocity: int
    frequency: float
    loudness: float
    pulse_rate: float
    initial_pulse_rate: float
    score: float
    finished: bool = False


def bat_algorithm(
    doc: Document, scorer: BudgetedScorer, params: BaParams, seed: int, observer=None
):
    """Run the bat search; return the scorer's best configuration.

    ``observer(iteration, bats, best_index)`` is called after each sweep
    over the population, if given.
    """
    rng = Rng(seed)
    n = len(doc)
    p = params
    bats = []
    try:
        for _ in range(p.bats):
            position = random_configuration(doc, rng)
            frequency = rng.uniform(p.min_frequency, p.max_frequency)
            loudness = rng.uniform(p.min_loudness, p.max_loudness)
            rate = rng.random()
            bats.append(
                BatState(position, 0, frequency, loudness, rate, rate, scorer.score(position))
            )
        best = max(range(len(bats)), key=lambda i: bats[i].score)
        finished = 0
        iteration = 0
        while finished < len(bats):
            iteration += 1
            for idx, bat in enumerate(bats):
                saved = (bat.position, bat.velocity, bat.score)
                leader = bats[best]
                if bat.pulse_rate < rng.random():
                    mean_loudness = sum(b.loudness for b in bats) / len(bats)
                    bat.position = make_random_changes(doc, leader.position, int(mean_loudness), rng)
                else:
                    bat.frequency = rng.uniform(p.min_frequency, p.max_frequency)
                    velocity = bat.velocity + hamming_distance(bat.position, leader.position)
                    bat.velocity = min(max(int(velocity * bat.frequency), 0), n)
                    bat.position = make_random_changes(doc, bat.position, bat.velocity, rng)
                bat.score = scorer.score(bat.position)
                # the leader moving can never beat itself
                if (
                    bat.loudness >= rng.uniform(p.min_loudness, p.max_loudness)
                    and idx != best
                    and bat.score > leader.score
                ):
                    bat.loudness *= p.alpha
                    if bat.loudness < p.min_loudness and not bat.finished:
                        bat.finished = True
                        finished += 1
                    bat.pulse_rate = bat.initial_pulse_rate * (1.0 - math.exp(-p.gamma * iteration))
                    best = idx
                else:
                    bat.position, bat.velocity, bat.score = saved
            if observer is not None:
                observer(iteration, bats, best)
    except BudgetExhausted:
        pass
    return scorer.best_config
