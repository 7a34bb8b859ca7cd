"""Generational GA: roulette selection, one-point crossover, per-gene mutation, one elite."""

from __future__ import annotations

import math
from bisect import bisect_right
from itertools import accumulate

import numpy as np

from ..core import Document, Rng, random_configuration
from ..errors import BudgetExhausted
from ..scorer import BudgetedScorer
from .params import GaParams


def one_point_crossover(a: np.ndarray, b: np.ndarray, cut: int):
    """Swap the tails of ``a`` and ``b`` from position ``cut`` on."""
    return (
        np.concatenate((a[:cut], b[cut:])),
        np.concatenate((b[:cut], a[cut:])),
    )


def roulette_pick(cumulative: list, rng: Rng) -> int:
    """Index drawn with probability proportional to fitness.

    ``cumulative`` is the running sum of fitness values; an all-zero
    population falls back to a uniform pick.
    """
    total = cumulative[-1]
    if total <= 0:
        return rng.below(len(cumulative))
    i = bisect_right(cumulative, rng.random() * total)
    return min(i, len(cumulative) - 1)


def mutate(doc: Document, child: np.ndarray, rate: float, rng: Rng) -> None:
    """In place: each gene changes to a different sense with probability ``rate``.

    Mutated positions are found by geometric skipping, which selects each gene
    independently with probability ``rate`` without a draw per gene.
    """
    if rate <= 0.0:
        return
    n = child.shape[0]
    counts = doc._count_list
    log_keep = math.log1p(-rate) if rate < 1.0 else None
    pos = -1
    while True:
        if log_keep is None:
            pos += 1
        else:
            pos += 1 + int(math.log(1.0 - rng.random()) / log_keep)
        if pos >= n:
            return
        k = counts[pos]
        if k < 2:
            continue
        s = rng.below(k - 1)
        if s >= child[pos]:
            s += 1
        child[pos] = s


def genetic_algorithm(doc: Document, scorer: BudgetedScorer, params: GaParams, seed: int):
    """Evolve a population until the budget is spent; return the scorer's best.

    Every offspring costs one scorer call, including unchanged copies of a
    parent; only the carried-over elite keeps its cached fitness.
    """
    rng = Rng(seed)
    n = len(doc)
    size = params.population
    population = []
    fitness = []
    try:
        for _ in range(size):
            individual = random_configuration(doc, rng)
            fitness.append(scorer.score(individual))
            population.append(individual)
        while True:
            elite = max(range(size), key=fitness.__getitem__)
            cumulative = list(accumulate(fitness))
            next_population = [population[elite]]
            next_fitness = [fitness[elite]]
            while len(next_population) < size:
                a = population[roulette_pick(cumulative, rng)]
                b = population[roulette_pick(cumulative, rng)]
                if n > 1 and rng.random() < params.crossover_rate:
                    children = one_point_crossover(a, b, 1 + rng.below(n - 1))
                else:
                    children = (a.copy(), b.copy())
                for child in children:
                    if len(next_population) == size:
                        break
                    mutate(doc, child, params.mutation_rate, rng)
                    next_fitness.append(scorer.score(child))
                    next_population.append(child)
            population, fitness = next_population, next_fitness
    except BudgetExhausted:
        pass
    return scorer.best_config
