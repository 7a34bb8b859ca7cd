"""Discrete Cuckoo Search with Levy-flight moves."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..core import Document, Rng, make_random_changes, random_configuration
from ..errors import BudgetExhausted
from ..levy import flight_distance
from ..scorer import BudgetedScorer
from .params import CsaParams


@dataclass
class Nest:
    configuration: np.ndarray
    score: float


def _score_of(nest):
    return nest.score


def cuckoo_search(
    doc: Document, scorer: BudgetedScorer, params: CsaParams, seed: int, observer=None
):
    """Run cuckoo search until the budget is spent; return the scorer's best.

    Each iteration clones a random nest, moves the clone by a Levy flight of
    ``flight_distance`` random changes, and lets it take over another random
    nest if strictly better.  With a single nest the clone competes with its
    own parent.  Nests are then sorted ascending and the ``destroyed`` worst
    are replaced by fresh random nests (re-sorted afterwards).

    ``observer(nests)`` is called at the end of every iteration, if given.
    """
    rng = Rng(seed)
    levy = params.levy
    nests = []
    try:
        for _ in range(params.nests):
            cfg = random_configuration(doc, rng)
            nests.append(Nest(cfg, scorer.score(cfg)))
        count = len(nests)
        while True:
            i = rng.below(count)
            clone = make_random_changes(doc, nests[i].configuration, flight_distance(levy, rng), rng)
            j = i
            while count > 1 and j == i:
                j = rng.below(count)
            s = scorer.score(clone)
            if s > nests[j].score:
                nests[j] = Nest(clone, s)
            nests.sort(key=_score_of)
            if params.destroyed:
                for d in range(params.destroyed):
                    cfg = random_configuration(doc, rng)
                    nests[d] = Nest(cfg, scorer.score(cfg))
                nests.sort(key=_score_of)
            if observer is not None:
                observer(nests)
    except BudgetExhausted:
        pass
    return scorer.best_config
