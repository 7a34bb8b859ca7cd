"""Parameter estimation by a continuous cuckoo search over a parameter box.

A candidate parameter point is judged by the sample of per-run best F1
values it produces at a fixed scorer-call budget on a tuning corpus.  A
challenger takes over an incumbent nest when its mean F1 is higher and
either the Mann-Whitney U test finds the samples different at ``alpha`` or
the mean gain exceeds ``SLACK``.

All runs of all candidates share the seeds derived from
``(job.seed, run, document)``, so candidates are compared on common random
numbers and evaluating a point twice gives the same sample.
"""

from __future__ import annotations

import logging
import math
import warnings
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .algorithms import PARAM_TYPES, params_from_mapping, run_algorithm
from .core import Document, Rng, derive_seed
from .corpus import CorpusFile
from .errors import InvalidInputError
from .levy import LevyParams, sample_levy
from .scorer import BudgetedScorer, GoldStandard
from .stats import mann_whitney_u

log = logging.getLogger(__name__)

SLACK = 0.01


@dataclass(frozen=True)
class Dimension:
    name: str
    lower: float
    upper: float
    kind: str = "real"

    def __post_init__(self):
        if self.kind not in ("real", "integer"):
            raise InvalidInputError(f"{self.name}: kind must be 'real' or 'integer'")
        if self.lower > self.upper:
            raise InvalidInputError(f"{self.name}: lower bound exceeds upper bound")

    def clip(self, value: float) -> float:
        value = min(max(value, self.lower), self.upper)
        if self.kind == "integer":
            value = float(min(max(round(value), math.ceil(self.lower)), math.floor(self.upper)))
        return value


@dataclass(frozen=True)
class ParamSpace:
    dimensions: tuple

    def __post_init__(self):
        object.__setattr__(self, "dimensions", tuple(self.dimensions))
        names = [d.name for d in self.dimensions]
        if len(set(names)) != len(names):
            raise InvalidInputError("duplicate dimension names")

    @property
    def names(self):
        return [d.name for d in self.dimensions]

    @property
    def pinned(self) -> bool:
        return all(d.lower == d.upper for d in self.dimensions)

    def clip(self, point) -> tuple:
        return tuple(d.clip(float(v)) for d, v in zip(self.dimensions, point))

    def contains(self, point) -> bool:
        for d, v in zip(self.dimensions, point):
            if not d.lower <= v <= d.upper:
                return False
            if d.kind == "integer" and v != int(v):
                return False
        return len(point) == len(self.dimensions)

    def random_point(self, rng: Rng) -> tuple:
        return self.clip([rng.uniform(d.lower, d.upper) for d in self.dimensions])


DEFAULT_SPACES = {
    "sa": ParamSpace((
        Dimension("cooling_rate", 0.01, 0.99),
        Dimension("iterations", 1, 200, "integer"),
        Dimension("initial_acceptance", 0.8, 0.8),
    )),
    "ga": ParamSpace((
        Dimension("population", 10, 200, "integer"),
        Dimension("crossover_rate", 0.0, 1.0),
        Dimension("mutation_rate", 0.0, 0.2),
    )),
    "ba": ParamSpace((
        Dimension("bats", 1, 100, "integer"),
        Dimension("min_frequency", 0.0, 100.0),
        Dimension("max_frequency", 0.0, 100.0),
        Dimension("min_loudness", 0.0, 50.0),
        Dimension("max_loudness", 0.0, 50.0),
        Dimension("alpha", 0.01, 1.0),
        Dimension("gamma", 0.01, 1.0),
    )),
    "csa": ParamSpace((
        Dimension("nests", 1, 20, "integer"),
        Dimension("destroyed", 0, 19, "integer"),
        Dimension("levy_location", 0.0, 20.0),
        Dimension("levy_scale", 0.01, 10.0),
    )),
}


def point_to_params(algorithm: str, space: ParamSpace, point):
    """Turn a box point into a valid parameter set.

    Coupled constraints the box cannot express are repaired here: swapped
    min/max pairs are reordered and ``destroyed`` is capped below ``nests``.
    """
    values = dict(zip(space.names, point))
    for low, high in (("min_frequency", "max_frequency"), ("min_loudness", "max_loudness")):
        if low in values and high in values and values[low] > values[high]:
            values[low], values[high] = values[high], values[low]
    if "destroyed" in values:
        nests = values.get("nests", PARAM_TYPES[algorithm]().nests)
        values["destroyed"] = min(values["destroyed"], max(nests - 1, 0))
    return params_from_mapping(algorithm, values)


@dataclass
class TuneJob:
    algorithm: str
    budget: int
    corpus: CorpusFile
    space: Optional[ParamSpace] = None
    runs: int = 30
    meta_iterations: int = 50
    meta_nests: int = 3
    meta_destroyed: int = 0
    meta_levy: LevyParams = field(default_factory=lambda: LevyParams(0.0, 0.02))
    alpha: float = 0.05
    seed: int = 0

    def __post_init__(self):
        if self.algorithm not in PARAM_TYPES:
            raise InvalidInputError(f"unknown algorithm {self.algorithm!r}")
        if self.space is None:
            self.space = DEFAULT_SPACES[self.algorithm]
        if self.budget < 1:
            raise InvalidInputError("budget must be positive")
        if self.runs < 2:
            raise InvalidInputError("runs per candidate must be at least 2")
        if self.meta_iterations < 0 or self.meta_nests < 1:
            raise InvalidInputError("need meta_iterations >= 0 and meta_nests >= 1")
        if not 0 <= self.meta_destroyed < max(self.meta_nests, 1) and not (
            self.meta_nests == 1 and self.meta_destroyed == 0
        ):
            raise InvalidInputError("meta_destroyed must lie in [0, meta_nests)")
        if len(self.corpus) == 0:
            raise InvalidInputError("tuning corpus is empty")


@dataclass
class Candidate:
    point: tuple
    params: object
    samples: list

    @property
    def mean(self) -> float:
        return float(np.mean(self.samples))


@dataclass
class TuneResult:
    algorithm: str
    budget: int
    best_params: object
    best_point: tuple
    mean_f1: float
    samples: list
    evaluated_candidates: int
    scorer_calls: int
    history: list = field(default_factory=list)


def run_seed(job_seed: int, run: int, doc_index: int) -> int:
    return derive_seed("tune", job_seed, run, doc_index)


def evaluate_params(algorithm, params, budget, corpus, runs, seed):
    """Per-run best F1 (averaged over documents) and the scorer calls spent."""
    samples = []
    calls = 0
    for run in range(runs):
        scores = []
        for d, (doc, gold) in enumerate(corpus):
            scorer = BudgetedScorer(gold, budget)
            run_algorithm(algorithm, doc, scorer, params, run_seed(seed, run, d))
            scores.append(scorer.best_score)
            calls += scorer.call_count
        samples.append(float(np.mean(scores)))
    return samples, calls


def evaluate_candidate(job: TuneJob, point) -> list:
    """Per-run best-F1 sample for the parameter point ``point``."""
    space = job.space
    if len(point) != len(space.dimensions):
        raise InvalidInputError("point dimension does not match the parameter space")
    point = tuple(
        float(round(v)) if d.kind == "integer" else float(v)
        for d, v in zip(space.dimensions, point)
    )
    if not space.contains(point):
        raise InvalidInputError(f"point {point} lies outside the parameter box")
    params = point_to_params(job.algorithm, job.space, point)
    samples, _ = evaluate_params(job.algorithm, params, job.budget, job.corpus, job.runs, job.seed)
    return samples


def challenger_wins(challenger: list, incumbent: list, alpha: float) -> bool:
    gain = float(np.mean(challenger)) - float(np.mean(incumbent))
    if gain <= 0:
        return False
    if gain > SLACK:
        return True
    return mann_whitney_u(challenger, incumbent, alpha).significant


def levy_step(space: ParamSpace, point, levy: LevyParams, rng: Rng) -> tuple:
    """Move every coordinate by a signed Levy step scaled to its range."""
    moved = []
    for d, v in zip(space.dimensions, point):
        sign = 1.0 if rng.random() < 0.5 else -1.0
        step = sample_levy(levy, rng) * (d.upper - d.lower)
        moved.append(v + sign * step)
    return space.clip(moved)


def tune(job: TuneJob) -> TuneResult:
    """Search the parameter box for the point with the best mean F1."""
    rng = Rng(derive_seed("meta", job.seed))
    space = job.space
    calls = 0
    evaluated = 0

    def evaluate(point):
        nonlocal calls, evaluated
        params = point_to_params(job.algorithm, space, point)
        samples, spent = evaluate_params(
            job.algorithm, params, job.budget, job.corpus, job.runs, job.seed
        )
        calls += spent
        evaluated += 1
        return Candidate(point, params, samples)

    def by_mean(c):
        return c.mean

    if space.pinned:
        nests = [evaluate(space.clip([d.lower for d in space.dimensions]))]
        iterations = 0
    else:
        nests = [evaluate(space.random_point(rng)) for _ in range(job.meta_nests)]
        iterations = job.meta_iterations
    nests.sort(key=by_mean)
    history = [nests[-1].mean]
    for it in range(iterations):
        i = rng.below(len(nests))
        challenger = evaluate(levy_step(space, nests[i].point, job.meta_levy, rng))
        j = i
        while len(nests) > 1 and j == i:
            j = rng.below(len(nests))
        if challenger_wins(challenger.samples, nests[j].samples, job.alpha):
            nests[j] = challenger
        nests.sort(key=by_mean)
        for d in range(job.meta_destroyed):
            nests[d] = evaluate(space.random_point(rng))
        if job.meta_destroyed:
            nests.sort(key=by_mean)
        history.append(nests[-1].mean)
        log.info("%s meta-iteration %d: best mean F1 %.4f", job.algorithm, it + 1, nests[-1].mean)
    best = nests[-1]
    return TuneResult(
        job.algorithm, job.budget, best.params, best.point, best.mean,
        list(best.samples), evaluated, calls, history,
    )


def split_tuning_subset(corpus: CorpusFile, sentences_per_doc: int):
    """Split each document into its first ``sentences_per_doc`` sentences and the rest.

    Returns ``(tuning, evaluation)`` corpora.  Documents whose words all go to
    the tuning side are left out of the evaluation corpus, with a warning.
    """
    if sentences_per_doc < 1:
        raise InvalidInputError("sentences_per_doc must be positive")
    tuning = CorpusFile()
    evaluation = CorpusFile()
    for doc, gold in corpus:
        if not doc.has_sentences:
            raise InvalidInputError(f"document {doc.name!r} has no sentence boundaries")
        seen = []
        cut = len(doc)
        for i, w in enumerate(doc.words):
            if not seen or seen[-1] != w.sentence_index:
                if len(seen) == sentences_per_doc:
                    cut = i
                    break
                seen.append(w.sentence_index)
        for target, lo, hi in ((tuning, 0, cut), (evaluation, cut, len(doc))):
            if hi > lo:
                target.documents.append(Document(doc.words[lo:hi], doc.name))
                target.golds.append(GoldStandard(gold.senses[lo:hi]))
    if len(evaluation) < len(corpus):
        warnings.warn(
            f"{len(corpus) - len(evaluation)} document(s) fully used for tuning; "
            "evaluation corpus is smaller",
            stacklevel=2,
        )
    return tuning, evaluation
