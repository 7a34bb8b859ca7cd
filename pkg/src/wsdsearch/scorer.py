"""Oracle F1 objective and the call-counting scorer wrapped around it."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import BudgetExhausted, InvalidInputError

UNANNOTATED = -1


@dataclass(frozen=True)
class GoldStandard:
    """Reference senses aligned with a document; ``UNANNOTATED`` marks gaps."""

    senses: np.ndarray

    def __post_init__(self):
        senses = np.array(self.senses, dtype=np.int64, copy=True)
        if senses.ndim != 1:
            raise InvalidInputError("gold standard must be one-dimensional")
        if np.any(senses < UNANNOTATED):
            raise InvalidInputError("gold senses must be >= 0 or UNANNOTATED")
        senses.setflags(write=False)
        object.__setattr__(self, "senses", senses)

    def __len__(self):
        return self.senses.shape[0]

    def __eq__(self, other):
        if not isinstance(other, GoldStandard):
            return NotImplemented
        return np.array_equal(self.senses, other.senses)

    __hash__ = None

    @property
    def annotated_count(self) -> int:
        return int(np.count_nonzero(self.senses != UNANNOTATED))

    def check_against(self, doc) -> None:
        """Raise if this gold does not fit ``doc``'s word count and sense ranges."""
        if len(self) != len(doc):
            raise InvalidInputError(
                f"gold has {len(self)} entries, document {doc.name!r} has {len(doc)} words"
            )
        bad = np.flatnonzero(self.senses >= doc.sense_counts)
        if bad.size:
            raise InvalidInputError(f"gold sense out of range at word {int(bad[0])}")


def f1_from_counts(correct: int, attempted: int, annotated: int) -> float:
    if correct == 0:
        return 0.0
    precision = correct / attempted
    recall = correct / annotated
    return 2.0 * precision * recall / (precision + recall)


def f1(cfg, gold: GoldStandard) -> float:
    """F1 of a configuration against the gold standard.

    Precision is taken over every word (a configuration always answers), and
    recall over the annotated words only.
    """
    cfg = np.asarray(cfg)
    if cfg.shape[0] != len(gold):
        raise InvalidInputError(f"length mismatch: {cfg.shape[0]} vs {len(gold)}")
    correct = int(np.count_nonzero(cfg == gold.senses))
    return f1_from_counts(correct, cfg.shape[0], gold.annotated_count)


class BudgetedScorer:
    """F1 oracle limited to ``budget`` calls that remembers the best result.

    ``trace`` holds ``(call_index, best_score)`` change points.  Once the
    budget is spent, :meth:`score` raises :class:`BudgetExhausted` and leaves
    all state untouched.  If ``target`` is given, reaching a score of at
    least ``target`` also ends the run (used to stop runs early once a known
    optimum is found).
    """

    def __init__(self, gold: GoldStandard, budget: int, target: Optional[float] = None):
        if budget < 1:
            raise InvalidInputError("budget must be positive")
        self.gold = gold
        self.budget = int(budget)
        self.target = target
        self.call_count = 0
        self.best_score = float("-inf")
        self.best_config: Optional[np.ndarray] = None
        self.trace: list = []
        self._senses = gold.senses
        self._n = len(gold)
        self._annotated = gold.annotated_count
        self._hit_target = False

    @property
    def exhausted(self) -> bool:
        return self.call_count >= self.budget or self._hit_target

    @property
    def remaining(self) -> int:
        return 0 if self._hit_target else self.budget - self.call_count

    def score(self, cfg: np.ndarray) -> float:
        if self.call_count >= self.budget or self._hit_target:
            raise BudgetExhausted()
        if cfg.shape[0] != self._n:
            raise InvalidInputError(f"length mismatch: {cfg.shape[0]} vs {self._n}")
        self.call_count += 1
        value = f1_from_counts(int(np.count_nonzero(cfg == self._senses)), self._n, self._annotated)
        if value > self.best_score:
            self.best_score = value
            self.best_config = cfg.copy()
            self.trace.append((self.call_count, value))
            if self.target is not None and value >= self.target:
                self._hit_target = True
        return value
