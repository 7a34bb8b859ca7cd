"""Search space: documents, sense configurations and the random-change move.

A configuration is a 1-D ``numpy`` integer array holding one sense index per
word.  Configurations are treated as values: every function here returns a
fresh array and never mutates its inputs.

All randomness flows through :class:`Rng`, a thin wrapper over the Mersenne
Twister (MT19937) in :mod:`random`.  Every draw is derived from
``random.Random.random()``, whose sequence for a given integer seed is
guaranteed stable across Python versions and platforms.
"""

from __future__ import annotations

import hashlib
import math
import random
from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Sequence

import numpy as np

from .errors import InvalidInputError

MASK64 = (1 << 64) - 1

# make_random_changes switches to the exact bulk sampler at this many changes.
BULK_THRESHOLD = 64


def derive_seed(*parts) -> int:
    """Derive a 64-bit seed from an ordered tuple of ints and strings.

    Uses BLAKE2b over a canonical text encoding, so the result depends only
    on the parts and never on scheduling or hash randomisation.
    """
    text = "\x1f".join(str(p) for p in parts).encode("utf-8")
    return int.from_bytes(hashlib.blake2b(text, digest_size=8).digest(), "little")


class Rng:
    """Seeded random stream (MT19937).

    One instance belongs to one run and is never shared between runs.
    """

    __slots__ = ("seed", "_random")

    def __init__(self, seed: int):
        if seed < 0:
            raise InvalidInputError("seed must be non-negative")
        self.seed = seed & MASK64
        self._random = random.Random(self.seed).random

    def random(self) -> float:
        """Uniform draw in [0, 1)."""
        return self._random()

    def uniform(self, low: float, high: float) -> float:
        return low + (high - low) * self._random()

    def below(self, n: int) -> int:
        """Uniform integer in [0, n)."""
        return int(self._random() * n)

    def normal(self) -> float:
        """Standard normal draw (Box-Muller, cosine branch)."""
        u1 = 1.0 - self._random()
        u2 = self._random()
        return math.sqrt(-2.0 * math.log(u1)) * math.cos(2.0 * math.pi * u2)

    def next_seed(self) -> int:
        hi = int(self._random() * 4294967296.0)
        lo = int(self._random() * 4294967296.0)
        return (hi << 32) | lo


@dataclass(frozen=True)
class WordSlot:
    surface: str
    sense_count: int
    sentence_index: Optional[int] = 0

    def __post_init__(self):
        if self.sense_count < 1:
            raise InvalidInputError(f"word {self.surface!r}: sense count must be >= 1")
        if self.sentence_index is not None and self.sentence_index < 0:
            raise InvalidInputError(f"word {self.surface!r}: negative sentence index")


@dataclass(frozen=True)
class Document:
    """An ordered sequence of words to disambiguate."""

    words: tuple
    name: str = "doc"

    def __post_init__(self):
        words = tuple(self.words)
        object.__setattr__(self, "words", words)
        previous = None
        for i, w in enumerate(words):
            if not isinstance(w, WordSlot):
                raise InvalidInputError(f"word {i} is not a WordSlot")
            if w.sentence_index is None:
                continue
            if previous is not None and w.sentence_index < previous:
                raise InvalidInputError(
                    f"document {self.name!r}: sentence index decreases at word {i}"
                )
            previous = w.sentence_index

    @classmethod
    def from_sense_counts(cls, counts: Sequence[int], name: str = "doc", sentence_length: int = 0):
        """Build a document with placeholder surfaces.

        ``sentence_length`` > 0 groups words into consecutive sentences of
        that size; 0 puts every word in sentence 0.
        """
        words = []
        for i, k in enumerate(counts):
            sentence = i // sentence_length if sentence_length > 0 else 0
            words.append(WordSlot(f"w{i}", int(k), sentence))
        return cls(tuple(words), name)

    def __len__(self):
        return len(self.words)

    @cached_property
    def sense_counts(self) -> np.ndarray:
        counts = np.array([w.sense_count for w in self.words], dtype=np.int64)
        counts.setflags(write=False)
        return counts

    @cached_property
    def polysemous(self) -> tuple:
        """Indices of words with at least two candidate senses."""
        return tuple(i for i, w in enumerate(self.words) if w.sense_count >= 2)

    @cached_property
    def _count_list(self) -> list:
        return [w.sense_count for w in self.words]

    @property
    def search_space_size(self) -> int:
        return math.prod(self._count_list)

    @property
    def has_sentences(self) -> bool:
        return all(w.sentence_index is not None for w in self.words)


def random_configuration(doc: Document, rng: Rng) -> np.ndarray:
    """Draw each word's sense uniformly and independently."""
    if len(doc) == 0:
        raise InvalidInputError("cannot build a configuration for an empty document")
    draw = rng.random
    return np.array([int(draw() * k) for k in doc._count_list], dtype=np.int64)


def validate_configuration(doc: Document, cfg) -> np.ndarray:
    cfg = np.asarray(cfg, dtype=np.int64)
    if cfg.ndim != 1 or cfg.shape[0] != len(doc):
        raise InvalidInputError(
            f"configuration has {cfg.size} entries, document has {len(doc)} words"
        )
    bad = np.flatnonzero((cfg < 0) | (cfg >= doc.sense_counts))
    if bad.size:
        raise InvalidInputError(f"sense out of range at word {int(bad[0])}")
    return cfg


def make_random_changes(doc: Document, cfg: np.ndarray, count: int, rng: Rng) -> np.ndarray:
    """Apply ``count`` sequential random changes to a copy of ``cfg``.

    Each change picks a polysemous word uniformly and moves it to one of its
    other senses, uniformly.  Changes may hit the same word repeatedly (and
    so revert each other).  Monosemous words are never selected; when there
    are none the copy is returned unchanged.

    Long flights (``BULK_THRESHOLD`` changes or more) are drawn with an
    exact bulk sampler: per-word hit counts are multinomial, and a
    word hit ``h`` times ends on its starting sense with probability
    ``1/k + (k-1)/k * (-1/(k-1))**h``.  The outcome distribution equals the
    sequential loop's; only the consumption of the random stream differs.
    """
    out = np.array(cfg, dtype=np.int64, copy=True)
    poly = doc.polysemous
    if count <= 0 or not poly:
        return out
    m = len(poly)
    if count >= BULK_THRESHOLD:
        return _bulk_changes(doc, out, count, rng)
    counts = doc._count_list
    draw = rng.random
    for _ in range(count):
        w = poly[int(draw() * m)]
        s = int(draw() * (counts[w] - 1))
        if s >= out[w]:
            s += 1
        out[w] = s
    return out


def _bulk_changes(doc: Document, out: np.ndarray, count: int, rng: Rng) -> np.ndarray:
    poly = np.asarray(doc.polysemous, dtype=np.int64)
    m = poly.size
    gen = np.random.Generator(np.random.PCG64(rng.next_seed()))
    hits = gen.multinomial(count, np.full(m, 1.0 / m))
    k = doc.sense_counts[poly]
    # (-1/(k-1))**h; for k == 2 this is exactly +-1 by parity
    decay = np.where(hits % 2 == 0, 1.0, -1.0) * np.power(1.0 / (k - 1.0), hits)
    stay = 1.0 / k + (k - 1.0) / k * decay
    u = gen.random(m)
    offset = (gen.random(m) * (k - 1)).astype(np.int64)
    current = out[poly]
    moved = np.where(offset >= current, offset + 1, offset)
    out[poly] = np.where(u < stay, current, moved)
    return out


def hamming_distance(a, b) -> int:
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        raise InvalidInputError(f"length mismatch: {a.size} vs {b.size}")
    return int(np.count_nonzero(a != b))
