"""Corpus files, assignment files and the synthetic corpus generator.

Corpus format (UTF-8, ``\\n`` line endings)::

    # comment
    @doc <name>
    <surface> <senseCount> <sentenceIndex> <gold>

Fields are separated by single ASCII spaces.  ``<gold>`` is a 0-based sense
index or ``-`` for an unannotated word.

Assignment files (input of ``score``) use the same ``@doc`` headers followed
by whitespace-separated 0-based sense indices, which may span lines.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .core import Document, Rng, WordSlot
from .errors import CorpusParseError, InvalidInputError
from .scorer import UNANNOTATED, GoldStandard


@dataclass
class CorpusFile:
    documents: list = field(default_factory=list)
    golds: list = field(default_factory=list)

    def __post_init__(self):
        if len(self.documents) != len(self.golds):
            raise InvalidInputError("documents and golds differ in length")
        for doc, gold in zip(self.documents, self.golds):
            gold.check_against(doc)

    def __len__(self):
        return len(self.documents)

    def __iter__(self):
        return iter(zip(self.documents, self.golds))

    @property
    def word_count(self) -> int:
        return sum(len(d) for d in self.documents)


def parse_corpus(text: str) -> CorpusFile:
    documents, golds = [], []
    name = None
    words, gold = [], []

    def flush():
        if name is None:
            return
        if not words:
            raise CorpusParseError(f"document {name!r} has no words", header_line)
        doc = Document(tuple(words), name)
        g = GoldStandard(np.array(gold, dtype=np.int64))
        documents.append(doc)
        golds.append(g)

    header_line = None
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.rstrip("\r")
        if not line or line.startswith("#"):
            continue
        if line.startswith("@doc"):
            rest = line[4:]
            if not rest.startswith(" ") or not rest[1:]:
                raise CorpusParseError("expected '@doc <name>'", lineno)
            flush()
            name, header_line = rest[1:], lineno
            words, gold = [], []
            continue
        if name is None:
            raise CorpusParseError("word line before any '@doc' header", lineno)
        parts = line.split(" ")
        if len(parts) != 4 or not all(parts):
            raise CorpusParseError(
                "expected '<surface> <senseCount> <sentenceIndex> <gold>'", lineno
            )
        surface, k, sentence, g = parts
        try:
            k = int(k)
            sentence = int(sentence)
            g = UNANNOTATED if g == "-" else int(g)
        except ValueError:
            raise CorpusParseError("non-integer field", lineno) from None
        if k < 1:
            raise CorpusParseError("sense count must be >= 1", lineno)
        if sentence < 0:
            raise CorpusParseError("sentence index must be >= 0", lineno)
        if words and sentence < words[-1].sentence_index:
            raise CorpusParseError("sentence index decreases", lineno)
        if g != UNANNOTATED and not 0 <= g < k:
            raise InvalidInputError(
                f"line {lineno}: word {len(words)} of document {name!r}: "
                f"gold sense {g} outside [0, {k})"
            )
        words.append(WordSlot(surface, k, sentence))
        gold.append(g)
    flush()
    return CorpusFile(documents, golds)


def load_corpus(path) -> CorpusFile:
    return parse_corpus(Path(path).read_text(encoding="utf-8"))


def dump_corpus(corpus: CorpusFile) -> str:
    lines = []
    for doc, gold in corpus:
        lines.append(f"@doc {doc.name}")
        for w, g in zip(doc.words, gold.senses):
            if w.sentence_index is None:
                raise InvalidInputError(f"document {doc.name!r} lacks sentence indices")
            gold_text = "-" if g == UNANNOTATED else str(int(g))
            lines.append(f"{w.surface} {w.sense_count} {w.sentence_index} {gold_text}")
    return "".join(line + "\n" for line in lines)


def save_corpus(corpus: CorpusFile, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dump_corpus(corpus))


def generate_corpus(
    doc_count: int, words_per_doc: int, max_senses: int, sentence_length: int, seed: int
) -> CorpusFile:
    """Random fully annotated corpus; sense counts are uniform in [1, max_senses]."""
    for label, value in (
        ("doc_count", doc_count),
        ("words_per_doc", words_per_doc),
        ("max_senses", max_senses),
        ("sentence_length", sentence_length),
    ):
        if value < 1:
            raise InvalidInputError(f"{label} must be positive")
    rng = Rng(seed)
    documents, golds = [], []
    for d in range(doc_count):
        words, gold = [], []
        for i in range(words_per_doc):
            k = 1 + rng.below(max_senses)
            words.append(WordSlot(f"w{i}", k, i // sentence_length))
            gold.append(rng.below(k))
        documents.append(Document(tuple(words), f"doc{d}"))
        golds.append(GoldStandard(np.array(gold, dtype=np.int64)))
    return CorpusFile(documents, golds)


def parse_assignments(text: str) -> dict:
    """Map document name to its sense vector."""
    result = {}
    name = None
    values = []
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("@doc"):
            if name is not None:
                result[name] = np.array(values, dtype=np.int64)
            name = line[4:].strip()
            if not name:
                raise CorpusParseError("expected '@doc <name>'", lineno)
            if name in result:
                raise CorpusParseError(f"duplicate document {name!r}", lineno)
            values = []
            continue
        if name is None:
            raise CorpusParseError("senses before any '@doc' header", lineno)
        try:
            values.extend(int(tok) for tok in line.split())
        except ValueError:
            raise CorpusParseError("non-integer sense", lineno) from None
    if name is not None:
        result[name] = np.array(values, dtype=np.int64)
    return result


def load_assignments(path) -> dict:
    return parse_assignments(Path(path).read_text(encoding="utf-8"))


def dump_assignments(assignments: dict) -> str:
    lines = []
    for name, cfg in assignments.items():
        lines.append(f"@doc {name}")
        lines.append(" ".join(str(int(s)) for s in cfg))
    return "".join(line + "\n" for line in lines)
