"""Stochastic global search (SA, GA, bat, cuckoo) for word sense assignment.

Configurations are scored by an oracle F1 against a gold standard under a
scorer-call budget; the harness turns seeded runs into anytime curves.
"""

from .core import Document, Rng, WordSlot, derive_seed, hamming_distance, make_random_changes, random_configuration
from .errors import BudgetExhausted, ConfigError, CorpusParseError, InvalidInputError
from .scorer import UNANNOTATED, BudgetedScorer, GoldStandard, f1

__version__ = "0.1.0"
