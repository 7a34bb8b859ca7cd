"""Seeded multi-run experiments, anytime-curve averaging and CSV output.

Every run gets a fresh scorer per document and a seed derived from
``(base seed, algorithm, budget, run, document)``, so results do not depend
on execution order or on the number of worker processes.

Files written to the output directory:

``<algorithm>_<budget>.csv``
    ``algorithm,budget,call,mean_f1,stddev_f1``, one row per call 1..budget.
``<algorithm>_<budget>_finals.csv``
    ``algorithm,budget,run,seed,final_f1,calls``, one row per run.
``summary.csv``
    final mean/stddev per (algorithm, budget) and two-sided U-test p-values
    against every other algorithm at the same budget (``p_vs_<name>``).
"""

from __future__ import annotations

import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np

from .algorithms import ALGORITHMS, params_from_mapping, preset_for, run_algorithm
from .core import Document, WordSlot, derive_seed
from .corpus import CorpusFile, load_corpus
from .errors import ConfigError, CorpusParseError, InvalidInputError
from .scorer import BudgetedScorer, GoldStandard
from .stats import mann_whitney_u

log = logging.getLogger(__name__)

OUT_ENV = "WSDSEARCH_OUT"
CURVE_HEADER = "algorithm,budget,call,mean_f1,stddev_f1"
FINALS_HEADER = "algorithm,budget,run,seed,final_f1,calls"
SCOPES = ("document", "corpus")


@dataclass
class ExperimentSpec:
    corpus: Path
    algorithms: list
    budgets: list
    runs: int = 100
    seed: int = 0
    out_dir: Optional[Path] = None
    params: dict = field(default_factory=dict)
    use_presets: bool = False
    budget_scope: str = "document"
    jobs: int = 1

    def __post_init__(self):
        if not self.algorithms:
            raise ConfigError("no algorithms given")
        for name in self.algorithms:
            if name not in ALGORITHMS:
                raise ConfigError(f"unknown algorithm {name!r}; choose from {', '.join(ALGORITHMS)}")
        if len(set(self.algorithms)) != len(self.algorithms):
            raise ConfigError("duplicate algorithm")
        if not self.budgets or any(b < 1 for b in self.budgets):
            raise ConfigError("budgets must be positive integers")
        if self.runs < 1:
            raise ConfigError("runs must be at least 1")
        if self.budget_scope not in SCOPES:
            raise ConfigError(f"budget_scope must be one of {', '.join(SCOPES)}")
        if self.jobs < 1:
            raise ConfigError("jobs must be at least 1")
        for name in self.params:
            if name not in self.algorithms:
                raise ConfigError(f"parameters given for unused algorithm {name!r}")

    def params_for(self, algorithm: str, budget: int):
        if algorithm in self.params:
            return self.params[algorithm]
        if self.use_presets:
            return preset_for(algorithm, budget)
        raise ConfigError(
            f"no parameters for {algorithm} at budget {budget} (give them or enable presets)"
        )


@dataclass
class RunCurve:
    """Best-so-far F1 change points of one run."""

    points: list
    algorithm: str
    seed: int
    budget: int

    def dense(self) -> np.ndarray:
        return dense_curve(self.points, self.budget)


@dataclass
class AveragedCurve:
    algorithm: str
    budget: int
    mean: np.ndarray
    std: np.ndarray
    finals: list
    seeds: list
    calls: list


def dense_curve(points, budget: int) -> np.ndarray:
    """Best-so-far value at every call 1..budget, carried forward past the last point."""
    if not points:
        raise InvalidInputError("empty trace")
    calls = np.array([c for c, _ in points], dtype=np.int64)
    values = np.array([v for _, v in points], dtype=np.float64)
    grid = np.arange(1, budget + 1)
    idx = np.searchsorted(calls, grid, side="right") - 1
    return values[np.maximum(idx, 0)]


def concatenate_corpus(corpus: CorpusFile) -> CorpusFile:
    """Join all documents into one, keeping sentence indices increasing."""
    words, senses = [], []
    offset = 0
    for doc, gold in corpus:
        top = 0
        for w in doc.words:
            sentence = None if w.sentence_index is None else w.sentence_index + offset
            words.append(WordSlot(w.surface, w.sense_count, sentence))
            if w.sentence_index is not None:
                top = max(top, w.sentence_index + 1)
        offset += top
        senses.append(gold.senses)
    doc = Document(tuple(words), "corpus")
    return CorpusFile([doc], [GoldStandard(np.concatenate(senses))])


def run_seed(base_seed: int, algorithm: str, budget: int, run: int) -> int:
    return derive_seed(base_seed, algorithm, budget, run)


def run_once(algorithm, params, budget, corpus: CorpusFile, seed: int, target=None):
    """One run over every document; returns (dense corpus curve, per-document calls)."""
    curves = []
    calls = []
    for d, (doc, gold) in enumerate(corpus):
        scorer = BudgetedScorer(gold, budget, target=target)
        best = run_algorithm(algorithm, doc, scorer, params, derive_seed(seed, d))
        if scorer.call_count > budget:
            raise RuntimeError(f"{algorithm} used {scorer.call_count} calls on a budget of {budget}")
        if best is not scorer.best_config:
            raise RuntimeError(f"{algorithm} did not return the scorer's best configuration")
        curves.append(dense_curve(scorer.trace, budget))
        calls.append(scorer.call_count)
    return np.mean(curves, axis=0), calls


def _run_task(task):
    algorithm, params, budget, corpus, seed = task
    return run_once(algorithm, params, budget, corpus, seed)


def run_experiment(spec: ExperimentSpec, corpus: Optional[CorpusFile] = None, write: bool = True):
    """Run every (algorithm, budget) pair ``spec.runs`` times; return averaged curves.

    The result maps ``(algorithm, budget)`` to :class:`AveragedCurve`.  CSV
    files are written when ``write`` is true and ``spec.out_dir`` is set.
    """
    if corpus is None:
        corpus = load_corpus(spec.corpus)
    if len(corpus) == 0:
        raise CorpusParseError("corpus has no documents")
    if spec.budget_scope == "corpus":
        corpus = concatenate_corpus(corpus)
    plan = []
    for algorithm in spec.algorithms:
        for budget in spec.budgets:
            params = spec.params_for(algorithm, budget)
            seeds = [run_seed(spec.seed, algorithm, budget, r) for r in range(spec.runs)]
            plan.append((algorithm, budget, params, seeds))
    tasks = [(a, p, b, corpus, s) for a, b, p, seeds in plan for s in seeds]
    if spec.jobs > 1:
        with ProcessPoolExecutor(max_workers=spec.jobs) as pool:
            outcomes = list(pool.map(_run_task, tasks, chunksize=max(1, len(tasks) // (4 * spec.jobs))))
    else:
        outcomes = [_run_task(t) for t in tasks]
    results = {}
    pos = 0
    for algorithm, budget, _, seeds in plan:
        chunk = outcomes[pos:pos + len(seeds)]
        pos += len(seeds)
        matrix = np.vstack([curve for curve, _ in chunk])
        results[(algorithm, budget)] = AveragedCurve(
            algorithm,
            budget,
            matrix.mean(axis=0),
            matrix.std(axis=0),
            [float(curve[-1]) for curve, _ in chunk],
            list(seeds),
            [sum(c) for _, c in chunk],
        )
        log.info("%s @ %d: mean final F1 %.4f", algorithm, budget, results[(algorithm, budget)].mean[-1])
    if write and spec.out_dir is not None:
        write_results(results, spec.out_dir)
    return results


def compare_at_budget(finals_a, finals_b, alpha: float = 0.05):
    """U test between two samples of per-run final F1 values."""
    return mann_whitney_u(finals_a, finals_b, alpha)


def _fmt(x: float) -> str:
    return f"{x:.6f}"


def write_curve_csv(path, curve: AveragedCurve) -> None:
    prefix = f"{curve.algorithm},{curve.budget},"
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(CURVE_HEADER + "\n")
        for call, (m, s) in enumerate(zip(curve.mean.tolist(), curve.std.tolist()), start=1):
            fh.write(f"{prefix}{call},{m:.6f},{s:.6f}\n")


def write_finals_csv(path, curve: AveragedCurve) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(FINALS_HEADER + "\n")
        for run, (seed, final, calls) in enumerate(zip(curve.seeds, curve.finals, curve.calls)):
            fh.write(f"{curve.algorithm},{curve.budget},{run},{seed},{_fmt(final)},{calls}\n")


def write_summary_csv(path, results: dict) -> None:
    algorithms = list(dict.fromkeys(a for a, _ in results))
    header = "algorithm,budget,runs,mean_final_f1,stddev_final_f1," + ",".join(
        f"p_vs_{a}" for a in algorithms
    )
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(header + "\n")
        for (algorithm, budget), curve in results.items():
            finals = np.array(curve.finals)
            cells = [algorithm, str(budget), str(len(finals)), _fmt(finals.mean()), _fmt(finals.std())]
            for other in algorithms:
                peer = results.get((other, budget))
                if other == algorithm or peer is None:
                    cells.append("")
                else:
                    cells.append(_fmt(compare_at_budget(curve.finals, peer.finals).p_value))
            fh.write(",".join(cells) + "\n")


def write_results(results: dict, out_dir) -> list:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for (algorithm, budget), curve in results.items():
        path = out / f"{algorithm}_{budget}.csv"
        write_curve_csv(path, curve)
        finals = out / f"{algorithm}_{budget}_finals.csv"
        write_finals_csv(finals, curve)
        written += [path, finals]
    summary = out / "summary.csv"
    write_summary_csv(summary, results)
    written.append(summary)
    return written


def read_finals_csv(path) -> list:
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    if not lines or lines[0] != FINALS_HEADER:
        raise CorpusParseError(f"{path}: expected header {FINALS_HEADER!r}", 1)
    values = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line:
            continue
        parts = line.split(",")
        if len(parts) != 6:
            raise CorpusParseError(f"{path}: expected 6 fields", lineno)
        try:
            values.append(float(parts[4]))
        except ValueError:
            raise CorpusParseError(f"{path}: bad final_f1", lineno) from None
    return values


# -- flat key-value configuration -------------------------------------------

_TRUE = {"1", "true", "yes", "on"}
_FALSE = {"0", "false", "no", "off"}


def parse_config(text: str) -> dict:
    """Parse ``key = value`` lines; ``#`` starts a comment line."""
    values = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        if not sep or not key.strip():
            raise ConfigError(f"config line {lineno}: expected 'key = value'")
        values[key.strip()] = value.strip()
    return values


def _split_list(value: str) -> list:
    return [v.strip() for v in value.replace(",", " ").split() if v.strip()]


def _as_int(key, value):
    try:
        return int(value)
    except (TypeError, ValueError):
        raise ConfigError(f"{key}: expected an integer, got {value!r}") from None


def _as_bool(key, value):
    lowered = str(value).lower()
    if lowered in _TRUE:
        return True
    if lowered in _FALSE:
        return False
    raise ConfigError(f"{key}: expected a boolean, got {value!r}")


_SPEC_KEYS = {"corpus", "budgets", "runs", "seed", "algorithms", "out", "preset_table",
              "budget_scope", "jobs"}


def spec_from_config(values: dict, base_dir: Optional[Path] = None) -> ExperimentSpec:
    """Build an :class:`ExperimentSpec` from parsed config values.

    Keys: ``corpus``, ``budgets``, ``runs``, ``seed``, ``algorithms``,
    ``out``, ``preset_table``, ``budget_scope``, ``jobs`` and
    ``<algorithm>.<parameter>`` for explicit parameters.  Relative paths are
    resolved against ``base_dir``.
    """
    grouped = {}
    for key, value in values.items():
        if "." in key:
            algorithm, _, name = key.partition(".")
            grouped.setdefault(algorithm, {})[name] = value
        elif key not in _SPEC_KEYS:
            raise ConfigError(f"unknown config key {key!r}")
    if "corpus" not in values:
        raise ConfigError("config needs 'corpus'")

    def path(value):
        p = Path(value)
        return p if p.is_absolute() or base_dir is None else base_dir / p

    algorithms = _split_list(values.get("algorithms", ""))
    if not algorithms:
        algorithms = list(grouped)
    try:
        params = {a: params_from_mapping(a, v) for a, v in grouped.items()}
    except InvalidInputError as exc:
        raise ConfigError(str(exc)) from None
    return ExperimentSpec(
        corpus=path(values["corpus"]),
        algorithms=algorithms,
        budgets=[_as_int("budgets", b) for b in _split_list(values.get("budgets", ""))],
        runs=_as_int("runs", values.get("runs", 100)),
        seed=_as_int("seed", values.get("seed", 0)),
        out_dir=path(values["out"]) if "out" in values else None,
        params=params,
        use_presets=_as_bool("preset_table", values.get("preset_table", "false")),
        budget_scope=values.get("budget_scope", "document"),
        jobs=_as_int("jobs", values.get("jobs", 1)),
    )


def default_out_dir(flag: Optional[str], configured: Optional[Path]) -> Optional[Path]:
    """Output directory: the flag wins, then the environment, then the config."""
    if flag:
        return Path(flag)
    env = os.environ.get(OUT_ENV)
    if env:
        return Path(env)
    return configured
