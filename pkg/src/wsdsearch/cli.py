"""Command line interface: run, tune, gen-corpus, score, compare."""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import replace
from pathlib import Path

from . import harness
from .algorithms import ALGORITHMS, params_to_mapping
from .corpus import generate_corpus, load_assignments, load_corpus, save_corpus
from .errors import ConfigError, CorpusParseError, InvalidInputError
from .levy import LevyParams
from .scorer import f1
from .tuning import TuneJob, split_tuning_subset, tune

log = logging.getLogger("wsdsearch")


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="wsdsearch",
        description="Stochastic global search for sense assignment, with an oracle F1 benchmark.",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run an experiment and write CSV curves")
    run.add_argument("config", nargs="?", help="flat key = value experiment file")
    run.add_argument("--corpus")
    run.add_argument("--algo", action="append", choices=sorted(ALGORITHMS))
    run.add_argument("--budget", action="append", type=int)
    run.add_argument("--runs", type=int)
    run.add_argument("--seed", type=int)
    run.add_argument("--out")
    run.add_argument("--preset-table", action="store_true", help="use the shipped parameter tables")
    run.add_argument("--budget-scope", choices=harness.SCOPES)
    run.add_argument("--jobs", type=int)

    tn = sub.add_parser("tune", help="estimate parameters with a meta-level cuckoo search")
    tn.add_argument("--corpus", required=True)
    tn.add_argument("--algo", required=True, choices=sorted(ALGORITHMS))
    tn.add_argument("--budget", type=int, required=True)
    tn.add_argument("--runs", type=int, default=30, help="runs per candidate")
    tn.add_argument("--sentences", type=int, default=2,
                    help="leading sentences per document used for tuning (0: whole corpus)")
    tn.add_argument("--meta-iterations", type=int, default=50)
    tn.add_argument("--meta-nests", type=int, default=3)
    tn.add_argument("--meta-destroyed", type=int, default=0)
    tn.add_argument("--meta-levy-location", type=float, default=0.0)
    tn.add_argument("--meta-levy-scale", type=float, default=0.02)
    tn.add_argument("--alpha", type=float, default=0.05)
    tn.add_argument("--seed", type=int, default=0)
    tn.add_argument("--out", help="directory for tune_<algo>_<budget>.txt/.csv")

    gen = sub.add_parser("gen-corpus", help="write a random synthetic corpus")
    gen.add_argument("--docs", type=int, default=5)
    gen.add_argument("--words", type=int, default=100)
    gen.add_argument("--max-senses", type=int, default=9)
    gen.add_argument("--sentence-length", type=int, default=20)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", required=True)

    sc = sub.add_parser("score", help="F1 of an assignment file against the corpus gold")
    sc.add_argument("--corpus", required=True)
    sc.add_argument("assignments")

    cmp_ = sub.add_parser("compare", help="Mann-Whitney U test between two *_finals.csv files")
    cmp_.add_argument("first")
    cmp_.add_argument("second")
    cmp_.add_argument("--alpha", type=float, default=0.05)
    return parser


def cmd_run(args):
    if args.config:
        path = Path(args.config)
        values = harness.parse_config(path.read_text(encoding="utf-8"))
        base = path.parent
    else:
        values, base = {}, None
    if args.corpus:
        values["corpus"] = args.corpus
    if args.algo:
        values["algorithms"] = ",".join(args.algo)
    if args.budget:
        values["budgets"] = ",".join(map(str, args.budget))
    for key in ("runs", "seed", "jobs"):
        if getattr(args, key) is not None:
            values[key] = str(getattr(args, key))
    if args.preset_table:
        values["preset_table"] = "true"
    if args.budget_scope:
        values["budget_scope"] = args.budget_scope
    spec = harness.spec_from_config(values, base)
    spec = replace(spec, out_dir=harness.default_out_dir(args.out, spec.out_dir))
    if spec.out_dir is None:
        raise ConfigError(f"no output directory (use --out, 'out =' or ${harness.OUT_ENV})")
    results = harness.run_experiment(spec)
    for (algorithm, budget), curve in results.items():
        print(f"{algorithm}\t{budget}\tmean_final_f1={curve.mean[-1]:.6f}")
    print(f"wrote {len(results)} curve(s) to {spec.out_dir}")


def tune_report(result, job) -> str:
    lines = [
        f"# tuned {result.algorithm} at budget {result.budget}",
        f"# mean_f1 = {result.mean_f1:.6f}",
        f"# runs_per_candidate = {job.runs}",
        f"# evaluated_candidates = {result.evaluated_candidates}",
        f"# scorer_calls = {result.scorer_calls}",
        "# samples = " + " ".join(f"{s:.6f}" for s in result.samples),
    ]
    for name, value in params_to_mapping(result.best_params).items():
        lines.append(f"{result.algorithm}.{name} = {value}")
    return "\n".join(lines) + "\n"


def tune_record(result) -> str:
    params = params_to_mapping(result.best_params)
    header = ["algorithm", "budget", "mean_f1", "evaluated_candidates", "scorer_calls", *params]
    row = [result.algorithm, str(result.budget), f"{result.mean_f1:.6f}",
           str(result.evaluated_candidates), str(result.scorer_calls),
           *(str(v) for v in params.values())]
    return ",".join(header) + "\n" + ",".join(row) + "\n"


def cmd_tune(args):
    corpus = load_corpus(args.corpus)
    if args.sentences > 0:
        corpus, _ = split_tuning_subset(corpus, args.sentences)
    job = TuneJob(
        algorithm=args.algo,
        budget=args.budget,
        corpus=corpus,
        runs=args.runs,
        meta_iterations=args.meta_iterations,
        meta_nests=args.meta_nests,
        meta_destroyed=args.meta_destroyed,
        meta_levy=LevyParams(args.meta_levy_location, args.meta_levy_scale),
        alpha=args.alpha,
        seed=args.seed,
    )
    result = tune(job)
    report = tune_report(result, job)
    sys.stdout.write(report)
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        stem = f"tune_{result.algorithm}_{result.budget}"
        (out / f"{stem}.txt").write_text(report, encoding="utf-8")
        (out / f"{stem}.csv").write_text(tune_record(result), encoding="utf-8")


def cmd_gen_corpus(args):
    corpus = generate_corpus(args.docs, args.words, args.max_senses, args.sentence_length, args.seed)
    save_corpus(corpus, args.out)
    print(f"wrote {len(corpus)} document(s), {corpus.word_count} words to {args.out}")


def cmd_score(args):
    corpus = load_corpus(args.corpus)
    assignments = load_assignments(args.assignments)
    scores = []
    for doc, gold in corpus:
        if doc.name not in assignments:
            raise InvalidInputError(f"no assignment for document {doc.name!r}")
        value = f1(assignments[doc.name], gold)
        scores.append(value)
        print(f"{doc.name}\t{value:.6f}")
    print(f"mean\t{sum(scores) / len(scores):.6f}")


def cmd_compare(args):
    a = harness.read_finals_csv(args.first)
    b = harness.read_finals_csv(args.second)
    result = harness.compare_at_budget(a, b, args.alpha)
    print(f"n_a = {len(a)}")
    print(f"n_b = {len(b)}")
    print(f"mean_a = {sum(a) / len(a):.6f}")
    print(f"mean_b = {sum(b) / len(b):.6f}")
    print(f"u = {result.u_statistic:g}")
    print(f"p = {result.p_value:.6f}")
    print(f"method = {result.method}")
    print(f"significant = {str(result.significant).lower()}")


COMMANDS = {
    "run": cmd_run,
    "tune": cmd_tune,
    "gen-corpus": cmd_gen_corpus,
    "score": cmd_score,
    "compare": cmd_compare,
}


def main(argv=None):
    args = _build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        COMMANDS[args.command](args)
    except (ConfigError, CorpusParseError, InvalidInputError, OSError) as exc:
        print(f"wsdsearch {args.command}: error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
