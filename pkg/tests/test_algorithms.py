import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wsdsearch.algorithms import (
    ALGORITHMS,
    BaParams,
    CsaParams,
    GaParams,
    SaParams,
    bat_algorithm,
    cuckoo_search,
    genetic_algorithm,
    run_algorithm,
    simulated_annealing,
)
from wsdsearch.algorithms.genetic import mutate, one_point_crossover
from wsdsearch.core import Document, Rng, random_configuration
from wsdsearch.corpus import generate_corpus
from wsdsearch.errors import ConfigError
from wsdsearch.scorer import BudgetedScorer, GoldStandard

DEFAULTS = {"sa": SaParams(), "ga": GaParams(), "ba": BaParams(), "csa": CsaParams()}
# first accepted move finishes a bat, so the colony stops well before the budget
EARLY_BA = BaParams(10, 0.0, 2.0, 10.0, 10.0, 0.1, 0.5)


def small_params(name):
    return {
        "sa": SaParams(0.9, 20),
        "ga": GaParams(6, 0.5, 0.1),
        "ba": BaParams(4, 0.0, 2.0, 1.0, 5.0, 0.5, 0.5),
        "csa": CsaParams(3, 1, 1.0, 0.5),
    }[name]


@st.composite
def problems(draw):
    counts = draw(st.lists(st.integers(1, 5), min_size=1, max_size=12))
    gold = [draw(st.integers(0, k - 1)) for k in counts]
    return Document.from_sense_counts(counts), GoldStandard(gold)


@pytest.mark.parametrize("name", sorted(ALGORITHMS))
@given(problem=problems(), budget=st.integers(1, 300), seed=st.integers(0, 2**40))
@settings(max_examples=40, deadline=None)
def test_budget_and_returned_best(name, problem, budget, seed):
    doc, gold = problem
    scorer = BudgetedScorer(gold, budget)
    best = run_algorithm(name, doc, scorer, small_params(name), seed)
    assert scorer.call_count <= budget
    assert best is scorer.best_config
    if name != "ba":
        assert scorer.call_count == budget


@pytest.mark.parametrize("name", sorted(ALGORITHMS))
def test_deterministic(name):
    doc, gold = next(iter(generate_corpus(1, 40, 6, 10, 3)))
    traces = []
    for _ in range(2):
        scorer = BudgetedScorer(gold, 500)
        run_algorithm(name, doc, scorer, small_params(name), 99)
        traces.append(scorer.trace)
    assert traces[0] == traces[1]


@pytest.mark.parametrize("name", sorted(ALGORITHMS))
def test_single_word_document(name):
    doc = Document.from_sense_counts([5])
    gold = GoldStandard([3])
    found = 0
    for seed in range(100):
        scorer = BudgetedScorer(gold, 10_000, target=1.0)
        best = run_algorithm(name, doc, scorer, DEFAULTS[name], seed)
        found += best.tolist() == [3]
    assert found >= 99


def test_wrong_params_type():
    doc = Document.from_sense_counts([2])
    with pytest.raises(ConfigError):
        run_algorithm("sa", doc, BudgetedScorer(GoldStandard([0]), 5), GaParams(), 0)
    with pytest.raises(ConfigError):
        run_algorithm("tabu", doc, BudgetedScorer(GoldStandard([0]), 5), GaParams(), 0)


class TestAnnealing:
    def test_budget_one_returns_initial(self):
        doc = Document.from_sense_counts([4, 4, 4, 4])
        scorer = BudgetedScorer(GoldStandard([0, 1, 2, 3]), 1)
        best = simulated_annealing(doc, scorer, SaParams(), 17)
        assert best.tolist() == random_configuration(doc, Rng(17)).tolist()
        assert len(scorer.trace) == 1

    def test_zero_delta_always_accepted(self):
        # all words monosemous: every move has delta 0
        doc = Document.from_sense_counts([1, 1, 1])
        seen = []
        scorer = BudgetedScorer(GoldStandard([0, 0, 0]), 300)
        simulated_annealing(doc, scorer, SaParams(0.5, 10), 0, lambda c, d, a: seen.append((d, a)))
        assert seen and all(d == 0 and a for d, a in seen)

    def test_first_cycle_acceptance_of_worse_moves(self):
        # equal sense counts and full annotation: every worsening move has delta -1/n,
        # so the first cycle accepts it with probability exactly the target rate
        n = 100
        doc = Document.from_sense_counts([4] * n)
        worse = accepted = 0
        for seed in range(20):
            gold = GoldStandard(random_configuration(doc, Rng(1000 + seed)))
            events = []
            scorer = BudgetedScorer(gold, 50 + 1 + n)
            simulated_annealing(doc, scorer, SaParams(0.95, n), seed,
                                lambda c, d, a: events.append((c, d, a)))
            for cycle, delta, acc in events:
                if cycle == 0 and delta < 0:
                    worse += 1
                    accepted += acc
        assert worse > 500
        assert accepted / worse == pytest.approx(0.8, abs=0.1)


class TestGenetic:
    def test_crossover_example(self):
        a, b = one_point_crossover(np.array([0, 0, 0, 0]), np.array([1, 1, 1, 1]), 2)
        assert a.tolist() == [0, 0, 1, 1] and b.tolist() == [1, 1, 0, 0]

    def test_mutate_rate_zero_and_one(self):
        doc = Document.from_sense_counts([3, 1, 2, 4])
        child = np.array([0, 0, 1, 2])
        mutate(doc, child, 0.0, Rng(1))
        assert child.tolist() == [0, 0, 1, 2]
        for seed in range(50):
            child = np.array([0, 0, 1, 2])
            mutate(doc, child, 1.0, Rng(seed))
            assert child[0] != 0 and child[1] == 0 and child[2] == 0 and child[3] != 2

    def test_no_variation_never_improves_after_first_generation(self):
        doc, gold = next(iter(generate_corpus(1, 30, 5, 10, 8)))
        scorer = BudgetedScorer(gold, 2000)
        genetic_algorithm(doc, scorer, GaParams(20, 0.0, 0.0), 4)
        assert scorer.trace[-1][0] <= 20


class TestBat:
    def test_loudness_and_pulse_rate(self):
        doc, gold = next(iter(generate_corpus(1, 50, 6, 10, 2)))
        history = {}

        def watch(iteration, bats, best):
            for i, b in enumerate(bats):
                assert b.pulse_rate <= b.initial_pulse_rate
                history.setdefault(i, []).append(b.loudness)

        scorer = BudgetedScorer(gold, 3000)
        bat_algorithm(doc, scorer, BaParams(10, 0, 2, 1, 20, 0.7, 0.5), 5, watch)
        for values in history.values():
            assert all(b <= a for a, b in zip(values, values[1:]))

    def test_terminates_before_budget(self):
        doc, gold = next(iter(generate_corpus(1, 300, 9, 16, 1)))
        scorer = BudgetedScorer(gold, 16_000)
        bat_algorithm(doc, scorer, EARLY_BA, 0)
        assert scorer.call_count < 16_000


class TestCuckoo:
    @pytest.mark.parametrize("nests, destroyed", [(1, 0), (3, 0), (5, 2)])
    def test_sorted_and_best_kept(self, nests, destroyed):
        doc, gold = next(iter(generate_corpus(1, 40, 6, 10, 5)))
        scorer = BudgetedScorer(gold, 1500)

        def watch(current):
            scores = [n.score for n in current]
            assert scores == sorted(scores)
            assert scores[-1] == scorer.best_score

        cuckoo_search(doc, scorer, CsaParams(nests, destroyed, 1.0, 0.5), 3, watch)

    def test_equal_scores_never_replace(self):
        doc = Document.from_sense_counts([1, 1, 1, 1])
        scorer = BudgetedScorer(GoldStandard([0, 0, 0, 0]), 200)
        snapshots = []
        cuckoo_search(doc, scorer, CsaParams(3, 0, 2.0, 0.5), 1,
                      lambda current: snapshots.append({id(n) for n in current}))
        assert len({frozenset(s) for s in snapshots}) == 1

    def test_single_nest_is_hill_climbing(self):
        doc, gold = next(iter(generate_corpus(1, 60, 6, 10, 6)))
        scorer = BudgetedScorer(gold, 2000)
        path = []
        cuckoo_search(doc, scorer, CsaParams(1, 0, 1.0, 0.2), 2,
                      lambda current: path.append(current[0].score))
        assert path == sorted(path)
        assert path[-1] == scorer.best_score
