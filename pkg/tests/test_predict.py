import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from logtriage.corpus import Corpus
from logtriage.errors import EmptyLogError, NoHistoryError
from logtriage.predict import (
    Prediction,
    Predictor,
    PredictorConfig,
    Route,
    ThresholdTable,
    calibrate_thresholds,
    knn_vote,
    predict_cause,
    threshold_from_pairs,
)
from logtriage.similarity import RankingEntry

from conftest import build_verified_corpus, make_log


def sweep_oracle(pairs, t):
    """Literal transcription of the calibration sweep."""
    for i in range(1001):
        x = i / 1000
        qualifying = [correct for sim, correct in pairs if sim > x]
        if qualifying and sum(qualifying) / len(qualifying) > t:
            return x
    return 1.0


def knn_oracle(ranking, k):
    top = ranking[:k]
    causes = {e.cause for e in top}
    best = None
    for cause in causes:
        total = sum(e.sim for e in top if e.cause == cause)
        rank = min(i for i, e in enumerate(top) if e.cause == cause)
        key = (-total, rank)
        if best is None or key < best[0]:
            best = (key, cause, total)
    return best[1], best[2]


FIG_PAIRS = [
    (0.90, True), (0.85, True), (0.80, True),
    (0.70, False), (0.601, False), (0.45, False),
]

FIG_RANKING = [
    RankingEntry("his3", "C2", 0.586, 3),
    RankingEntry("his4", "C3", 0.400, 4),
    RankingEntry("his1", "C3", 0.380, 1),
    RankingEntry("his2", "C3", 0.334, 2),
    RankingEntry("his5", "C1", 0.200, 5),
]


class TestThresholdFromPairs:
    def test_worked_example(self):
        assert threshold_from_pairs(FIG_PAIRS, 0.7) == pytest.approx(0.601)

    def test_all_correct_gives_zero(self):
        assert threshold_from_pairs([(0.9, True), (0.2, True)], 0.7) == 0.0

    def test_never_correct_gives_one(self):
        assert threshold_from_pairs([(0.9, False), (0.8, False)], 0.7) == 1.0

    def test_empty_gives_one(self):
        assert threshold_from_pairs([], 0.7) == 1.0

    def test_t_one_gives_one(self):
        assert threshold_from_pairs([(0.9, True)], 1.0) == 1.0

    @given(
        st.lists(
            st.tuples(
                st.floats(min_value=0, max_value=1, allow_nan=False),
                st.booleans(),
            ),
            max_size=30,
        ),
        st.floats(min_value=0, max_value=1, allow_nan=False),
    )
    @settings(max_examples=200, deadline=None)
    def test_matches_naive_sweep(self, pairs, t):
        assert threshold_from_pairs(pairs, t) == sweep_oracle(pairs, t)

    def test_monotone_in_t(self):
        rng = random.Random(3)
        grid = [i / 10 for i in range(11)]
        for _ in range(100):
            pairs = [
                (rng.random(), rng.random() < 0.5) for _ in range(rng.randint(1, 25))
            ]
            thetas = [threshold_from_pairs(pairs, t) for t in grid]
            assert all(a <= b for a, b in zip(thetas, thetas[1:]))


class TestKnnVote:
    def test_worked_example(self):
        cause, score = knn_vote(FIG_RANKING, 5)
        assert cause == "C3"
        assert score == pytest.approx(1.114, abs=1e-9)

    def test_k1_is_top1(self):
        assert knn_vote(FIG_RANKING, 1) == ("C2", pytest.approx(0.586))

    def test_single_cause(self):
        ranking = [RankingEntry("a", "C1", 0.5, 0), RankingEntry("b", "C1", 0.25, 1)]
        assert knn_vote(ranking, 5) == ("C1", pytest.approx(0.75))

    def test_k_larger_than_list(self):
        assert knn_vote(FIG_RANKING, 100)[0] == "C3"

    def test_tie_broken_by_best_rank(self):
        ranking = [
            RankingEntry("a", "C1", 0.4, 0),
            RankingEntry("b", "C2", 0.3, 1),
            RankingEntry("c", "C2", 0.1, 2),
        ]
        # both causes sum to 0.4; C1's best entry ranks first
        assert knn_vote(ranking, 3)[0] == "C1"

    def test_empty_raises(self):
        with pytest.raises(NoHistoryError):
            knn_vote([], 5)

    def test_matches_brute_force_oracle(self):
        rng = random.Random(17)
        for _ in range(1000):
            size = rng.randint(1, 12)
            ranking = sorted(
                (
                    RankingEntry(
                        "r%d" % i,
                        "C%d" % rng.randint(1, 4),
                        rng.choice([0.1, 0.2, 0.25, 0.5, rng.random()]),
                        i,
                    )
                    for i in range(size)
                ),
                key=lambda e: (-e.sim, -e.seq),
            )
            k = rng.randint(1, 15)
            assert knn_vote(ranking, k) == knn_oracle(ranking, k)


def _history_corpus():
    """Two function points; causes separated by distinctive vocabulary."""
    entries = [
        ("h0", ["link failure on port alpha", "retry exhausted"], "C2", "AUS", 0),
        ("h1", ["link failure on port beta", "retry exhausted"], "C2", "AUS", 0),
        ("h2", ["schema update missing field", "rollback started"], "C3", "AUS", 0),
        ("h3", ["schema update missing column", "rollback started"], "C3", "AUS", 1),
        ("h4", ["device console unreachable tonight"], "C5", "NPF", 1),
        ("h5", ["device console unreachable again today"], "C5", "NPF", 1),
    ]
    return build_verified_corpus(entries)


class TestCalibrateThresholds:
    def test_deterministic(self):
        corpus = _history_corpus()
        config = PredictorConfig()
        snapshot = corpus.snapshot()
        assert (
            calibrate_thresholds(snapshot, config).thresholds
            == calibrate_thresholds(snapshot, config).thresholds
        )

    def test_empty_corpus_all_defaults(self):
        table = calibrate_thresholds(Corpus().snapshot(), PredictorConfig())
        assert table.thresholds == {}
        assert table.theta("C2") == 1.0

    def test_unseen_cause_theta_is_one(self):
        table = calibrate_thresholds(_history_corpus().snapshot(), PredictorConfig())
        assert table.theta("C7") == 1.0

    def test_t_one_all_thetas_one(self):
        table = calibrate_thresholds(
            _history_corpus().snapshot(), PredictorConfig(t=1.0)
        )
        assert all(theta == 1.0 for theta in table.thresholds.values())

    def test_version_recorded(self):
        corpus = _history_corpus()
        table = calibrate_thresholds(corpus.snapshot(), PredictorConfig())
        assert table.built_for_version == corpus.version


class TestPredictCause:
    def test_empty_history_routes_no_history(self):
        prediction = predict_cause(
            make_log("q", ["waiting for data"]), Corpus().snapshot()
        )
        assert prediction.route is Route.NO_HISTORY
        assert prediction.cause is None

    def test_identical_log_high_similarity(self):
        corpus = _history_corpus()
        twin = make_log("q", corpus.get("h2").raw.lines, fp="AUS", day=2)
        prediction = predict_cause(twin, corpus.snapshot(), PredictorConfig(t=0.0))
        assert prediction.route is Route.HIGH_SIMILARITY
        assert prediction.cause == "C3"
        assert prediction.confidence == pytest.approx(1.0, abs=1e-9)

    def test_low_similarity_takes_knn(self):
        corpus = _history_corpus()
        query = make_log("q", ["schema update missing row", "rollback started"], fp="AUS")
        prediction = predict_cause(query, corpus.snapshot(), PredictorConfig(t=1.0))
        assert prediction.route is Route.LOW_SIMILARITY
        assert prediction.cause == "C3"
        assert prediction.vote_score is not None
        # exemplar is the best-ranked record carrying the predicted cause
        first_match = next(e for e in prediction.top_k if e.cause == "C3")
        assert prediction.exemplar_id == first_match.record_id
        assert prediction.confidence == pytest.approx(first_match.sim)

    def test_route_partition(self):
        corpus = _history_corpus()
        queries = [
            make_log("q1", ["schema update missing row"], fp="AUS"),
            make_log("q2", ["device console unreachable"], fp="NPF"),
            make_log("q3", ["totally unrelated words here"], fp="ZZZ"),
        ]
        for t in (0.0, 0.5, 1.0):
            for query in queries:
                prediction = predict_cause(query, corpus.snapshot(), PredictorConfig(t=t))
                assert prediction.route in (
                    Route.HIGH_SIMILARITY, Route.LOW_SIMILARITY, Route.NO_HISTORY,
                )

    def test_empty_log_raises(self):
        with pytest.raises(EmptyLogError):
            predict_cause(make_log("q", ["1234 5678"]), _history_corpus().snapshot())

    def test_threshold_gate_respected(self):
        corpus = _history_corpus()
        query = make_log("q", corpus.get("h0").raw.lines, fp="AUS")
        snapshot = corpus.snapshot()
        low_gate = ThresholdTable({"C2": 0.0}, snapshot.version, 0.7)
        high_gate = ThresholdTable({"C2": 1.0}, snapshot.version, 0.7)
        assert predict_cause(query, snapshot, thresholds=low_gate).route is Route.HIGH_SIMILARITY
        assert predict_cause(query, snapshot, thresholds=high_gate).route is Route.LOW_SIMILARITY


class TestPredictor:
    def test_matches_predict_cause(self):
        corpus = _history_corpus()
        config = PredictorConfig()
        predictor = Predictor(corpus, config)
        query = make_log("q", ["schema update missing row", "rollback started"], fp="AUS")
        direct = predict_cause(query, corpus.snapshot(), config)
        assert predictor.predict(query) == direct
        # cached second call identical
        assert predictor.predict(query) == direct

    def test_threshold_cache_invalidated_on_version_change(self):
        corpus = _history_corpus()
        predictor = Predictor(corpus, PredictorConfig())
        first = predictor.thresholds()
        corpus.ingest(make_log("new", ["link failure on port gamma"], fp="AUS", day=2))
        corpus.confirm("new", "C2")
        second = predictor.thresholds()
        assert second.built_for_version == corpus.version
        assert second.built_for_version != first.built_for_version

    def test_no_leakage_from_unverified(self):
        corpus = _history_corpus()
        predictor = Predictor(corpus, PredictorConfig())
        query = make_log("q", ["schema update missing row", "rollback started"], fp="AUS")
        before = predictor.predict(query)
        corpus.ingest(make_log("pending", ["schema update missing row"], fp="AUS", day=2))
        after = predictor.predict(query)
        assert before.cause == after.cause
        assert before.top_k == after.top_k
