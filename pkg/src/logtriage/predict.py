"""Cause prediction: calibrated thresholds, routing, and the KNN fallback.

Each cause gets its own similarity threshold, swept from the leave-
history-out top-1 outcomes of the verified corpus. A new log whose top-1
similarity clears the threshold of the top-1 cause takes that cause
directly; otherwise the causes of the top-k neighbors vote, weighted by
similarity.
"""

from __future__ import annotations

import bisect
import enum
import threading
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .corpus import Corpus, CorpusSnapshot, select_history, window
from .errors import NoHistoryError
from .preprocess import (
    EMPTY_DICTIONARY,
    RawTestLog,
    SegmentationDictionary,
    preprocess_log,
    surfaces,
)
from .similarity import (
    HistoryRanker,
    RankingEntry,
    RankingList,
    build_ranker,
    shingles,
)

SWEEP_STEPS = 1000  # threshold sweep granularity: x = i / SWEEP_STEPS


@dataclass(frozen=True)
class PredictorConfig:
    t: float = 0.7
    k: int = 15
    shingle_size: int = 2
    window_days: Optional[int] = None
    use_function_point: bool = True
    dictionary_path: Optional[str] = None
    corpus_path: Optional[str] = None

    def __post_init__(self):
        if not 0.0 <= self.t <= 1.0:
            raise ValueError(f"target value t must be in [0, 1], got {self.t}")
        if self.k < 1:
            raise ValueError(f"neighbor count k must be >= 1, got {self.k}")
        if self.shingle_size < 1:
            raise ValueError("shingle_size must be >= 1")
        if self.window_days is not None and self.window_days < 1:
            raise ValueError("window_days must be >= 1")


@dataclass(frozen=True)
class ThresholdTable:
    thresholds: dict  # cause -> theta in [0, 1]
    built_for_version: int
    t_used: float

    def theta(self, cause: str) -> float:
        # causes never seen in calibration keep the initial threshold 1.0
        return self.thresholds.get(cause, 1.0)

    def to_json_dict(self) -> dict:
        return {
            "thresholds": dict(sorted(self.thresholds.items())),
            "built_for_version": self.built_for_version,
            "t": self.t_used,
        }


class Route(enum.Enum):
    HIGH_SIMILARITY = "high_similarity"
    LOW_SIMILARITY = "low_similarity"
    NO_HISTORY = "no_history"


@dataclass(frozen=True)
class Prediction:
    cause: Optional[str]
    route: Route
    confidence: float
    exemplar_id: Optional[str]
    top_k: RankingList
    vote_score: Optional[float] = None

    def to_json_dict(self) -> dict:
        return {
            "cause": self.cause,
            "route": self.route.value,
            "confidence": self.confidence,
            "exemplar_id": self.exemplar_id,
            "vote_score": self.vote_score,
            "top_k": [
                {"id": e.record_id, "cause": e.cause, "sim": e.sim}
                for e in self.top_k
            ],
        }


def threshold_from_pairs(
    pairs: Sequence[tuple[float, bool]], t: float
) -> float:
    """Sweep x from 0 to 1 in 1/1000 steps over (top-1 sim, correct) pairs.

    Returns the first x at which the members with sim > x are correct in a
    fraction exceeding t; 1.0 when no x qualifies. An empty qualifying set
    counts as fraction 0.
    """
    if not pairs:
        return 1.0
    ordered = sorted(pairs)
    sims = [sim for sim, _ in ordered]
    # suffix_correct[i] = number of correct pairs among ordered[i:]
    suffix_correct = [0] * (len(ordered) + 1)
    for i in range(len(ordered) - 1, -1, -1):
        suffix_correct[i] = suffix_correct[i + 1] + (1 if ordered[i][1] else 0)
    for i in range(SWEEP_STEPS + 1):
        x = i / SWEEP_STEPS
        start = bisect.bisect_right(sims, x)
        qualifying = len(sims) - start
        if qualifying and suffix_correct[start] / qualifying > t:
            return x
    return 1.0


def leave_history_out_top1(
    snapshot: CorpusSnapshot, config: PredictorConfig
) -> dict[str, list[tuple[float, bool]]]:
    """Top-1 outcome of every verified record against its prior history.

    Records are replayed in ingest order through the same function-point
    selection path prediction uses; records with no prior history are
    skipped. Returns (top-1 sim, top-1 cause was the true cause) pairs
    grouped by top-1 cause.
    """
    if config.window_days is not None:
        snapshot = window(snapshot, config.window_days)
    verified = sorted(snapshot.verified_records(), key=lambda r: r.seq)
    size = config.shingle_size
    global_ranker = HistoryRanker(size)
    fp_rankers: dict[str, HistoryRanker] = {}
    outcomes: dict[str, list[tuple[float, bool]]] = defaultdict(list)
    for record in verified:
        ranker = global_ranker
        if config.use_function_point:
            fp_ranker = fp_rankers.get(record.raw.function_point)
            if fp_ranker is not None and len(fp_ranker):
                ranker = fp_ranker
        if len(ranker):
            top = ranker.rank(record.shingle_counts(size))[0]
            outcomes[top.cause].append((top.sim, top.cause == record.cause))
        args = (record.alarm_id, record.cause, record.seq, record.shingle_counts(size))
        global_ranker.add(*args)
        if config.use_function_point:
            fp_rankers.setdefault(
                record.raw.function_point, HistoryRanker(size)
            ).add(*args)
    return outcomes


def calibrate_thresholds(
    snapshot: CorpusSnapshot, config: PredictorConfig
) -> ThresholdTable:
    """Build the per-cause threshold table for one corpus snapshot."""
    outcomes = leave_history_out_top1(snapshot, config)
    thresholds = {
        cause: threshold_from_pairs(pairs, config.t)
        for cause, pairs in outcomes.items()
    }
    return ThresholdTable(
        thresholds=thresholds,
        built_for_version=snapshot.version,
        t_used=config.t,
    )


def knn_vote(ranking: RankingList, k: int) -> tuple[str, float]:
    """Similarity-weighted vote over the top-k ranking entries.

    Ties between summed scores go to the cause whose best entry ranks
    earlier.
    """
    if not ranking:
        raise NoHistoryError("cannot vote over an empty ranking")
    top = ranking[: max(k, 1)]
    sums: dict[str, float] = {}
    best_rank: dict[str, int] = {}
    for position, entry in enumerate(top):
        sums[entry.cause] = sums.get(entry.cause, 0.0) + entry.sim
        best_rank.setdefault(entry.cause, position)
    winner = min(sums, key=lambda cause: (-sums[cause], best_rank[cause]))
    return winner, sums[winner]


def _route_ranking(
    ranking: RankingList, thresholds: ThresholdTable, config: PredictorConfig
) -> Prediction:
    top = ranking[0]
    excerpt = ranking[: config.k]
    if top.sim > thresholds.theta(top.cause):
        return Prediction(
            cause=top.cause,
            route=Route.HIGH_SIMILARITY,
            confidence=top.sim,
            exemplar_id=top.record_id,
            top_k=excerpt,
        )
    cause, score = knn_vote(ranking, config.k)
    exemplar = next(e for e in excerpt if e.cause == cause)
    return Prediction(
        cause=cause,
        route=Route.LOW_SIMILARITY,
        confidence=exemplar.sim,
        exemplar_id=exemplar.record_id,
        top_k=excerpt,
        vote_score=score,
    )


def predict_cause(
    raw: RawTestLog,
    snapshot: CorpusSnapshot,
    config: PredictorConfig = PredictorConfig(),
    thresholds: Optional[ThresholdTable] = None,
    dictionary: SegmentationDictionary = EMPTY_DICTIONARY,
) -> Prediction:
    """Full pipeline over one snapshot; convenience entry for single calls.

    Batch callers should use Predictor, which caches thresholds and
    ranking indexes across calls at the same corpus version.
    """
    terms = preprocess_log(raw, dictionary)
    scoped = (
        window(snapshot, config.window_days)
        if config.window_days is not None
        else snapshot
    )
    selected = select_history(
        scoped, raw.function_point, None, config.use_function_point
    )
    if not selected:
        return Prediction(
            cause=None,
            route=Route.NO_HISTORY,
            confidence=0.0,
            exemplar_id=None,
            top_k=[],
        )
    ranking = build_ranker(selected, config.shingle_size).rank(
        shingles(surfaces(terms), config.shingle_size)
    )
    if thresholds is None:
        thresholds = calibrate_thresholds(snapshot, config)
    return _route_ranking(ranking, thresholds, config)


class Predictor:
    """Caching facade over one live corpus.

    Thresholds are recalibrated lazily when the corpus version changes
    (single-flight); ranking indexes are cached per (version, selection).
    """

    def __init__(
        self,
        corpus: Corpus,
        config: PredictorConfig = PredictorConfig(),
        dictionary: SegmentationDictionary = EMPTY_DICTIONARY,
    ):
        self.corpus = corpus
        self.config = config
        self.dictionary = dictionary
        self._calibration_lock = threading.Lock()
        self._thresholds: Optional[ThresholdTable] = None
        self._ranker_cache: dict[tuple[int, str], HistoryRanker] = {}

    def thresholds(self, snapshot: Optional[CorpusSnapshot] = None) -> ThresholdTable:
        if snapshot is None:
            snapshot = self.corpus.snapshot(self.config.shingle_size)
        with self._calibration_lock:
            if (
                self._thresholds is None
                or self._thresholds.built_for_version != snapshot.version
            ):
                self._thresholds = calibrate_thresholds(snapshot, self.config)
            return self._thresholds

    def _ranker_for(
        self, snapshot: CorpusSnapshot, function_point: str
    ) -> Optional[HistoryRanker]:
        scoped = (
            window(snapshot, self.config.window_days)
            if self.config.window_days is not None
            else snapshot
        )
        selected = select_history(
            scoped, function_point, None, self.config.use_function_point
        )
        if not selected:
            return None
        if not self.config.use_function_point or not any(
            r.raw.function_point == function_point for r in selected
        ):
            key = (snapshot.version, "\x00*all*")
        else:
            key = (snapshot.version, function_point)
        ranker = self._ranker_cache.get(key)
        if ranker is None:
            ranker = build_ranker(selected, self.config.shingle_size)
            if len(self._ranker_cache) > 64 or (
                self._ranker_cache
                and next(iter(self._ranker_cache))[0] != snapshot.version
            ):
                self._ranker_cache.clear()
            self._ranker_cache[key] = ranker
        return ranker

    def predict(self, raw: RawTestLog) -> Prediction:
        snapshot = self.corpus.snapshot(self.config.shingle_size)
        terms = preprocess_log(raw, self.dictionary)
        ranker = self._ranker_for(snapshot, raw.function_point)
        if ranker is None:
            return Prediction(
                cause=None,
                route=Route.NO_HISTORY,
                confidence=0.0,
                exemplar_id=None,
                top_k=[],
            )
        ranking = ranker.rank(shingles(surfaces(terms), self.config.shingle_size))
        return _route_ranking(ranking, self.thresholds(snapshot), self.config)
