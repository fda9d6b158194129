"""Scikit-learn style estimator wrapper around the prediction pipeline.

Lets the cause analyzer compose with sklearn tooling (get_params/clone,
pipelines over lists of raw logs). fit() ingests a labeled history,
predict() classifies new logs against it.
"""

from __future__ import annotations

from typing import Optional, Sequence, Union

from sklearn.base import BaseEstimator

from .corpus import Corpus, DEFAULT_CAUSE_LABELS
from .predict import Prediction, Predictor, PredictorConfig
from .preprocess import (
    EMPTY_DICTIONARY,
    RawTestLog,
    SegmentationDictionary,
)

LogLike = Union[RawTestLog, dict]


def _as_raw_log(item: LogLike, index: int) -> RawTestLog:
    if isinstance(item, RawTestLog):
        return item
    if isinstance(item, dict):
        return RawTestLog(
            alarm_id=item.get("alarm_id", f"fit-{index}"),
            script_id=item.get("script_id", ""),
            function_point=item.get("function_point", ""),
            day_index=int(item.get("day", item.get("day_index", 0))),
            lines=tuple(item["lines"]),
        )
    raise TypeError(f"expected RawTestLog or dict, got {type(item).__name__}")


class AlarmCauseClassifier(BaseEstimator):
    """Similarity-retrieval cause classifier with calibrated routing.

    Parameters mirror the predictor configuration: target value t for
    threshold calibration, neighbor count k for the low-similarity vote,
    shingle size, optional day window, and the function-point selection
    switch.
    """

    def __init__(
        self,
        t: float = 0.7,
        k: int = 15,
        shingle_size: int = 2,
        window_days: Optional[int] = None,
        use_function_point: bool = True,
        dictionary: Optional[SegmentationDictionary] = None,
    ):
        self.t = t
        self.k = k
        self.shingle_size = shingle_size
        self.window_days = window_days
        self.use_function_point = use_function_point
        self.dictionary = dictionary

    def _config(self) -> PredictorConfig:
        return PredictorConfig(
            t=self.t,
            k=self.k,
            shingle_size=self.shingle_size,
            window_days=self.window_days,
            use_function_point=self.use_function_point,
        )

    def fit(self, X: Sequence[LogLike], y: Sequence[str]):
        """Build the history corpus from logs X and their cause labels y."""
        X = list(X)
        y = list(y)
        if len(X) != len(y):
            raise ValueError(f"X and y length mismatch: {len(X)} vs {len(y)}")
        dictionary = self.dictionary or EMPTY_DICTIONARY
        labels = set(DEFAULT_CAUSE_LABELS) | set(y)
        corpus = Corpus(labels=labels, dictionary=dictionary)
        for index, (item, cause) in enumerate(zip(X, y)):
            raw = _as_raw_log(item, index)
            corpus.ingest(raw)
            corpus.confirm(raw.alarm_id, cause)
        self.corpus_ = corpus
        self.predictor_ = Predictor(corpus, self._config(), dictionary)
        self.thresholds_ = self.predictor_.thresholds()
        return self

    def predict_detail(self, X: Sequence[LogLike]) -> list[Prediction]:
        """Full Prediction objects (route, confidence, exemplar, top-k)."""
        if not hasattr(self, "predictor_"):
            raise RuntimeError("classifier is not fitted; call fit() first")
        return [
            self.predictor_.predict(_as_raw_log(item, index))
            for index, item in enumerate(X)
        ]

    def predict(self, X: Sequence[LogLike]) -> list[Optional[str]]:
        return [p.cause for p in self.predict_detail(X)]
