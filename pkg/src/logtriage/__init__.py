"""Test-alarm cause analysis by similarity retrieval over historical logs."""

from .corpus import (
    AlarmRecord,
    Corpus,
    CorpusSnapshot,
    DEFAULT_CAUSE_LABELS,
    select_history,
    window,
)
from .diffview import DiffOp, DiffRow, render_diff, strip_numbers
from .errors import (
    DegenerateClassError,
    DuplicateAlarmError,
    EmptyLogError,
    InsufficientDaysError,
    LogTriageError,
    NoHistoryError,
    NoPredictionsError,
    UnknownLabelError,
    UnknownRecordError,
)
from .estimator import AlarmCauseClassifier
from .evaluate import (
    EvalReport,
    SyntheticSpec,
    Variant,
    accuracy,
    auc_one_vs_all,
    generate_synthetic_corpus,
    run_incremental,
)
from .predict import (
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
from .preprocess import (
    Language,
    RawTestLog,
    SegmentationDictionary,
    Term,
    preprocess_log,
    segment_chinese,
    split_language_spans,
)
from .similarity import RankingEntry, cosine, rank_history, shingles, tfidf_vector

__version__ = "0.1.0"
