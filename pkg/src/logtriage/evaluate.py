"""Day-by-day replay evaluation, metrics, and a synthetic corpus generator.

The incremental framework partitions a labeled dataset by testing day:
each day's alarms are predicted against the corpus of strictly earlier
days, then folded into history. Day 0 is never predicted.
"""

from __future__ import annotations

import csv
import enum
import json
import random
from collections import Counter, defaultdict
from dataclasses import dataclass, field, replace
from typing import Optional, Sequence

from .corpus import Corpus, DEFAULT_CAUSE_LABELS
from .errors import (
    DegenerateClassError,
    EmptyLogError,
    InsufficientDaysError,
    NoPredictionsError,
)
from .predict import Prediction, Predictor, PredictorConfig, Route
from .preprocess import RawTestLog, SegmentationDictionary, EMPTY_DICTIONARY


class Variant(enum.Enum):
    CAM = "cam"
    CAM_FP = "cam-fp"  # ablation: rank against all history, no FP selection
    MAJORITY_CLASS = "majority"
    TOP1_ONLY = "top1"  # t = 0: every alarm routes high-similarity
    PURE_KNN = "knn"  # t = 1: every alarm routes low-similarity


def accuracy(correct: int, analyzed: int) -> float:
    if analyzed < 1:
        raise NoPredictionsError("no analyzed alarms")
    return correct / analyzed


def auc_one_vs_all(
    scored: Sequence[tuple[float, str, str]], cause: str
) -> float:
    """One-vs-all ROC AUC for one cause over (possibility, predicted, true).

    Positives are alarms predicted as the cause whose true cause matches;
    everything else is a negative. The curve is swept over the distinct
    possibility values and integrated trapezoidally, so ties contribute
    one half.
    """
    positives = [s for s, pred, true in scored if pred == cause and true == cause]
    negatives = [s for s, pred, true in scored if not (pred == cause and true == cause)]
    if not positives or not negatives:
        raise DegenerateClassError(f"cause {cause!r} has no positives or no negatives")
    thresholds = sorted({s for s, _, _ in scored}, reverse=True)
    n_pos, n_neg = len(positives), len(negatives)
    area = 0.0
    prev_fpr, prev_tpr = 0.0, 0.0
    for threshold in thresholds:
        tpr = sum(1 for s in positives if s >= threshold) / n_pos
        fpr = sum(1 for s in negatives if s >= threshold) / n_neg
        area += (fpr - prev_fpr) * (tpr + prev_tpr) / 2.0
        prev_fpr, prev_tpr = fpr, tpr
    area += (1.0 - prev_fpr) * (1.0 + prev_tpr) / 2.0
    return area


@dataclass
class RouteStats:
    analyzed: int = 0
    correct: int = 0
    top1_correct: int = 0  # correctness had the top-1 cause been used

    def to_json_dict(self) -> dict:
        return {
            "analyzed": self.analyzed,
            "correct": self.correct,
            "top1_correct": self.top1_correct,
        }


@dataclass
class EvalReport:
    variant: Variant
    overall_accuracy: float
    per_day: dict  # day -> {"analyzed": int, "correct": int, "accuracy": float}
    per_cause_auc: dict  # cause -> AUC (degenerate causes omitted)
    route_stats: dict  # route value -> RouteStats

    def to_json_dict(self) -> dict:
        return {
            "variant": self.variant.value,
            "overall_accuracy": self.overall_accuracy,
            "per_day": {str(day): row for day, row in sorted(self.per_day.items())},
            "per_cause_auc": dict(sorted(self.per_cause_auc.items())),
            "route_stats": {
                route: stats.to_json_dict() for route, stats in self.route_stats.items()
            },
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=True)

    def write_per_day_csv(self, path):
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["day", "analyzed", "correct", "accuracy", "variant"])
            for day, row in sorted(self.per_day.items()):
                writer.writerow(
                    [day, row["analyzed"], row["correct"], row["accuracy"],
                     self.variant.value]
                )


def _majority_cause(counts: Counter) -> tuple[str, float]:
    total = sum(counts.values())
    cause = min(counts, key=lambda c: (-counts[c], c))
    return cause, counts[cause] / total


def run_incremental(
    dataset: Sequence[tuple[RawTestLog, str]],
    config: PredictorConfig = PredictorConfig(),
    variant: Variant = Variant.CAM,
    dictionary: SegmentationDictionary = EMPTY_DICTIONARY,
    labels: Optional[Sequence[str]] = None,
) -> EvalReport:
    """Replay a labeled dataset day by day and score the predictions.

    Every record must carry its true cause; labels are revealed to the
    corpus only after the day they belong to has been scored.
    """
    days = sorted({raw.day_index for raw, _ in dataset})
    if len(days) < 2:
        raise InsufficientDaysError("incremental evaluation needs >= 2 distinct days")
    if variant is Variant.CAM_FP:
        config = replace(config, use_function_point=False)
    elif variant is Variant.TOP1_ONLY:
        config = replace(config, t=0.0)
    elif variant is Variant.PURE_KNN:
        config = replace(config, t=1.0)

    if labels is None:
        labels = sorted({cause for _, cause in dataset} | set(DEFAULT_CAUSE_LABELS))
    corpus = Corpus(labels=labels, dictionary=dictionary)
    predictor = Predictor(corpus, config, dictionary)

    by_day: dict[int, list[tuple[RawTestLog, str]]] = defaultdict(list)
    for raw, cause in dataset:
        by_day[raw.day_index].append((raw, cause))

    per_day: dict[int, dict] = {}
    scored: list[tuple[float, str, str]] = []
    route_stats = {route.value: RouteStats() for route in Route}
    majority_counts: Counter = Counter()

    for position, day in enumerate(days):
        records = by_day[day]
        if position > 0:
            analyzed = 0
            correct = 0
            for raw, true_cause in records:
                if variant is Variant.MAJORITY_CLASS:
                    if not majority_counts:
                        continue
                    cause, confidence = _majority_cause(majority_counts)
                    prediction = Prediction(
                        cause=cause,
                        route=Route.HIGH_SIMILARITY,
                        confidence=confidence,
                        exemplar_id=None,
                        top_k=[],
                    )
                else:
                    try:
                        prediction = predictor.predict(raw)
                    except EmptyLogError:
                        continue
                    if prediction.route is Route.NO_HISTORY:
                        continue
                analyzed += 1
                is_correct = prediction.cause == true_cause
                correct += 1 if is_correct else 0
                scored.append((prediction.confidence, prediction.cause, true_cause))
                stats = route_stats[prediction.route.value]
                stats.analyzed += 1
                stats.correct += 1 if is_correct else 0
                if prediction.top_k:
                    stats.top1_correct += (
                        1 if prediction.top_k[0].cause == true_cause else 0
                    )
            per_day[day] = {
                "analyzed": analyzed,
                "correct": correct,
                "accuracy": accuracy(correct, analyzed) if analyzed else 0.0,
            }
        for raw, true_cause in records:
            try:
                corpus.ingest(raw)
            except EmptyLogError:
                continue
            corpus.confirm(raw.alarm_id, true_cause)
            majority_counts[true_cause] += 1

    total_analyzed = sum(row["analyzed"] for row in per_day.values())
    total_correct = sum(row["correct"] for row in per_day.values())
    per_cause_auc = {}
    for cause in sorted({true for _, _, true in scored} | {p for _, p, _ in scored}):
        try:
            per_cause_auc[cause] = auc_one_vs_all(scored, cause)
        except DegenerateClassError:
            continue
    return EvalReport(
        variant=variant,
        overall_accuracy=accuracy(total_correct, total_analyzed),
        per_day=per_day,
        per_cause_auc=per_cause_auc,
        route_stats=route_stats,
    )


_WORDS = (
    "alpha bravo charlie delta echo foxtrot golf hotel india juliet kilo lima "
    "mike november oscar papa quebec romeo sierra tango uniform victor whiskey "
    "xray yankee zulu socket buffer retry timeout packet session channel module "
    "handler thread queue device interface schema update proxy config driver "
    "kernel payload request response status failure warning assert cleanup"
).split()


@dataclass(frozen=True)
class SyntheticSpec:
    causes: tuple[str, ...] = ("C1", "C2", "C3", "C4", "C5")
    templates_per_cause: int = 2
    noise_rate: float = 0.2
    days: int = 10
    logs_per_day: int = 50
    function_points: int = 5
    lines_per_template: int = 30
    tokens_per_line: int = 6
    fp_affinity: float = 0.6  # probability an FP's dominant cause is drawn
    seed: int = 0


def generate_synthetic_corpus(spec: SyntheticSpec) -> list[tuple[RawTestLog, str]]:
    """Deterministic labeled corpus with cause-correlated function points.

    Line templates are built from a shared vocabulary plus template-specific
    marker words, and each function point maps templates to causes through
    its own rotation: the same failure signature means different causes on
    different features, so history from the right function point is more
    informative than history at large. Logs perturb their template at the
    token level with the configured noise rate, and each function point
    leans toward a dominant cause.
    """
    rng = random.Random(spec.seed)
    causes = list(spec.causes)

    def make_line(wordpool):
        return " ".join(rng.choice(wordpool) for _ in range(spec.tokens_per_line))

    # one template group per cause slot; groups are cause-agnostic on purpose
    groups: list[list[list[str]]] = []
    for group in range(len(causes)):
        markers = [f"sig{group}{w}" for w in rng.sample(_WORDS, 8)]
        pool = _WORDS + markers
        groups.append(
            [
                [make_line(pool) for _ in range(spec.lines_per_template)]
                for _ in range(spec.templates_per_cause)
            ]
        )

    fp_names = [f"FP{i:02d}" for i in range(spec.function_points)]
    # rotate the group -> cause mapping per function point
    fp_group_for_cause = {
        (fp, cause): (j + i) % len(causes)
        for i, fp in enumerate(fp_names)
        for j, cause in enumerate(causes)
    }
    fp_dominant = {fp: causes[i % len(causes)] for i, fp in enumerate(fp_names)}

    dataset: list[tuple[RawTestLog, str]] = []
    index = 0
    for day in range(spec.days):
        for _ in range(spec.logs_per_day):
            fp = fp_names[index % len(fp_names)]
            if rng.random() < spec.fp_affinity:
                cause = fp_dominant[fp]
            else:
                cause = rng.choice(causes)
            template = rng.choice(groups[fp_group_for_cause[fp, cause]])
            lines = []
            for line in template:
                tokens = [
                    rng.choice(_WORDS) if rng.random() < spec.noise_rate else tok
                    for tok in line.split()
                ]
                # timestamp-style prefix; stripped out by preprocessing
                lines.append(f"2015-06-{day + 1:02d} {rng.randrange(10**6)} " + " ".join(tokens))
            dataset.append(
                (
                    RawTestLog(
                        alarm_id=f"A{index:05d}",
                        script_id=f"S-{fp}",
                        function_point=fp,
                        day_index=day,
                        lines=tuple(lines),
                    ),
                    cause,
                )
            )
            index += 1
    return dataset


def load_dataset_jsonl(path) -> list[tuple[RawTestLog, str]]:
    """Read labeled records from the corpus JSON-lines schema."""
    from .corpus import raw_log_from_json_dict

    dataset = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            obj = json.loads(line)
            if obj.get("cause") is None:
                raise ValueError(
                    f"dataset record {obj.get('alarm_id')!r} has no cause label"
                )
            dataset.append((raw_log_from_json_dict(obj), obj["cause"]))
    return dataset
