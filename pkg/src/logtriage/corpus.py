"""Append-only store of analyzed alarms with snapshot reads.

The corpus is the growing repository of <alarm, log, cause> records.
Writers (ingest/confirm) serialize through a lock; readers take immutable
snapshots. When a path is configured every mutation is appended to a
JSON-lines file, which is the system of record.
"""

from __future__ import annotations

import json
import threading
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .errors import DuplicateAlarmError, UnknownLabelError, UnknownRecordError
from .preprocess import (
    EMPTY_DICTIONARY,
    RawTestLog,
    SegmentationDictionary,
    TermSequence,
    preprocess_log,
    surfaces,
)
from .similarity import Shingle, shingles

#: Canonical default cause labels (open set; corpora may register more).
DEFAULT_CAUSE_LABELS = {
    "C1": "ObsoleteTest",
    "C2": "ProductCodeDefect",
    "C3": "ConfigurationError",
    "C4": "TestScriptDefect",
    "C5": "DeviceAnomaly",
    "C6": "EnvironmentIssue",
    "C7": "SoftwareProblem",
}


@dataclass
class AlarmRecord:
    raw: RawTestLog
    cause: Optional[str]
    verified: bool
    seq: int
    _dictionary: SegmentationDictionary = field(
        default=EMPTY_DICTIONARY, repr=False, compare=False
    )
    _shingle_cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def alarm_id(self) -> str:
        return self.raw.alarm_id

    @property
    def terms(self) -> TermSequence:
        # Recomputed on demand; only the compact shingle counts are kept
        # per record, which matters for corpora with very long logs.
        return preprocess_log(self.raw, self._dictionary)

    def shingle_counts(self, size: int = 2) -> Counter:
        cached = self._shingle_cache.get(size)
        if cached is None:
            cached = shingles(surfaces(self.terms), size)
            self._shingle_cache[size] = cached
        return cached

    def to_json_dict(self) -> dict:
        return {
            "alarm_id": self.raw.alarm_id,
            "script_id": self.raw.script_id,
            "function_point": self.raw.function_point,
            "day": self.raw.day_index,
            "lines": list(self.raw.lines),
            "cause": self.cause,
            "verified": self.verified,
            "seq": self.seq,
        }


def raw_log_from_json_dict(obj: dict) -> RawTestLog:
    return RawTestLog(
        alarm_id=obj["alarm_id"],
        script_id=obj["script_id"],
        function_point=obj["function_point"],
        day_index=int(obj["day"]),
        lines=tuple(obj["lines"]),
    )


@dataclass(frozen=True)
class CorpusStats:
    n_logs: int
    doc_frequency: dict  # Shingle -> number of logs containing it


@dataclass(frozen=True)
class CorpusSnapshot:
    records: tuple[AlarmRecord, ...]
    version: int
    labels: frozenset[str]
    shingle_size: int = 2

    def stats(self) -> CorpusStats:
        df: Counter = Counter()
        for record in self.records:
            df.update(set(record.shingle_counts(self.shingle_size)))
        return CorpusStats(n_logs=len(self.records), doc_frequency=dict(df))

    def verified_records(self) -> list[AlarmRecord]:
        return [r for r in self.records if r.verified]


class Corpus:
    """Live, single-writer corpus with atomic snapshots."""

    def __init__(
        self,
        path=None,
        labels: Iterable[str] = DEFAULT_CAUSE_LABELS,
        dictionary: SegmentationDictionary = EMPTY_DICTIONARY,
    ):
        self._path = path
        self._labels = set(labels)
        self._dictionary = dictionary
        self._records: dict[str, AlarmRecord] = {}
        self._order: list[AlarmRecord] = []
        self._version = 0
        self._lock = threading.RLock()

    @property
    def version(self) -> int:
        return self._version

    @property
    def labels(self) -> frozenset[str]:
        return frozenset(self._labels)

    def register_label(self, label: str):
        if not label:
            raise UnknownLabelError("empty cause label")
        with self._lock:
            self._labels.add(label)

    def _check_label(self, label: str):
        if label not in self._labels:
            raise UnknownLabelError(f"cause label {label!r} is not registered")

    def ingest(self, raw: RawTestLog, cause: Optional[str] = None) -> str:
        """Store a new alarm (preprocessed and cached); returns its id."""
        if cause is not None:
            self._check_label(cause)
        terms = preprocess_log(raw, self._dictionary)
        with self._lock:
            if raw.alarm_id in self._records:
                raise DuplicateAlarmError(f"alarm {raw.alarm_id!r} already ingested")
            record = AlarmRecord(
                raw=raw,
                cause=cause,
                verified=False,
                seq=len(self._order),
                _dictionary=self._dictionary,
            )
            record._shingle_cache[2] = shingles(surfaces(terms), 2)
            self._records[raw.alarm_id] = record
            self._order.append(record)
            self._version += 1
            self._append_to_file(record)
        return raw.alarm_id

    def confirm(self, alarm_id: str, cause: str) -> int:
        """Set the verified cause of a record; returns the new version."""
        self._check_label(cause)
        with self._lock:
            record = self._records.get(alarm_id)
            if record is None:
                raise UnknownRecordError(f"no record {alarm_id!r}")
            record.cause = cause
            record.verified = True
            self._version += 1
            self._append_to_file(record)
            return self._version

    def get(self, alarm_id: str) -> AlarmRecord:
        record = self._records.get(alarm_id)
        if record is None:
            raise UnknownRecordError(f"no record {alarm_id!r}")
        return record

    def __contains__(self, alarm_id: str) -> bool:
        return alarm_id in self._records

    def __len__(self) -> int:
        return len(self._order)

    def snapshot(self, shingle_size: int = 2) -> CorpusSnapshot:
        with self._lock:
            return CorpusSnapshot(
                records=tuple(self._order),
                version=self._version,
                labels=frozenset(self._labels),
                shingle_size=shingle_size,
            )

    def _append_to_file(self, record: AlarmRecord):
        if self._path is None:
            return
        with open(self._path, "a", encoding="utf-8") as fh:
            fh.write(json.dumps(record.to_json_dict(), ensure_ascii=False) + "\n")

    @classmethod
    def load(
        cls,
        path,
        labels: Iterable[str] = DEFAULT_CAUSE_LABELS,
        dictionary: SegmentationDictionary = EMPTY_DICTIONARY,
        attach: bool = True,
    ) -> "Corpus":
        """Rebuild a corpus from its JSON-lines record log.

        The file is append-only: later lines for the same alarm_id replace
        earlier state. When attach=True further mutations keep appending
        to the same file.
        """
        corpus = cls(path=None, labels=labels, dictionary=dictionary)
        latest: dict[str, dict] = {}
        mutations = 0
        with open(path, encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                obj = json.loads(line)
                latest[obj["alarm_id"]] = obj
                mutations += 1
        for obj in sorted(latest.values(), key=lambda o: o["seq"]):
            raw = raw_log_from_json_dict(obj)
            if obj.get("cause") is not None:
                corpus._labels.add(obj["cause"])
            record = AlarmRecord(
                raw=raw,
                cause=obj.get("cause"),
                verified=bool(obj.get("verified")),
                seq=int(obj["seq"]),
                _dictionary=dictionary,
            )
            corpus._records[raw.alarm_id] = record
            corpus._order.append(record)
        corpus._version = mutations
        if attach:
            corpus._path = path
        return corpus


def select_history(
    snapshot: CorpusSnapshot,
    function_point: str,
    before_sequence: Optional[int] = None,
    use_function_point: bool = True,
) -> list[AlarmRecord]:
    """Verified records usable as history for one query.

    Prefers records sharing the query's function point; falls back to all
    verified prior records when none share it.
    """
    prior = [
        r
        for r in snapshot.records
        if r.verified and (before_sequence is None or r.seq < before_sequence)
    ]
    if not use_function_point:
        return prior
    same_fp = [r for r in prior if r.raw.function_point == function_point]
    return same_fp if same_fp else prior


def window(snapshot: CorpusSnapshot, max_days: int) -> CorpusSnapshot:
    """Restrict a snapshot to its most recent max_days distinct testing days."""
    if max_days < 1:
        raise ValueError("max_days must be >= 1")
    days = sorted({r.raw.day_index for r in snapshot.records})
    keep = set(days[-max_days:])
    return CorpusSnapshot(
        records=tuple(r for r in snapshot.records if r.raw.day_index in keep),
        version=snapshot.version,
        labels=snapshot.labels,
        shingle_size=snapshot.shingle_size,
    )
