"""Shingle TF-IDF vectors, cosine similarity, and history ranking.

Attribute vectors are built from adjacent term pairs (2-shingles by
default) weighted by tf * ln(N / n_A), where the document population is
the selected history plus the query log itself. Cosine similarity of a
zero vector is defined as 0.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

from .errors import NoHistoryError

Shingle = tuple[str, ...]


def shingles(terms: Sequence[str], size: int = 2) -> Counter:
    """Multiset of adjacent term tuples of the given size.

    Sequences shorter than `size` degrade to a single shingle of all
    their terms, so one-term logs still produce a usable vector.
    """
    if size < 1:
        raise ValueError("shingle size must be >= 1")
    if not terms:
        return Counter()
    if len(terms) < size:
        return Counter({tuple(terms): 1})
    return Counter(tuple(terms[i : i + size]) for i in range(len(terms) - size + 1))


def tfidf_vector(
    counts: Mapping[Shingle, int], doc_frequency: Mapping[Shingle, int], n_logs: int
) -> dict[Shingle, float]:
    """TF-IDF weights for one log; zero weights are dropped.

    doc_frequency and n_logs must count the query log itself, so every
    shingle of the log has n_A >= 1.
    """
    vector = {}
    for shingle, count in counts.items():
        n_a = doc_frequency.get(shingle, 1)
        weight = count * math.log(n_logs / n_a)
        if weight != 0.0:
            vector[shingle] = weight
    return vector


def cosine(v1: Mapping[Shingle, float], v2: Mapping[Shingle, float]) -> float:
    """Cosine similarity; 0 when either vector is zero."""
    if len(v2) < len(v1):
        v1, v2 = v2, v1
    dot = sum(w * v2[s] for s, w in v1.items() if s in v2)
    n1 = math.sqrt(sum(w * w for w in v1.values()))
    n2 = math.sqrt(sum(w * w for w in v2.values()))
    if n1 == 0.0 or n2 == 0.0:
        return 0.0
    return min(max(dot / (n1 * n2), 0.0), 1.0)


@dataclass(frozen=True)
class RankingEntry:
    record_id: str
    cause: str
    sim: float
    seq: int


RankingList = list[RankingEntry]


def _sort_ranking(entries: RankingList) -> RankingList:
    # descending similarity; ties go to the most recent record
    return sorted(entries, key=lambda e: (-e.sim, -e.seq))


class HistoryRanker:
    """Inverted-index ranker over a fixed set of history records.

    Records are added once; queries share the per-record base norms, which
    are adjusted per query for the query log's own contribution to the
    document frequencies. Intended to be cached per corpus snapshot.
    """

    def __init__(self, size: int = 2):
        self.size = size
        self._records: list[tuple[str, str, int, Counter]] = []
        self._df: Counter = Counter()
        self._postings: dict[Shingle, list[tuple[int, int]]] = {}
        self._base_norm_sq: list[float] = []
        self._base_dirty = False

    def __len__(self) -> int:
        return len(self._records)

    def add(self, record_id: str, cause: str, seq: int, counts: Counter):
        index = len(self._records)
        self._records.append((record_id, cause, seq, counts))
        for shingle, count in counts.items():
            self._df[shingle] += 1
            self._postings.setdefault(shingle, []).append((index, count))
        self._base_dirty = True

    def _rebuild_base(self):
        # Norms with the query counted in N but in no document frequency.
        n = len(self._records) + 1
        df = self._df
        log = math.log
        idf_cache = {s: log(n / d) for s, d in df.items()}
        self._base_norm_sq = [
            sum((c * idf_cache[s]) ** 2 for s, c in counts.items())
            for _, _, _, counts in self._records
        ]
        self._idf_cache = idf_cache
        self._base_dirty = False

    def rank(self, query_counts: Counter) -> RankingList:
        if not self._records:
            raise NoHistoryError("no history records to rank against")
        if self._base_dirty:
            self._rebuild_base()
        n = len(self._records) + 1
        df = self._df
        base_idf = self._idf_cache
        log = math.log

        query_norm_sq = 0.0
        dots = [0.0] * len(self._records)
        norm_adjust = [0.0] * len(self._records)
        for shingle, q_count in query_counts.items():
            n_a = df.get(shingle, 0) + 1
            idf = log(n / n_a)
            q_weight = q_count * idf
            query_norm_sq += q_weight * q_weight
            postings = self._postings.get(shingle)
            if not postings:
                continue
            old_idf = base_idf[shingle]
            idf_sq_delta = idf * idf - old_idf * old_idf
            for index, r_count in postings:
                dots[index] += q_weight * r_count * idf
                norm_adjust[index] += (r_count * r_count) * idf_sq_delta

        query_norm = math.sqrt(query_norm_sq)
        entries = []
        for index, (record_id, cause, seq, _) in enumerate(self._records):
            sim = 0.0
            if query_norm > 0.0 and dots[index] != 0.0:
                norm_sq = self._base_norm_sq[index] + norm_adjust[index]
                if norm_sq > 0.0:
                    sim = dots[index] / (math.sqrt(norm_sq) * query_norm)
                    sim = min(max(sim, 0.0), 1.0)
            entries.append(RankingEntry(record_id, cause, sim, seq))
        return _sort_ranking(entries)


def build_ranker(selected, size: int = 2) -> HistoryRanker:
    """Index a select_history result (verified AlarmRecords)."""
    ranker = HistoryRanker(size)
    for record in selected:
        ranker.add(
            record.alarm_id, record.cause, record.seq, record.shingle_counts(size)
        )
    return ranker


def rank_history(query_counts: Counter, selected, size: int = 2) -> RankingList:
    """Rank selected history records against a query log's shingle counts.

    Raises NoHistoryError when `selected` is empty.
    """
    if not selected:
        raise NoHistoryError("history selection is empty")
    return build_ranker(selected, size).rank(query_counts)
