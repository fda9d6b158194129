"""Bilingual test-log preprocessing.

A raw log is split into Chinese and English spans, the English spans are
tokenized, stop-filtered and Porter-stemmed, the Chinese spans are
segmented by forward maximum matching against a pluggable dictionary, and
the surviving terms are merged back in original order.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, NamedTuple, Sequence

from . import porter
from .errors import EmptyLogError

CHINESE_SPAN_RE = re.compile(r"[一-龥]+")
ENGLISH_TOKEN_RE = re.compile(r"[\w-]+(?:\.[\w-]+)*")
_NUMBER_SEPARATORS = {ord(c): None for c in "-._"}


class Language(enum.Enum):
    ENGLISH = "en"
    CHINESE = "zh"


@dataclass(frozen=True)
class RawTestLog:
    """One failed test script's log plus the metadata used for retrieval."""

    alarm_id: str
    script_id: str
    function_point: str
    day_index: int
    lines: tuple[str, ...]

    def text(self) -> str:
        return "\n".join(self.lines)


class Term(NamedTuple):
    surface: str
    language: Language
    source_offset: int  # byte offset into the joined log text


TermSequence = list[Term]


class SegmentationDictionary:
    """Word list for forward-maximum-match Chinese segmentation."""

    def __init__(self, words: Iterable[str] = ()):
        self.words = frozenset(w for w in words if w)
        self.max_len = max((len(w) for w in self.words), default=0)

    def __contains__(self, word: str) -> bool:
        return word in self.words

    def __len__(self) -> int:
        return len(self.words)

    @classmethod
    def load(cls, path) -> "SegmentationDictionary":
        """Read a UTF-8 word-per-line file; '#' starts a comment."""
        words = []
        with open(path, encoding="utf-8") as fh:
            for line in fh:
                word = line.split("#", 1)[0].strip()
                if word:
                    words.append(word)
        return cls(words)


EMPTY_DICTIONARY = SegmentationDictionary()


def split_language_spans(text: str) -> list[tuple[str, Language]]:
    """Partition text into maximal Chinese/English spans, order preserved."""
    spans = []
    pos = 0
    for match in CHINESE_SPAN_RE.finditer(text):
        if match.start() > pos:
            spans.append((text[pos : match.start()], Language.ENGLISH))
        spans.append((match.group(), Language.CHINESE))
        pos = match.end()
    if pos < len(text):
        spans.append((text[pos:], Language.ENGLISH))
    return spans


def tokenize_english(span: str) -> list[tuple[str, int]]:
    """Tokenize an English span; returns (token, char offset) pairs."""
    return [(m.group(), m.start()) for m in ENGLISH_TOKEN_RE.finditer(span)]


def is_stop_term(token: str) -> bool:
    """Single letters, punctuation and numbers are stop terms.

    A token is a number when stripping '-', '.' and '_' leaves only
    digits. Single Chinese characters are kept: they are words, not
    letters.
    """
    if not token:
        return True
    if len(token) == 1:
        return not CHINESE_SPAN_RE.fullmatch(token)
    if not any(c.isalnum() for c in token):
        return True
    stripped = token.translate(_NUMBER_SEPARATORS)
    return bool(stripped) and stripped.isdigit()


@lru_cache(maxsize=1 << 16)
def stem_term(token: str) -> str:
    """Lowercase and Porter-stem a surviving English token."""
    return porter.stem(token.lower())


def segment_chinese(
    span: str, dictionary: SegmentationDictionary = EMPTY_DICTIONARY
) -> list[tuple[str, int]]:
    """Greedy forward-maximum-match segmentation with bigram fallback.

    Characters covered by no dictionary word are emitted as overlapping
    character bigrams; an isolated character is emitted on its own.
    """
    matched: list[tuple[str, int]] = []
    unmatched_runs: list[tuple[int, int]] = []  # [start, end) char ranges
    i = 0
    run_start = None
    while i < len(span):
        word = None
        if dictionary.max_len:
            for length in range(min(dictionary.max_len, len(span) - i), 0, -1):
                candidate = span[i : i + length]
                if candidate in dictionary:
                    word = candidate
                    break
        if word is not None:
            if run_start is not None:
                unmatched_runs.append((run_start, i))
                run_start = None
            matched.append((word, i))
            i += len(word)
        else:
            if run_start is None:
                run_start = i
            i += 1
    if run_start is not None:
        unmatched_runs.append((run_start, len(span)))

    for start, end in unmatched_runs:
        if end - start == 1:
            matched.append((span[start:end], start))
        else:
            for j in range(start, end - 1):
                matched.append((span[j : j + 2], j))
    matched.sort(key=lambda item: item[1])
    return matched


class _ByteOffsets:
    """Char index -> UTF-8 byte offset; identity for pure-ASCII text."""

    def __init__(self, text: str):
        if text.isascii():
            self._table = None
        else:
            table = [0] * (len(text) + 1)
            total = 0
            for i, ch in enumerate(text):
                total += len(ch.encode("utf-8"))
                table[i + 1] = total
            self._table = table

    def __getitem__(self, index: int) -> int:
        return index if self._table is None else self._table[index]


def preprocess_text(
    text: str, dictionary: SegmentationDictionary = EMPTY_DICTIONARY
) -> TermSequence:
    """Run the full preprocessing pipeline over one log text."""
    byte_at = _ByteOffsets(text)
    terms: TermSequence = []
    span_start = 0
    for span, language in split_language_spans(text):
        if language is Language.ENGLISH:
            for token, offset in tokenize_english(span):
                if is_stop_term(token):
                    continue
                surface = stem_term(token)
                if is_stop_term(surface):
                    continue
                terms.append(
                    Term(surface, Language.ENGLISH, byte_at[span_start + offset])
                )
        else:
            for token, offset in segment_chinese(span, dictionary):
                if is_stop_term(token):
                    continue
                terms.append(
                    Term(token, Language.CHINESE, byte_at[span_start + offset])
                )
        span_start += len(span)
    return terms


def preprocess_log(
    raw: RawTestLog, dictionary: SegmentationDictionary = EMPTY_DICTIONARY
) -> TermSequence:
    """Preprocess a raw log; raises EmptyLogError when nothing survives."""
    terms = preprocess_text(raw.text(), dictionary)
    if not terms:
        raise EmptyLogError(f"log {raw.alarm_id!r} has no analyzable terms")
    return terms


def surfaces(terms: Sequence[Term]) -> list[str]:
    return [t.surface for t in terms]
