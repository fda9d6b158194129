import random

import pytest

from logtriage.corpus import Corpus
from logtriage.preprocess import RawTestLog

WORDS = (
    "socket buffer retry timeout packet session channel module handler "
    "thread queue device interface schema update proxy config driver kernel "
    "payload request response status failure warning assert cleanup"
).split()


def make_log(alarm_id, lines, fp="AUS", day=0, script="S1"):
    return RawTestLog(
        alarm_id=alarm_id,
        script_id=script,
        function_point=fp,
        day_index=day,
        lines=tuple(lines),
    )


def random_lines(rng, n_lines=5, tokens=5, vocab=WORDS):
    return [" ".join(rng.choice(vocab) for _ in range(tokens)) for _ in range(n_lines)]


def build_verified_corpus(entries, labels=None):
    """entries: iterable of (alarm_id, lines, cause, fp, day)."""
    causes = {cause for _, _, cause, _, _ in entries}
    corpus = Corpus(labels=(labels or set()) | causes | {"C1", "C2", "C3", "C4"})
    for alarm_id, lines, cause, fp, day in entries:
        corpus.ingest(make_log(alarm_id, lines, fp=fp, day=day))
        corpus.confirm(alarm_id, cause)
    return corpus


@pytest.fixture
def rng():
    return random.Random(20150628)
