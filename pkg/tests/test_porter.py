from hypothesis import given
from hypothesis import strategies as st

from logtriage.porter import stem

# word -> stem pairs from the classic algorithm description
KNOWN_STEMS = {
    "caresses": "caress", "ponies": "poni", "ties": "ti", "caress": "caress",
    "cats": "cat", "feed": "feed", "agreed": "agre", "plastered": "plaster",
    "bled": "bled", "motoring": "motor", "sing": "sing", "conflated": "conflat",
    "troubled": "troubl", "sized": "size", "hopping": "hop", "tanned": "tan",
    "falling": "fall", "hissing": "hiss", "fizzed": "fizz", "failing": "fail",
    "filing": "file", "happy": "happi", "sky": "sky", "relational": "relat",
    "conditional": "condit", "rational": "ration", "valenci": "valenc",
    "hesitanci": "hesit", "digitizer": "digit", "conformabli": "conform",
    "radicalli": "radic", "differentli": "differ", "vileli": "vile",
    "analogousli": "analog", "vietnamization": "vietnam",
    "predication": "predic", "operator": "oper", "feudalism": "feudal",
    "decisiveness": "decis", "hopefulness": "hope", "callousness": "callous",
    "formaliti": "formal", "sensitiviti": "sensit", "sensibiliti": "sensibl",
    "triplicate": "triplic", "formative": "form", "formalize": "formal",
    "electriciti": "electr", "electrical": "electr", "hopeful": "hope",
    "goodness": "good", "revival": "reviv", "allowance": "allow",
    "inference": "infer", "airliner": "airlin", "gyroscopic": "gyroscop",
    "adjustable": "adjust", "defensible": "defens", "irritant": "irrit",
    "replacement": "replac", "adjustment": "adjust", "dependent": "depend",
    "adoption": "adopt", "communism": "commun", "activate": "activ",
    "angulariti": "angular", "homologous": "homolog", "effective": "effect",
    "bowdlerize": "bowdler", "probate": "probat", "rate": "rate",
    "cease": "ceas", "controll": "control", "roll": "roll",
    "waiting": "wait", "data": "data", "exception": "except",
    "happens": "happen", "continuously": "continu",
}


def test_known_vocabulary():
    mismatches = {
        word: (stem(word), expected)
        for word, expected in KNOWN_STEMS.items()
        if stem(word) != expected
    }
    assert not mismatches


def test_short_words_unchanged():
    for word in ("a", "is", "be", "on", "x"):
        assert stem(word) == word


def test_non_alpha_tokens_unchanged():
    for token in ("x86", "com.example.foo", "2015-06-28", "eth0"):
        assert stem(token) == token


@given(st.text(alphabet="abcdefghijklmnopqrstuvwxyz", min_size=1, max_size=20))
def test_stem_never_longer_and_deterministic(word):
    result = stem(word)
    assert len(result) <= len(word)
    assert result == stem(word)
    assert result  # never empties a word
