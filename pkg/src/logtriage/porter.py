"""Classic Porter suffix-stripping stemmer.

Implements the original five-step algorithm over lowercase ASCII words.
Words of length 1 or 2 are returned unchanged. Tokens containing
characters outside a-z are returned as-is; callers lowercase first.
"""

_VOWELS = "aeiou"


class _Stemmer:
    """Mutable word buffer walked by the step functions.

    b is the word, k the index of its last relevant character, j the end
    of the stem a candidate suffix was matched against.
    """

    def __init__(self, word: str):
        self.b = word
        self.k = len(word) - 1
        self.j = 0

    def cons(self, i: int) -> bool:
        ch = self.b[i]
        if ch in _VOWELS:
            return False
        if ch == "y":
            return True if i == 0 else not self.cons(i - 1)
        return True

    def m(self) -> int:
        """Number of consonant-vowel sequences in b[0..j]."""
        n = 0
        i = 0
        while True:
            if i > self.j:
                return n
            if not self.cons(i):
                break
            i += 1
        i += 1
        while True:
            while True:
                if i > self.j:
                    return n
                if self.cons(i):
                    break
                i += 1
            i += 1
            n += 1
            while True:
                if i > self.j:
                    return n
                if not self.cons(i):
                    break
                i += 1
            i += 1

    def vowel_in_stem(self) -> bool:
        return any(not self.cons(i) for i in range(self.j + 1))

    def double_cons(self, j: int) -> bool:
        if j < 1:
            return False
        if self.b[j] != self.b[j - 1]:
            return False
        return self.cons(j)

    def cvc(self, i: int) -> bool:
        if i < 2 or not self.cons(i) or self.cons(i - 1) or not self.cons(i - 2):
            return False
        return self.b[i] not in "wxy"

    def ends(self, s: str) -> bool:
        length = len(s)
        if length > self.k + 1:
            return False
        if self.b[self.k - length + 1 : self.k + 1] != s:
            return False
        self.j = self.k - length
        return True

    def set_to(self, s: str):
        self.b = self.b[: self.j + 1] + s + self.b[self.j + 1 + len(s) :]
        self.k = self.j + len(s)

    def replace_if_m(self, s: str):
        if self.m() > 0:
            self.set_to(s)

    def step1ab(self):
        if self.b[self.k] == "s":
            if self.ends("sses"):
                self.k -= 2
            elif self.ends("ies"):
                self.set_to("i")
            elif self.b[self.k - 1] != "s":
                self.k -= 1
        if self.ends("eed"):
            if self.m() > 0:
                self.k -= 1
        elif (self.ends("ed") or self.ends("ing")) and self.vowel_in_stem():
            self.k = self.j
            if self.ends("at"):
                self.set_to("ate")
            elif self.ends("bl"):
                self.set_to("ble")
            elif self.ends("iz"):
                self.set_to("ize")
            elif self.double_cons(self.k):
                if self.b[self.k] not in "lsz":
                    self.k -= 1
            elif self.m() == 1 and self.cvc(self.k):
                self.set_to("e")

    def step1c(self):
        if self.ends("y") and self.vowel_in_stem():
            self.b = self.b[: self.k] + "i" + self.b[self.k + 1 :]

    _STEP2 = (
        ("ational", "ate"), ("tional", "tion"),
        ("enci", "ence"), ("anci", "ance"),
        ("izer", "ize"),
        ("abli", "able"), ("alli", "al"), ("entli", "ent"),
        ("eli", "e"), ("ousli", "ous"),
        ("ization", "ize"), ("ation", "ate"), ("ator", "ate"),
        ("alism", "al"), ("iveness", "ive"), ("fulness", "ful"),
        ("ousness", "ous"),
        ("aliti", "al"), ("iviti", "ive"), ("biliti", "ble"),
    )

    _STEP3 = (
        ("icate", "ic"), ("ative", ""), ("alize", "al"),
        ("iciti", "ic"), ("ical", "ic"), ("ful", ""), ("ness", ""),
    )

    def _map_suffixes(self, table):
        for suffix, replacement in table:
            if self.ends(suffix):
                self.replace_if_m(replacement)
                return

    def step2(self):
        self._map_suffixes(self._STEP2)

    def step3(self):
        self._map_suffixes(self._STEP3)

    _STEP4 = (
        "al", "ance", "ence", "er", "ic", "able", "ible", "ant",
        "ement", "ment", "ent",
    )
    _STEP4_TAIL = ("ou", "ism", "ate", "iti", "ous", "ive", "ize")

    def step4(self):
        for suffix in self._STEP4:
            if self.ends(suffix):
                if self.m() > 1:
                    self.k = self.j
                return
        if self.ends("ion") and self.j >= 0 and self.b[self.j] in "st":
            if self.m() > 1:
                self.k = self.j
            return
        for suffix in self._STEP4_TAIL:
            if self.ends(suffix):
                if self.m() > 1:
                    self.k = self.j
                return

    def step5(self):
        self.j = self.k
        if self.b[self.k] == "e":
            a = self.m()
            if a > 1 or (a == 1 and not self.cvc(self.k - 1)):
                self.k -= 1
        if self.b[self.k] == "l" and self.double_cons(self.k) and self.m() > 1:
            self.k -= 1


def stem(word: str) -> str:
    """Return the Porter stem of a lowercase word."""
    if len(word) <= 2 or not word.isascii() or not word.isalpha():
        return word
    s = _Stemmer(word)
    s.step1ab()
    s.step1c()
    s.step2()
    s.step3()
    s.step4()
    s.step5()
    return s.b[: s.k + 1]
