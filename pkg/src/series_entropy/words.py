"""Alphabets, words, gradings and degree-slice counting.

Words are plain tuples of letter indices; ``()`` is the empty word.  Index 0
is the drift letter ``x0``.  The canonical order on words is by length, then
lexicographically by letter index (see :func:`word_key`).
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

from .errors import InvalidWordError

Word = tuple  # tuple[int, ...]

EMPTY: Word = ()


@dataclass(frozen=True)
class Alphabet:
    """The alphabet ``{x0, ..., xm}``; ``m`` counts the controlled letters."""

    m: int = 1

    def __post_init__(self):
        if self.m < 0:
            raise ValueError(f"m must be nonnegative, got {self.m}")

    @property
    def size(self) -> int:
        return self.m + 1

    @property
    def letters(self) -> range:
        return range(self.m + 1)

    def check(self, word: Sequence[int]) -> Word:
        """Return ``word`` as a tuple, raising if any letter is out of range."""
        w = tuple(word)
        for i in w:
            if not isinstance(i, int) or not 0 <= i <= self.m:
                raise InvalidWordError(f"letter index {i!r} not in 0..{self.m}")
        return w


def word_key(w: Word):
    return (len(w), w)


def letter_count(w: Word, i: int) -> int:
    return w.count(i)


def parse_word(text: str) -> Word:
    """Parse ``"x0 x1 x0"`` into ``(0, 1, 0)``; ``"e"`` (or blank) is the empty word.

    Tokens may also be run together (``"x0x1"``).
    """
    text = text.strip()
    if text in ("", "e"):
        return EMPTY
    letters = []
    for tok in text.replace("x", " x").split():
        if not (tok.startswith("x") and tok[1:].isdigit()):
            raise InvalidWordError(f"bad letter token {tok!r} in word {text!r}")
        letters.append(int(tok[1:]))
    return tuple(letters)


def format_word(w: Word) -> str:
    return " ".join(f"x{i}" for i in w) if w else "e"


def enumerate_words(alphabet: Alphabet, max_len: int) -> Iterator[Word]:
    """All words of length <= max_len, shortest first, lexicographic within a length."""
    if max_len < 0:
        raise ValueError("max_len must be nonnegative")
    for k in range(max_len + 1):
        yield from itertools.product(alphabet.letters, repeat=k)


def count_words(alphabet: Alphabet, max_len: int) -> int:
    return sum(alphabet.size**k for k in range(max_len + 1))


# --------------------------------------------------------------------------
# gradings


@dataclass(frozen=True)
class Grading:
    """Word degrees from per-letter weights plus an offset for the empty word."""

    letter_degrees: tuple
    empty_word_degree: int = 0
    name: str = "custom"

    def __post_init__(self):
        object.__setattr__(self, "letter_degrees", tuple(int(d) for d in self.letter_degrees))
        if not self.letter_degrees:
            raise ValueError("a grading needs at least one letter")
        if min(self.letter_degrees) < 1:
            raise ValueError("letter degrees must be positive")
        if self.empty_word_degree < 0:
            raise ValueError("empty word degree must be nonnegative")

    @classmethod
    def wordlen(cls, m: int = 1) -> "Grading":
        return cls((1,) * (m + 1), 0, "wordlen")

    @classmethod
    def alt(cls, m: int = 1) -> "Grading":
        """x0 weighs twice the other letters and the empty word has degree 1."""
        return cls((2,) + (1,) * m, 1, "alt")

    @property
    def m(self) -> int:
        return len(self.letter_degrees) - 1

    @property
    def alphabet(self) -> Alphabet:
        return Alphabet(self.m)

    @property
    def min_letter_degree(self) -> int:
        return min(self.letter_degrees)

    def degree(self, w: Sequence[int]) -> int:
        return word_degree(w, self)

    def max_length_of_degree(self, n: int) -> int:
        """Longest possible word of degree <= n (-1 if none)."""
        if n < self.empty_word_degree:
            return -1
        return (n - self.empty_word_degree) // self.min_letter_degree

    def complete_degree(self, horizon: int) -> int:
        """Largest n such that every word of degree <= n has length <= horizon."""
        return (horizon + 1) * self.min_letter_degree + self.empty_word_degree - 1


GRADING_PRESETS = ("wordlen", "alt")


def grading_by_name(name: str, m: int = 1) -> Grading:
    if name == "wordlen":
        return Grading.wordlen(m)
    if name == "alt":
        return Grading.alt(m)
    raise ValueError(f"unknown grading {name!r}; expected one of {GRADING_PRESETS}")


def word_degree(w: Sequence[int], g: Grading) -> int:
    degs = g.letter_degrees
    total = g.empty_word_degree
    for i in w:
        if not isinstance(i, int) or not 0 <= i < len(degs):
            raise InvalidWordError(f"letter index {i!r} not in 0..{len(degs) - 1}")
        total += degs[i]
    return total


@lru_cache(maxsize=64)
def _weight_counts(letter_degrees: tuple, n_max: int) -> tuple:
    # c[w] = number of words of total letter weight w
    c = [0] * (n_max + 1)
    if n_max >= 0:
        c[0] = 1
    for w in range(1, n_max + 1):
        c[w] = sum(c[w - d] for d in letter_degrees if d <= w)
    return tuple(c)


def grading_dimension(g: Grading, n: int) -> int:
    """Number of words of degree exactly ``n``."""
    w = n - g.empty_word_degree
    if w < 0:
        return 0
    return _weight_counts(g.letter_degrees, w)[w]


def grading_dimensions(g: Grading, n_max: int) -> list:
    """``[grading_dimension(g, n) for n in range(n_max + 1)]``, in one DP pass."""
    e = g.empty_word_degree
    c = _weight_counts(g.letter_degrees, max(n_max - e, 0))
    return [c[n - e] if n >= e else 0 for n in range(n_max + 1)]


@dataclass(frozen=True)
class GrowthParams:
    """|X(n)| ~ K * gamma**n.  K is for display only; entropy never uses it."""

    gamma: float
    K: float


def bisect_growth_rate(g: Grading, rtol: float = 1e-12) -> float:
    """gamma = 1/rho with rho the root in (0, 1] of 1 - sum_i z**deg_i."""
    degs = g.letter_degrees

    def f(z):
        return 1.0 - sum(z**d for d in degs)

    lo, hi = 0.0, 1.0
    if f(hi) >= 0:
        return 1.0
    while hi - lo > rtol * hi:
        mid = 0.5 * (lo + hi)
        if f(mid) > 0:
            lo = mid
        else:
            hi = mid
    return 1.0 / (0.5 * (lo + hi))


def growth_params(g: Grading) -> GrowthParams:
    if g.name == "wordlen" and set(g.letter_degrees) == {1} and g.empty_word_degree == 0:
        gamma = float(g.m + 1)
    elif g.name == "alt" and g.letter_degrees == (2,) + (1,) * g.m and g.empty_word_degree == 1:
        gamma = (g.m + math.sqrt(g.m**2 + 4)) / 2
    else:
        gamma = bisect_growth_rate(g)
    # residue of 1/(1 - sum z^d) at rho gives c(w) ~ rho^-w / sum(d rho^d)
    rho = 1.0 / gamma
    denom = sum(d * rho**d for d in g.letter_degrees)
    K = gamma ** (-g.empty_word_degree) / denom
    return GrowthParams(gamma, K)


# --------------------------------------------------------------------------
# shuffles of words


@lru_cache(maxsize=1 << 16)
def _shuffle_items(a: Word, b: Word) -> tuple:
    if not a:
        return ((b, 1),)
    if not b:
        return ((a, 1),)
    out = Counter()
    head = a[:1]
    for w, k in _shuffle_items(a[1:], b):
        out[head + w] += k
    head = b[:1]
    for w, k in _shuffle_items(a, b[1:]):
        out[head + w] += k
    return tuple(out.items())


def shuffle_words(a: Sequence[int], b: Sequence[int]) -> dict:
    """Shuffle product of two words as ``{word: multiplicity}``."""
    return dict(_shuffle_items(tuple(a), tuple(b)))
