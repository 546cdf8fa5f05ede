"""Word-length truncated formal power series with exact rational coefficients.

A :class:`Series` stores only nonzero coefficients of words of length at most
its ``horizon``.  Every coefficient inside the horizon is known exactly;
asking for one outside raises :class:`HorizonError` rather than returning 0.
Binary products are exact on the smaller of the two horizons.
"""

from __future__ import annotations

import itertools
import math
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Mapping

from .errors import AlphabetMismatchError, HorizonError, InvalidWordError
from .words import (
    EMPTY,
    Alphabet,
    Word,
    _shuffle_items,
    enumerate_words,
    format_word,
    parse_word,
    word_key,
)


def as_coefficient(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("coefficients must be exact; got a float")
    return Fraction(x)


def format_coefficient(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


class Series:
    """Truncated series over ``alphabet``; immutable once built."""

    __slots__ = ("alphabet", "horizon", "_table", "_by_length")

    def __init__(self, alphabet: Alphabet | int, horizon: int, table: Mapping | None = None):
        if isinstance(alphabet, int):
            alphabet = Alphabet(alphabet)
        if horizon < 0:
            raise ValueError("horizon must be nonnegative")
        self.alphabet = alphabet
        self.horizon = horizon
        clean = {}
        for w, q in (table or {}).items():
            w = alphabet.check(w)
            if len(w) > horizon:
                continue
            q = as_coefficient(q)
            if q:
                clean[w] = q
        self._table = clean
        self._by_length = None

    @classmethod
    def _raw(cls, alphabet: Alphabet, horizon: int, table: dict) -> "Series":
        # trusted constructor: keys valid and within horizon, values nonzero Fractions
        s = cls.__new__(cls)
        s.alphabet = alphabet
        s.horizon = horizon
        s._table = table
        s._by_length = None
        return s

    @classmethod
    def zero(cls, alphabet: Alphabet | int = 1, horizon: int = 0) -> "Series":
        return cls(alphabet, horizon)

    @classmethod
    def monomial(cls, word, coeff=1, alphabet: Alphabet | int = 1, horizon: int | None = None):
        w = tuple(word)
        return cls(alphabet, len(w) if horizon is None else horizon, {w: coeff})

    @property
    def table(self) -> Mapping:
        return MappingProxyType(self._table)

    @property
    def m(self) -> int:
        return self.alphabet.m

    def support(self) -> frozenset:
        return frozenset(self._table)

    def items(self):
        """Nonzero terms in canonical (length, lex) word order."""
        for w in sorted(self._table, key=word_key):
            yield w, self._table[w]

    def by_length(self) -> dict:
        if self._by_length is None:
            groups = defaultdict(list)
            for w, q in self._table.items():
                groups[len(w)].append((w, q))
            self._by_length = dict(groups)
        return self._by_length

    def coefficient(self, word) -> Fraction:
        w = self.alphabet.check(word)
        if len(w) > self.horizon:
            raise HorizonError(
                f"word {format_word(w)} has length {len(w)} > horizon {self.horizon}"
            )
        return self._table.get(w, Fraction(0))

    __getitem__ = coefficient

    def truncate(self, horizon: int) -> "Series":
        if horizon > self.horizon:
            raise HorizonError(f"cannot extend horizon {self.horizon} to {horizon}")
        table = {w: q for w, q in self._table.items() if len(w) <= horizon}
        return Series._raw(self.alphabet, horizon, table)

    def with_horizon(self, horizon: int) -> "Series":
        """Reinterpret a polynomial at a larger horizon (exact only for polynomials
        whose true support lies within the current horizon)."""
        if horizon < self.horizon:
            return self.truncate(horizon)
        return Series._raw(self.alphabet, horizon, dict(self._table))

    def is_zero(self) -> bool:
        return not self._table

    def __len__(self):
        return len(self._table)

    def __eq__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        return (
            self.alphabet == other.alphabet
            and self.horizon == other.horizon
            and self._table == other._table
        )

    def __hash__(self):
        return hash((self.alphabet, self.horizon, frozenset(self._table.items())))

    def __repr__(self):
        return f"Series(m={self.m}, horizon={self.horizon}, {to_literal(self)!r})"

    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return add(self, scale(-1, other))

    def __neg__(self):
        return scale(-1, self)

    def __rmul__(self, alpha):
        return scale(alpha, self)


def _common(c: Series, d: Series) -> tuple:
    if c.alphabet != d.alphabet:
        raise AlphabetMismatchError(f"alphabets differ: m={c.m} vs m={d.m}")
    return c.alphabet, min(c.horizon, d.horizon)


def add(c: Series, d: Series) -> Series:
    alphabet, L = _common(c, d)
    out = {w: q for w, q in c._table.items() if len(w) <= L}
    for w, q in d._table.items():
        if len(w) <= L:
            s = out.get(w, 0) + q
            if s:
                out[w] = s
            else:
                out.pop(w, None)
    return Series._raw(alphabet, L, out)


def scale(alpha, c: Series) -> Series:
    alpha = as_coefficient(alpha)
    if not alpha:
        return Series._raw(c.alphabet, c.horizon, {})
    return Series._raw(c.alphabet, c.horizon, {w: alpha * q for w, q in c._table.items()})


def hadamard(c: Series, d: Series) -> Series:
    alphabet, L = _common(c, d)
    small, big = (c, d) if len(c) <= len(d) else (d, c)
    out = {}
    for w, q in small._table.items():
        r = big._table.get(w)
        if r is not None and len(w) <= L:
            out[w] = q * r
    return Series._raw(alphabet, L, out)


def _bilinear(c: Series, d: Series, word_product) -> Series:
    alphabet, L = _common(c, d)
    out = defaultdict(Fraction)
    d_groups = d.by_length()
    for i, terms_c in c.by_length().items():
        for j, terms_d in d_groups.items():
            if i + j > L:
                continue
            for u, p in terms_c:
                for v, q in terms_d:
                    word_product(out, u, v, p * q)
    return Series._raw(alphabet, L, {w: q for w, q in out.items() if q})


def _concat_into(out, u, v, pq):
    out[u + v] += pq


def _shuffle_into(out, u, v, pq):
    for w, k in _shuffle_items(u, v):
        out[w] += k * pq


def cauchy(c: Series, d: Series) -> Series:
    """Concatenation product."""
    return _bilinear(c, d, _concat_into)


def shuffle(c: Series, d: Series) -> Series:
    return _bilinear(c, d, _shuffle_into)


def one(alphabet: Alphabet | int = 1, horizon: int = 0) -> Series:
    if isinstance(alphabet, int):
        alphabet = Alphabet(alphabet)
    return Series._raw(alphabet, horizon, {EMPTY: Fraction(1)})


def shuffle_power(c: Series, n: int) -> Series:
    if n < 0:
        raise ValueError("shuffle power must be nonnegative")
    result = one(c.alphabet, c.horizon)
    for _ in range(n):
        result = shuffle(c, result)
    return result


def left_shift(c: Series, xi) -> Series:
    """Apply the left-shift operator xi^{-1}: strip the prefix ``xi`` from each word.

    The result is exact on horizon ``c.horizon - len(xi)``.
    """
    xi = c.alphabet.check(xi)
    k = len(xi)
    if k > c.horizon:
        raise HorizonError(f"shift by a word of length {k} exceeds horizon {c.horizon}")
    out = {w[k:]: q for w, q in c._table.items() if w[:k] == xi}
    return Series._raw(c.alphabet, c.horizon - k, out)


def augment_left(xi, c: Series) -> Series:
    xi = c.alphabet.check(xi)
    return Series._raw(c.alphabet, c.horizon + len(xi), {xi + w: q for w, q in c._table.items()})


def augment_right(c: Series, xi) -> Series:
    xi = c.alphabet.check(xi)
    return Series._raw(c.alphabet, c.horizon + len(xi), {w + xi: q for w, q in c._table.items()})


def support_by_length(c: Series) -> list:
    """Number of support words at each length 0..horizon."""
    counts = [0] * (c.horizon + 1)
    for w in c._table:
        counts[len(w)] += 1
    return counts


# --------------------------------------------------------------------------
# polynomial literals: "2 x1 x1 + 1 x0", "-1/2 e"


def parse_literal(text: str, alphabet: Alphabet | int = 1, horizon: int | None = None) -> Series:
    """Parse a polynomial literal.

    Terms are ``<rational> <word>`` separated by ``+`` or newlines; a bare word
    has coefficient 1.  With ``horizon=None`` the horizon is the longest word.
    Terms longer than an explicit horizon are truncated away.
    """
    if isinstance(alphabet, int):
        alphabet = Alphabet(alphabet)
    terms = defaultdict(Fraction)
    for raw in text.replace("\n", "+").split("+"):
        raw = raw.strip()
        if not raw:
            continue
        head, _, rest = raw.partition(" ")
        if head.startswith("x") or head == "e":
            coeff, word_text = Fraction(1), raw
        else:
            try:
                coeff = Fraction(head)
            except (ValueError, ZeroDivisionError):
                raise InvalidWordError(f"bad rational literal {head!r} in term {raw!r}") from None
            word_text = rest
        w = alphabet.check(parse_word(word_text))
        terms[w] += coeff
    if horizon is None:
        horizon = max((len(w) for w in terms), default=0)
    return Series(alphabet, horizon, terms)


def to_literal(c: Series, sep: str = " + ") -> str:
    if c.is_zero():
        return "0 e"
    return sep.join(f"{format_coefficient(q)} {format_word(w)}" for w, q in c.items())


# --------------------------------------------------------------------------
# named families


FAMILIES = (
    "char_all",
    "letter_star",
    "repeated_word_star",
    "linear_siso",
    "linear_full",
    "input_limited",
    "even_palindromes",
    "word_power",
    "factorial_x1",
)


@dataclass(frozen=True)
class SeriesFamily:
    """A named infinite series, materialised at a horizon by :func:`build_family`.

    ``params`` by family: letter_star ``letter``; repeated_word_star ``word``;
    linear_siso ``r``; input_limited ``N``; word_power ``N``.
    """

    name: str
    params: Mapping = field(default_factory=dict)
    m: int = 1

    def build(self, horizon: int) -> Series:
        return build_family(self, horizon)


def _need(params, key, minimum):
    if key not in params:
        raise ValueError(f"missing parameter {key!r}")
    v = params[key]
    if not isinstance(v, int) or v < minimum:
        raise ValueError(f"parameter {key!r} must be an integer >= {minimum}, got {v!r}")
    return v


def build_family(f: SeriesFamily, L: int) -> Series:
    alphabet = Alphabet(f.m)
    p = f.params
    ONE = Fraction(1)
    if L < 0:
        raise ValueError("horizon must be nonnegative")

    if f.name == "char_all":
        table = {w: ONE for w in enumerate_words(alphabet, L)}
    elif f.name == "letter_star":
        i = _need(p, "letter", 0)
        alphabet.check((i,))
        table = {(i,) * k: ONE for k in range(L + 1)}
    elif f.name == "repeated_word_star":
        xi = p.get("word")
        if isinstance(xi, str):
            xi = parse_word(xi)
        if not xi:
            raise ValueError("repeated_word_star needs a nonempty word")
        xi = alphabet.check(xi)
        table = {xi * k: ONE for k in range(L // len(xi) + 1)}
    elif f.name == "linear_siso":
        r = _need(p, "r", 1)
        _need_controlled(alphabet)
        table = {(0,) * (n - 1) + (1,): ONE for n in range(r, L + 1)}
    elif f.name == "linear_full":
        _need_controlled(alphabet)
        table = {}
        for k in range(1, L + 1):
            for a in range(k):
                table[(0,) * a + (1,) + (0,) * (k - 1 - a)] = ONE
    elif f.name == "input_limited":
        # N = 0 gives x0*, the c_0 of the partial sums d_M
        N = _need(p, "N", 0)
        _need_controlled(alphabet)
        table = {}
        for k in range(N, L + 1):
            for pos in itertools.combinations(range(k), N):
                w = [0] * k
                for j in pos:
                    w[j] = 1
                table[tuple(w)] = ONE
    elif f.name == "even_palindromes":
        table = {}
        for xi in enumerate_words(alphabet, L // 2):
            table[xi + xi[::-1]] = ONE
    elif f.name == "word_power":
        N = _need(p, "N", 1)
        table = {eta * N: ONE for eta in enumerate_words(alphabet, L // N)}
    elif f.name == "factorial_x1":
        _need_controlled(alphabet)
        table = {(1,) * k: Fraction(math.factorial(k)) for k in range(L + 1)}
    else:
        raise ValueError(f"unknown series family {f.name!r}; known: {', '.join(FAMILIES)}")
    return Series._raw(alphabet, L, table)


def _need_controlled(alphabet):
    if alphabet.m < 1:
        raise ValueError("family needs the controlled letter x1 (m >= 1)")


def family(name: str, L: int, m: int = 1, **params) -> Series:
    """Shorthand: ``family("letter_star", 10, letter=0)``."""
    return build_family(SeriesFamily(name, params, m), L)


def series_from_words(words: Iterable, alphabet: Alphabet | int = 1, horizon: int = 0) -> Series:
    """Characteristic series of a finite set of words."""
    return Series(alphabet, horizon, {tuple(w): 1 for w in words})
