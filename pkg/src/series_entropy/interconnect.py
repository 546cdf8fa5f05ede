"""Series products induced by system interconnections.

Composition (cascade) uses the substitution map psi_d with
psi_d(x_i)(e) = x0 (d_i shuffle e) and d_0 = 1; the composition unit is the
marker :data:`DELTA`.  Unity feedback around sum_k k! x1^k is available through
the Devlin recursion; the general feedback product is not implemented.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import AlphabetMismatchError, UnsupportedOperationError
from .series import Series, as_coefficient, one, shuffle
from .words import Alphabet, Word, word_key


class CompositionUnit:
    """The generalized series delta: the identity for ``compose``.  Not a Series."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "DELTA"


DELTA = CompositionUnit()


def _feeds(c: Series, d) -> list:
    """Per-letter feed series [d_0 = 1, d_1, ..., d_m]."""
    if isinstance(d, Series):
        d = [d]
    d = list(d)
    if len(d) != c.m:
        raise AlphabetMismatchError(f"need {c.m} feed series (one per controlled letter), got {len(d)}")
    for di in d:
        if di.alphabet != c.alphabet:
            raise AlphabetMismatchError("feed series must share the alphabet of c")
    return d


def compose(c: Series, d: Series | Sequence[Series]) -> Series:
    """Composition product c o d, exact on ``min`` of the horizons.

    For m > 1 pass one feed series per controlled letter.  Each psi step adds
    at least one letter, so truncating intermediates to the horizon is exact.
    """
    feeds = _feeds(c, d)
    L = min([c.horizon] + [di.horizon for di in feeds])
    alphabet = c.alphabet
    unit = one(alphabet, L)
    feeds = [unit] + [di.truncate(L) for di in feeds]
    cache: dict = {(): unit}

    def psi_one(eta: Word) -> Series:
        # psi_d(eta)(1), built from the last letter backwards and shared by suffix
        e = cache.get(eta)
        if e is None:
            tail = psi_one(eta[1:])
            e = _x0_prefix(shuffle(feeds[eta[0]], tail), L)
            cache[eta] = e
        return e

    out: dict = {}
    for eta, q in sorted(c.table.items(), key=lambda kv: word_key(kv[0])):
        if len(eta) > L:
            continue
        for w, r in psi_one(eta).table.items():
            s = out.get(w, 0) + q * r
            if s:
                out[w] = s
            else:
                out.pop(w)
    return Series._raw(alphabet, L, out)


def _x0_prefix(e: Series, L: int) -> Series:
    return Series._raw(e.alphabet, L, {(0,) + w: q for w, q in e.table.items() if len(w) < L})


def compose_with_unit(c, d):
    """``compose`` that also accepts DELTA on either side."""
    if d is DELTA:
        return c
    if c is DELTA:
        return d
    return compose(c, d)


def feedback(c, d):
    """General feedback product c@d.  Only unity feedback around
    sum_k k! x1^k is computable here, via :func:`devlin_feedback`."""
    raise UnsupportedOperationError(
        "general feedback product c@d needs the Hopf algebra antipode; use devlin_feedback for c@delta"
    )


# --------------------------------------------------------------------------
# Devlin polynomials


def devlin_polynomials(n_max: int) -> list:
    """[b_1, ..., b_{n_max}] as {word: int} dicts.

    b_0 = 0, b_1 = 1, b_n = (n-1) b_{n-1} x1 + (n-2) b_{n-2} x0.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    prev2: dict = {}
    prev: dict = {(): 1}
    out = [prev]
    for n in range(2, n_max + 1):
        b: dict = {}
        for w, q in prev.items():
            b[w + (1,)] = (n - 1) * q
        for w, q in prev2.items():
            key = w + (0,)
            b[key] = b.get(key, 0) + (n - 2) * q
        b = {w: q for w, q in b.items() if q}
        out.append(b)
        prev2, prev = prev, b
    return out


def devlin_polynomial(n: int) -> Series:
    """b_n as a Series whose horizon is its length bound n - 1."""
    b = devlin_polynomials(n)[-1]
    return Series(1, max(n - 1, 0), b)


def devlin_feedback(n_max: int | None, L: int) -> Series:
    """sum_{n <= n_max} b_n truncated to word length L.

    The sum is exactly c@delta on the horizon once n_max >= 2L + 1, the largest
    degree of a length-L word; ``n_max=None`` picks that value.
    """
    if n_max is None:
        n_max = 2 * L + 1
    total: dict = {}
    for b in devlin_polynomials(n_max):
        for w, q in b.items():
            if len(w) <= L:
                total[w] = total.get(w, 0) + q
    return Series(1, L, total)


# --------------------------------------------------------------------------
# bilinear / affine realizations


def _frac_vec(v) -> tuple:
    return tuple(as_coefficient(x) for x in v)


def _frac_mat(a) -> tuple:
    return tuple(_frac_vec(row) for row in a)


@dataclass(frozen=True)
class BilinearRealization:
    """z' = (A_0 z + b_0) + sum_i u_i (A_i z + b_i),  z(0) = z0,  y = C z."""

    A: tuple
    b: tuple
    C: tuple
    z0: tuple

    def __post_init__(self):
        object.__setattr__(self, "A", tuple(_frac_mat(a) for a in self.A))
        object.__setattr__(self, "b", tuple(_frac_vec(v) for v in self.b))
        object.__setattr__(self, "C", _frac_vec(self.C))
        object.__setattr__(self, "z0", _frac_vec(self.z0))
        n = len(self.z0)
        if len(self.C) != n:
            raise ValueError(f"C has length {len(self.C)}, expected {n}")
        if not self.A or len(self.A) != len(self.b):
            raise ValueError("need one matrix A_i and one vector b_i per letter")
        for i, (a, v) in enumerate(zip(self.A, self.b)):
            if len(a) != n or any(len(row) != n for row in a):
                raise ValueError(f"A_{i} must be {n}x{n}")
            if len(v) != n:
                raise ValueError(f"b_{i} must have length {n}")

    @property
    def n(self) -> int:
        return len(self.z0)

    @property
    def m(self) -> int:
        return len(self.A) - 1

    def augmented(self):
        """(A~_i, C~, z~0) with A~_i = [[A_i, b_i], [0, 0]], C~ = (C, 0), z~0 = (z0; 1)."""
        n = self.n
        mats = []
        for a, v in zip(self.A, self.b):
            rows = [list(a[r]) + [v[r]] for r in range(n)]
            rows.append([Fraction(0)] * (n + 1))
            mats.append(rows)
        return mats, list(self.C) + [Fraction(0)], list(self.z0) + [Fraction(1)]


def realization_to_series(R: BilinearRealization, L: int) -> Series:
    """(c, x_{j1} ... x_{jk}) = C~ A~_{j1} ... A~_{jk} z~0, exact."""
    mats, row, z = R.augmented()
    dim = len(z)
    table = {}
    stack = [((), row)]
    while stack:
        w, r = stack.pop()
        val = sum(r[k] * z[k] for k in range(dim))
        if val:
            table[w] = val
        if len(w) == L or not any(r):
            continue
        for i, a in enumerate(mats):
            nxt = [sum(r[k] * a[k][j] for k in range(dim)) for j in range(dim)]
            stack.append((w + (i,), nxt))
    return Series._raw(Alphabet(R.m), L, table)


# --------------------------------------------------------------------------
# local convergence bound


@dataclass(frozen=True)
class GrowthWitness:
    """Constants of the bound |(c, eta)| <= K M^|eta| |eta|!, checked up to length L."""

    K: Fraction
    M: Fraction
    L: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "K", as_coefficient(self.K))
        object.__setattr__(self, "M", as_coefficient(self.M))
        if self.K <= 0 or self.M <= 0:
            raise ValueError("K and M must be positive")


def check_growth_bound(c: Series, w: GrowthWitness) -> tuple:
    """(True, None) if every coefficient obeys the bound, else (False, first violating word)."""
    L = c.horizon if w.L is None else min(w.L, c.horizon)
    factorial = 1
    bounds = [w.K]
    for k in range(1, L + 1):
        factorial *= k
        bounds.append(w.K * w.M**k * factorial)
    for eta, q in c.items():
        if len(eta) > L:
            break
        if abs(q) > bounds[len(eta)]:
            return False, eta
    return True, None
