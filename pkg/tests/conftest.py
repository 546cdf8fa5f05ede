import itertools
from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from series_entropy import Series

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


# ---------------------------------------------------------------- oracles


def brute_shuffle(a, b):
    """Shuffle by choosing which output positions carry the letters of ``a``."""
    n = len(a) + len(b)
    out = Counter()
    for pos in itertools.combinations(range(n), len(a)):
        ia, ib = iter(a), iter(b)
        chosen = set(pos)
        out[tuple(next(ia) if k in chosen else next(ib) for k in range(n))] += 1
    return dict(out)


def brute_words(m, max_len):
    return [w for k in range(max_len + 1) for w in itertools.product(range(m + 1), repeat=k)]


# ---------------------------------------------------------------- strategies

rationals = st.builds(
    Fraction,
    st.integers(-5, 5).filter(bool),
    st.integers(1, 4),
)


def words(m=1, max_len=4):
    return st.lists(st.integers(0, m), max_size=max_len).map(tuple)


@st.composite
def polynomials(draw, m=1, max_len=3, horizon=6, max_terms=6, positive=False):
    coeff = st.integers(1, 5).map(Fraction) if positive else rationals
    table = draw(st.dictionaries(words(m, max_len), coeff, max_size=max_terms))
    return Series(m, horizon, table)


@pytest.fixture
def x0star():
    from series_entropy import family

    return family("letter_star", 12, letter=0)
