import math
from fractions import Fraction

import pytest
from hypothesis import given, settings

from series_entropy import series as S
from series_entropy.errors import AlphabetMismatchError, UnsupportedOperationError
from series_entropy.interconnect import (
    DELTA,
    BilinearRealization,
    GrowthWitness,
    check_growth_bound,
    compose,
    compose_with_unit,
    devlin_feedback,
    devlin_polynomial,
    devlin_polynomials,
    feedback,
    realization_to_series,
)
from series_entropy.words import Alphabet, Grading, enumerate_words, grading_dimension, word_degree

from conftest import polynomials

P = lambda text, L=None: S.parse_literal(text, 1, L)  # noqa: E731


def closed_form(word):
    # runs x0^k0 x1^k1 x0^k2 ... ; product of (k0 + k2 + ... + k_{2j})^{k_{2j+1}}
    runs, letter = [0], 0
    for a in word:
        if a != letter:
            runs.append(0)
            letter = a
        runs[-1] += 1
    runs += [0] * (len(runs) % 2)
    value, base = 1, 0
    for j in range(0, len(runs), 2):
        base += runs[j]
        value *= base ** runs[j + 1]  # python: 0 ** 0 == 1
    return value


# ---------------------------------------------------------------- composition


def test_x1_composed_with_anything_is_x0_times_it():
    d = P("3 e + x1 + 1/2 x0 x1", 5)
    assert compose(P("x1", 5), d) == S.augment_left((0,), d).truncate(5)


@pytest.mark.parametrize("word, value", [((0, 0, 1), 2), ((0, 1, 0, 1), 2), ((), 1), ((1,), 0), ((0, 0, 0), 1)])
def test_x1star_self_composition_examples(word, value):
    c = S.family("letter_star", 6, letter=1)
    assert compose(c, c).coefficient(word) == value


def test_x1star_self_composition_exhaustive():
    c = S.family("letter_star", 7, letter=1)
    cc = compose(c, c)
    for w in enumerate_words(Alphabet(1), 7):
        assert cc.coefficient(w) == closed_form(w)


def test_compose_horizon_and_alphabet():
    assert compose(S.family("char_all", 4), S.family("char_all", 6)).horizon == 4
    with pytest.raises(AlphabetMismatchError):
        compose(S.family("char_all", 3, m=2), S.family("char_all", 3, m=1))


def test_compose_with_multiple_feeds():
    c = S.parse_literal("x1 + x2", 2, 3)
    d1 = S.parse_literal("x1", 2, 3)
    d2 = S.parse_literal("x2", 2, 3)
    assert compose(c, [d1, d2]) == S.parse_literal("x0 x1 + x0 x2", 2, 3)


@settings(max_examples=40, deadline=None)
@given(polynomials(max_terms=4), polynomials(max_terms=4), polynomials(max_terms=3))
def test_compose_is_left_linear(c1, c2, d):
    assert compose(S.add(c1, c2), d) == S.add(compose(c1, d), compose(c2, d))
    assert compose(S.scale(3, c1), d) == S.scale(3, compose(c1, d))


@settings(max_examples=40, deadline=None)
@given(polynomials(max_terms=4), polynomials(max_terms=3))
def test_psi_words_start_with_x0(c, d):
    c = S.Series(1, 6, {w: q for w, q in c.table.items() if w})
    assert all(w[0] == 0 for w in compose(c, d).support())


def test_unit_laws():
    c = P("2 e + x0 x1 + 1/3 x1", 4)
    assert compose_with_unit(c, DELTA) == c
    assert compose_with_unit(DELTA, c) == c
    assert compose_with_unit(DELTA, DELTA) is DELTA


def test_general_feedback_unsupported():
    with pytest.raises(UnsupportedOperationError):
        feedback(P("x1"), P("x1"))


# ---------------------------------------------------------------- Devlin


def test_devlin_examples():
    assert devlin_polynomial(4) == P("6 x1 x1 x1 + 3 x0 x1 + 2 x1 x0")
    assert devlin_polynomial(6) == P(
        "120 x1 x1 x1 x1 x1 + 60 x0 x1 x1 x1 + 40 x1 x0 x1 x1 + 30 x1 x1 x0 x1"
        " + 24 x1 x1 x1 x0 + 15 x0 x0 x1 + 12 x0 x1 x0 + 8 x1 x0 x0"
    )
    assert devlin_polynomial(1) == S.one(1, 0)


def test_devlin_support_law():
    alt = Grading.alt(1)
    for n, b in enumerate(devlin_polynomials(16), 1):
        expected = {w for w in enumerate_words(Alphabet(1), n) if word_degree(w, alt) == n}
        assert set(b) == expected
        assert len(b) == grading_dimension(alt, n)
        assert all(q > 0 for q in b.values())


def test_devlin_b5_support():
    b5 = devlin_polynomial(5)
    assert len(b5.support()) == 5
    assert all(2 * w.count(0) + w.count(1) + 1 == 5 for w in b5.support())


def test_devlin_sum_covers_all_words():
    L = 7
    total = devlin_feedback(None, L)
    assert total.support() == set(enumerate_words(Alphabet(1), L))


def test_devlin_sum_partial_n_max():
    assert devlin_feedback(3, 4) == P("e + x1 + 2 x1 x1 + x0", 4)


# ---------------------------------------------------------------- realizations


def test_amplifier_realizes_all_ones():
    R = BilinearRealization(A=[[[1]], [[1]]], b=[[0], [0]], C=[1], z0=[1])
    assert realization_to_series(R, 8) == S.family("char_all", 8)


def test_integrator_realizes_linear_siso():
    R = BilinearRealization(A=[[[1]], [[0]]], b=[[0], [1]], C=[1], z0=[0])
    assert realization_to_series(R, 8) == S.family("linear_siso", 8, r=1)


def test_zero_output_map():
    R = BilinearRealization(A=[[[1, 2], [0, 1]], [[0, 1], [1, 0]]], b=[[0, 0], [1, 0]], C=[0, 0], z0=[1, 1])
    assert realization_to_series(R, 6).is_zero()


def test_two_state_chain_matches_hand_expansion():
    # z1' = u, z2' = z1, y = z2  ->  y = int int u  ->  x0 x1
    R = BilinearRealization(A=[[[0, 0], [1, 0]], [[0, 0], [0, 0]]], b=[[0, 0], [1, 0]], C=[0, 1], z0=[0, 0])
    assert realization_to_series(R, 6) == P("x0 x1", 6)


def test_realization_dimension_errors():
    with pytest.raises(ValueError):
        BilinearRealization(A=[[[1]], [[1]]], b=[[0], [0]], C=[1, 0], z0=[1])
    with pytest.raises(ValueError):
        BilinearRealization(A=[[[1]], [[1, 0]]], b=[[0], [0]], C=[1], z0=[1])


# ---------------------------------------------------------------- growth bound


def test_growth_bound_examples():
    assert check_growth_bound(S.family("factorial_x1", 10), GrowthWitness(1, 1)) == (True, None)
    assert check_growth_bound(S.family("char_all", 6), GrowthWitness(1, 1)) == (True, None)
    squares = S.Series(1, 10, {(1,) * k: math.factorial(k) ** 2 for k in range(11)})
    first = next(k for k in range(11) if math.factorial(k) > 2**k)
    assert first == 4
    assert check_growth_bound(squares, GrowthWitness(1, 2)) == (False, (1,) * first)


def test_growth_witness_validation():
    with pytest.raises(ValueError):
        GrowthWitness(0, 1)
    assert GrowthWitness(Fraction(1, 2), 3).M == 3
