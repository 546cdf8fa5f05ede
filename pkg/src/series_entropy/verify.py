"""Built-in identity suite behind ``series-entropy verify``.

Each check recomputes one identity or closed form and compares
exactly (or at a fixed float tolerance for the numerical ones).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import series as S
from .chen_fliess import InputSignal, SimGrid, compare_cascade, compare_parallel_product, evaluate_operator, simulate_realization
from .entropy import entropy
from .interconnect import (
    BilinearRealization,
    GrowthWitness,
    check_growth_bound,
    compose,
    devlin_polynomials,
    realization_to_series,
)
from .words import Alphabet, Grading, enumerate_words, grading_dimension, word_degree

DEVLIN_TABLE = [
    "1 e",
    "1 x1",
    "2 x1 x1 + 1 x0",
    "6 x1 x1 x1 + 3 x0 x1 + 2 x1 x0",
    "24 x1 x1 x1 x1 + 12 x0 x1 x1 + 8 x1 x0 x1 + 6 x1 x1 x0 + 3 x0 x0",
    "120 x1 x1 x1 x1 x1 + 60 x0 x1 x1 x1 + 40 x1 x0 x1 x1 + 30 x1 x1 x0 x1"
    " + 24 x1 x1 x1 x0 + 15 x0 x0 x1 + 12 x0 x1 x0 + 8 x1 x0 x0",
]

# plants used by the realization checks: z' = z + z u and z' = z + u
AMPLIFIER = BilinearRealization(A=[[[1]], [[1]]], b=[[0], [0]], C=[1], z0=[1])
INTEGRATOR = BilinearRealization(A=[[[1]], [[0]]], b=[[0], [1]], C=[1], z0=[0])


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        return f"{'PASS' if self.ok else 'FAIL'} {self.name}" + (f": {self.detail}" if self.detail else "")


def run_length_form(word) -> list:
    """Exponents (k0, k1, ..., kl), l odd, with word = x0^k0 x1^k1 ... x0^k(l-1) x1^kl."""
    ks = []
    letter, run = 0, 0
    for a in word:
        if a == letter:
            run += 1
        else:
            ks.append(run)
            letter, run = a, 1
    ks.append(run)
    if len(ks) % 2:
        ks.append(0)
    return ks


def x1star_self_composition(word) -> int:
    """(x1* o x1*, word) = k0^k1 (k0+k2)^k3 ..., with 0^0 = 1."""
    ks = run_length_form(word)
    value, base = 1, 0
    for j in range(0, len(ks), 2):
        base += ks[j]
        value *= base ** ks[j + 1]
    return value


def check_devlin_table() -> Check:
    polys = devlin_polynomials(6)
    bad = [n for n, (b, text) in enumerate(zip(polys, DEVLIN_TABLE), 1)
           if S.Series(1, 6, b) != S.parse_literal(text, 1, 6)]
    return Check("devlin polynomials b1..b6", not bad, f"mismatch at {bad}" if bad else "")


def check_devlin_support(n_max: int = 20) -> Check:
    alt = Grading.alt(1)
    polys = devlin_polynomials(n_max)
    for n, b in enumerate(polys, 1):
        expected = {w for w in enumerate_words(Alphabet(1), n - 1) if word_degree(w, alt) == n}
        if set(b) != expected or len(b) != grading_dimension(alt, n):
            return Check("devlin support law", False, f"n={n}")
    fib = [len(b) for b in polys[:6]]
    return Check("devlin support law", fib == [1, 1, 2, 3, 5, 8], f"counts {fib}")


def check_composition(L: int = 8) -> list:
    c = S.family("letter_star", L, letter=1)
    cc = compose(c, c)
    words = list(enumerate_words(Alphabet(1), L))
    bad = [w for w in words if cc.coefficient(w) != x1star_self_composition(w)]
    checks = [Check(f"x1* o x1* closed form ({len(words)} words)", not bad, f"first mismatch {bad[:1]}" if bad else "")]
    wl = Grading.wordlen(1)
    h_cc = entropy(cc, wl, window=4).estimate
    h_c = entropy(c, wl, window=4).estimate
    checks.append(Check("entropy of x1* o x1* at L=8 exceeds 0.9", h_cc > 0.9, f"estimate {h_cc:.6f}"))
    checks.append(Check("entropy of x1* is 0", h_c == 0.0, f"estimate {h_c}"))
    return checks


def check_shuffle_stars() -> list:
    x0 = S.family("letter_star", 12, letter=0)
    x1 = S.family("letter_star", 12, letter=1)
    out = [Check("x0* sh x1* = char(X*) through L=12", S.shuffle(x0, x1) == S.family("char_all", 12))]
    for i in (0, 1):
        xi = S.family("letter_star", 20, letter=i)
        two = S.Series(1, 20, {(i,) * k: 2**k for k in range(21)})
        out.append(Check(f"x{i}* sh x{i}* = (2x{i})* through L=20", S.shuffle(xi, xi) == two))
    return out


def check_char_powers(n_max: int = 10) -> Check:
    letters = S.parse_literal("x0 + x1", 1, n_max)
    power = S.one(1, n_max)
    for n in range(1, n_max + 1):
        power = S.shuffle(letters, power)
        expected = S.Series(1, n_max, {w: 1 for w in enumerate_words(Alphabet(1), n) if len(w) == n})
        if S.scale(Fraction(1, math.factorial(n)), power) != expected:
            return Check("char(X^n) = (x0+x1)^sh n / n!", False, f"n={n}")
    return Check("char(X^n) = (x0+x1)^sh n / n!", True, f"n <= {n_max}")


def check_entropy_closed_forms() -> list:
    wl = Grading.wordlen(1)
    tol = 1e-12
    out = []
    pal = entropy(S.family("even_palindromes", 24), wl)
    ok = all(abs(a - 0.5) <= tol for _, a in pal.sequence) and abs(pal.estimate - 0.5) <= tol
    out.append(Check("even palindromes entropy 1/2", ok, f"estimate {pal.estimate!r}"))
    full = entropy(S.family("char_all", 16), wl).estimate
    out.append(Check("char(X*) entropy 1", abs(full - 1) <= tol, f"estimate {full!r}"))
    for N in (2, 3, 4):
        est = entropy(S.family("word_power", 8 * N, N=N), wl).estimate
        out.append(Check(f"word power N={N} entropy 1/{N}", abs(est - 1 / N) <= tol, f"estimate {est!r}"))
    # the tail value is the bound at L=40, so only the last a_k may count
    lin = entropy(S.family("linear_full", 40), wl, window=1).estimate
    out.append(Check("linear_full estimate <= log2(40)/40", lin <= math.log2(40) / 40 + tol, f"estimate {lin!r}"))
    for N in (1, 2, 3):
        ests = [entropy(S.family("input_limited", L, N=N), wl, window=1).estimate for L in (16, 20, 24)]
        ok = ests[-1] <= 0.35 and ests[0] > ests[1] > ests[2]
        out.append(Check(f"input_limited N={N} estimate <= 0.35 at L=24, decreasing", ok,
                         "estimates " + ", ".join(f"{e:.4f}" for e in ests)))
    return out


def check_realizations(L: int = 12) -> list:
    ones = realization_to_series(AMPLIFIER, L)
    lin = realization_to_series(INTEGRATOR, L)
    return [
        Check("z'=z+zu realizes char(X*)", ones == S.family("char_all", L)),
        Check("z'=z+u realizes sum x0^(n-1) x1", lin == S.family("linear_siso", L, r=1)),
    ]


def check_operator_numerics() -> list:
    grid = SimGrid(0.5, 512)
    u = InputSignal.constant(0.5, 0.5)
    y = evaluate_operator(realization_to_series(INTEGRATOR, 12), u, grid).y
    dev1 = float(np.max(np.abs(y - simulate_realization(INTEGRATOR, u, grid).y)))
    grid = SimGrid(0.4, 512)
    y = evaluate_operator(S.family("char_all", 14), InputSignal.constant(0.4, 0.4), grid).y
    dev2 = float(np.max(np.abs(y - np.exp(1.4 * grid.times))))
    return [
        Check("F_c of z'=z+u matches the ODE", dev1 < 1e-6, f"max dev {dev1:.3e}"),
        Check("F_char(X*) matches exp(1.4 t)", dev2 < 1e-5, f"max dev {dev2:.3e}"),
    ]


def check_products_numerics() -> list:
    x0s = S.family("letter_star", 12, letter=0)
    x1 = S.parse_literal("x1", 1, 2)
    dev_a = compare_parallel_product(x0s, x0s, InputSignal.constant(0.0, 0.5), SimGrid(0.5, 512))
    dev_b = compare_parallel_product(x1, x1, InputSignal.constant(1.0, 0.5), SimGrid(0.5, 512))
    x1s = S.family("letter_star", 8, letter=1)
    dev_c = compare_cascade(x1s, x1s, InputSignal.constant(0.5, 0.2), SimGrid(0.2, 512))
    return [
        Check("F_x0* F_x0* = F_(x0* sh x0*)", dev_a < 1e-6, f"max dev {dev_a:.3e}"),
        Check("F_x1 F_x1 = F_(2 x1 x1)", dev_b < 1e-6, f"max dev {dev_b:.3e}"),
        Check("F_x1* o F_x1* = F_(x1* o x1*)", dev_c < 1e-4, f"max dev {dev_c:.3e}"),
    ]


def check_growth_bounds() -> list:
    ok1, _ = check_growth_bound(S.family("factorial_x1", 10), GrowthWitness(1, 1))
    sq = S.Series(1, 10, {(1,) * k: math.factorial(k) ** 2 for k in range(11)})
    ok2, witness = check_growth_bound(sq, GrowthWitness(1, 2))
    return [
        Check("factorial_x1 obeys K=M=1", ok1),
        Check("(k!)^2 series fails K=1, M=2 at x1^4", not ok2 and witness == (1, 1, 1, 1), f"witness {witness}"),
    ]


def run_all() -> list:
    checks = [check_devlin_table(), check_devlin_support()]
    checks += check_composition()
    checks += check_shuffle_stars()
    checks.append(check_char_powers())
    checks += check_entropy_closed_forms()
    checks += check_realizations()
    checks += check_operator_numerics()
    checks += check_products_numerics()
    checks += check_growth_bounds()
    return checks
