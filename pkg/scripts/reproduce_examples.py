"""Print the worked examples: entropy tables, Devlin polynomials,
x1* o x1* coefficients and the numerical interconnection checks.

    python scripts/reproduce_examples.py
"""

from series_entropy import series as S
from series_entropy.chen_fliess import InputSignal, SimGrid, compare_cascade, compare_parallel_product
from series_entropy.entropy import entropy
from series_entropy.interconnect import compose, devlin_polynomials
from series_entropy.words import Grading, format_word, growth_params

WL = Grading.wordlen(1)


def entropy_table():
    rows = [
        ("even_palindromes", S.family("even_palindromes", 24), 8),
        ("char_all", S.family("char_all", 16), 8),
        ("word_power N=2", S.family("word_power", 16, N=2), 8),
        ("word_power N=3", S.family("word_power", 24, N=3), 8),
        ("word_power N=4", S.family("word_power", 32, N=4), 8),
        ("linear_full", S.family("linear_full", 40), 1),
        ("input_limited N=1", S.family("input_limited", 24, N=1), 1),
        ("input_limited N=2", S.family("input_limited", 24, N=2), 1),
        ("input_limited N=3", S.family("input_limited", 24, N=3), 1),
        ("letter_star x1", S.family("letter_star", 24, letter=1), 8),
    ]
    print(f"{'series':<20} {'L':>3} {'window':>6}  estimate")
    for name, c, window in rows:
        est = entropy(c, WL, window=window)
        print(f"{name:<20} {c.horizon:>3} {window:>6}  {est.estimate:.6f}")


def growth_table():
    print("grading   m   gamma          K")
    for m in (1, 2, 3):
        for g in (Grading.wordlen(m), Grading.alt(m)):
            p = growth_params(g)
            print(f"{g.name:<8} {m:>2}   {p.gamma:.10f}  {p.K:.6f}")


def devlin():
    for n, b in enumerate(devlin_polynomials(6), 1):
        print(f"b{n} = {S.to_literal(S.Series(1, max(n - 1, 0), b))}")


def composition():
    c = S.family("letter_star", 8, letter=1)
    cc = compose(c, c)
    for w in [(0, 0, 1), (0, 1, 0, 1), (0, 0, 1, 1), (0, 1, 0, 0, 1, 1), (0, 0, 0, 1, 1, 1)]:
        print(f"(x1* o x1*, {format_word(w)}) = {cc.coefficient(w)}")
    print(f"word-length entropy estimate of x1* o x1* at L=8, window 4: {entropy(cc, WL, window=4).estimate:.6f}")


def numerics():
    x0s = S.family("letter_star", 12, letter=0)
    x1 = S.parse_literal("x1", 1, 2)
    x1s = S.family("letter_star", 8, letter=1)
    print("parallel x0* x0*   ", f"{compare_parallel_product(x0s, x0s, InputSignal.constant(0.0, 0.5), SimGrid(0.5, 512)):.3e}")
    print("parallel x1 x1     ", f"{compare_parallel_product(x1, x1, InputSignal.constant(1.0, 0.5), SimGrid(0.5, 512)):.3e}")
    print("cascade x1* o x1*  ", f"{compare_cascade(x1s, x1s, InputSignal.constant(0.5, 0.2), SimGrid(0.2, 512)):.3e}")


if __name__ == "__main__":
    for title, fn in [
        ("entropy estimates (word-length grading)", entropy_table),
        ("growth constants", growth_table),
        ("Devlin polynomials", devlin),
        ("composition x1* o x1*", composition),
        ("interconnection numerics (max deviation)", numerics),
    ]:
        print(f"\n== {title}")
        fn()
