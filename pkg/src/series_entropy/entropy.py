"""Graded support counts, the finite-horizon entropy estimate, and the entropy distance.

The estimate is a surrogate for a limsup: the per-degree sequence
a_k = log_gamma |supp_{n_k}(c)| / n_k is computed over degrees that the
horizon fully certifies, and the estimate is the max over the trailing
``window`` entries.  Degrees the horizon cannot certify are reported but never
used.
"""

from __future__ import annotations

import csv
import io
import math
from collections import Counter
from dataclasses import dataclass

from .errors import InsufficientHorizonError
from .series import Series
from .words import Grading, grading_dimensions, growth_params, word_degree

DEFAULT_WINDOW = 8


@dataclass(frozen=True)
class SupportProfile:
    grading: Grading
    counts: dict
    complete_up_to: int
    horizon: int

    @property
    def support_sequence(self) -> list:
        """Degrees with nonzero count inside the certified range."""
        return sorted(n for n, k in self.counts.items() if k and n <= self.complete_up_to)

    @property
    def max_degree(self) -> int:
        return max([self.complete_up_to] + [n for n, k in self.counts.items() if k])

    def count(self, n: int) -> int:
        return self.counts.get(n, 0)

    def is_complete(self, n: int) -> bool:
        return n <= self.complete_up_to


@dataclass(frozen=True)
class EntropyEstimate:
    sequence: list  # [(n_k, a_k), ...] over the certified support sequence, n_k >= 1
    estimate: float
    window: int
    gamma: float
    polynomial: bool = False  # True when the polynomial rule forced the estimate to 0


def support_profile(c: Series, g: Grading) -> SupportProfile:
    if g.m != c.m:
        raise ValueError(f"grading is for m={g.m}, series has m={c.m}")
    counts = Counter(word_degree(w, g) for w in c.table)
    complete = g.complete_degree(c.horizon)
    full = {n: counts.get(n, 0) for n in range(complete + 1)}
    full.update(counts)
    return SupportProfile(g, dict(sorted(full.items())), complete, c.horizon)


def entropy_estimate(p: SupportProfile, window: int = DEFAULT_WINDOW, polynomial_rule: bool = True) -> EntropyEstimate:
    """Windowed-max estimate of the entropy from a support profile.

    With ``polynomial_rule`` a series with no support in the upper half of the
    certified range is treated as a polynomial and gets estimate 0.
    """
    if window < 1:
        raise ValueError("window must be >= 1")
    gamma = growth_params(p.grading).gamma
    if gamma <= 1:
        raise ValueError(f"grading has growth rate {gamma}; entropy needs gamma > 1")
    if p.complete_up_to < 1:
        raise InsufficientHorizonError(
            f"horizon {p.horizon} certifies no positive degree under grading {p.grading.name}"
        )
    log_gamma = math.log(gamma)
    seq = [(n, math.log(p.counts[n]) / (n * log_gamma)) for n in p.support_sequence if n >= 1]
    if polynomial_rule and not any(n > p.complete_up_to / 2 for n, _ in seq):
        return EntropyEstimate(seq, 0.0, window, gamma, polynomial=True)
    if not seq:
        return EntropyEstimate(seq, 0.0, window, gamma)
    est = max(a for _, a in seq[-window:])
    return EntropyEstimate(seq, min(max(est, 0.0), 1.0), window, gamma)


def entropy(c: Series, g: Grading, window: int = DEFAULT_WINDOW, polynomial_rule: bool = True) -> EntropyEstimate:
    return entropy_estimate(support_profile(c, g), window, polynomial_rule)


def entropy_distance(c: Series, d: Series, g: Grading, window: int = DEFAULT_WINDOW) -> float:
    """Estimate of h(c - d)."""
    return entropy(c - d, g, window).estimate


def profile_rows(p: SupportProfile) -> list:
    """Rows ``(degree, count, dimension, a_k, complete)`` for degrees 0..max_degree."""
    gamma = growth_params(p.grading).gamma
    dims = grading_dimensions(p.grading, p.max_degree)
    rows = []
    for n in range(p.max_degree + 1):
        k = p.count(n)
        a = math.log(k) / (n * math.log(gamma)) if k and n >= 1 and gamma > 1 else None
        rows.append((n, k, dims[n], a, p.is_complete(n)))
    return rows


def profile_csv(p: SupportProfile, estimate: EntropyEstimate | None = None) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["degree", "count", "dimension", "a_k", "complete"])
    for n, k, dim, a, complete in profile_rows(p):
        w.writerow([n, k, dim, "" if a is None else repr(a), int(complete)])
    if estimate is not None:
        w.writerow(["summary", "", "", repr(estimate.estimate), ""])
    return buf.getvalue()
