"""Numerical Fliess operators on a uniform time grid.

Iterated integrals E_eta[u] are built by cumulative trapezoidal integration
(second order in the step size), sharing work along word suffixes.  Inputs are
either piecewise constant (:class:`InputSignal`, breakpoints on grid points)
or sampled at the grid nodes (:class:`SampledInput`).  Channel 0 is always 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .interconnect import BilinearRealization, GrowthWitness, compose
from .series import Series, shuffle
from .words import Alphabet, enumerate_words

_ALIGN_TOL = 1e-9


@dataclass(frozen=True)
class SimGrid:
    T: float
    steps: int

    def __post_init__(self):
        if self.steps < 1:
            raise ValueError("steps must be >= 1")
        if not self.T > 0:
            raise ValueError("T must be positive")

    @property
    def h(self) -> float:
        return self.T / self.steps

    @property
    def times(self) -> np.ndarray:
        return np.linspace(0.0, self.T, self.steps + 1)


@dataclass(frozen=True)
class InputSignal:
    """Piecewise-constant input; ``segments`` holds ``(t_start, t_end, (v_1, ..., v_m))``."""

    segments: tuple

    def __post_init__(self):
        segs = tuple((float(a), float(b), tuple(float(v) for v in vals)) for a, b, vals in self.segments)
        object.__setattr__(self, "segments", segs)
        if not segs:
            raise ValueError("input needs at least one segment")
        m = len(segs[0][2])
        t = 0.0
        for a, b, vals in segs:
            if len(vals) != m:
                raise ValueError("all segments need the same number of channels")
            if abs(a - t) > _ALIGN_TOL or not b > a:
                raise ValueError(f"segments must tile [0, T] in order; bad segment [{a}, {b}]")
            if not all(math.isfinite(v) for v in vals):
                raise ValueError("input values must be finite")
            t = b

    @classmethod
    def constant(cls, values, T: float) -> "InputSignal":
        if np.isscalar(values):
            values = (values,)
        return cls(((0.0, T, tuple(values)),))

    @property
    def m(self) -> int:
        return len(self.segments[0][2])

    @property
    def T(self) -> float:
        return self.segments[-1][1]

    def sup_norm(self) -> float:
        return max((abs(v) for _, _, vals in self.segments for v in vals), default=0.0)

    def interval_samples(self, grid: SimGrid) -> tuple:
        """(left, right) integrand samples, each shaped (m + 1, steps)."""
        if abs(self.T - grid.T) > _ALIGN_TOL * max(1.0, grid.T):
            raise ValueError(f"input covers [0, {self.T}] but the grid ends at {grid.T}")
        vals = np.empty((self.m + 1, grid.steps))
        vals[0] = 1.0
        for a, b, v in self.segments:
            ja, jb = (round(t / grid.h) for t in (a, b))
            if abs(ja * grid.h - a) > _ALIGN_TOL or abs(jb * grid.h - b) > _ALIGN_TOL:
                raise ValueError(f"breakpoints of segment [{a}, {b}] are not grid points")
            vals[1:, ja:jb] = np.asarray(v)[:, None]
        return vals, vals


@dataclass(frozen=True)
class SampledInput:
    """Continuous input known at the grid nodes, shape (m, steps + 1)."""

    values: np.ndarray = field(repr=False)

    @property
    def m(self) -> int:
        return np.atleast_2d(self.values).shape[0]

    def sup_norm(self) -> float:
        return float(np.max(np.abs(self.values))) if np.size(self.values) else 0.0

    def interval_samples(self, grid: SimGrid) -> tuple:
        u = np.atleast_2d(np.asarray(self.values, dtype=float))
        if u.shape[1] != grid.steps + 1:
            raise ValueError(f"sampled input has {u.shape[1]} nodes, grid has {grid.steps + 1}")
        if not np.all(np.isfinite(u)):
            raise ValueError("input values must be finite")
        full = np.vstack([np.ones((1, grid.steps + 1)), u])
        return full[:, :-1], full[:, 1:]


@dataclass
class Trace:
    t: np.ndarray
    y: np.ndarray
    tail_bound: float | None = None

    def csv(self) -> str:
        lines = ["t,y"]
        lines += [f"{ti!r},{yi!r}" for ti, yi in zip(self.t.tolist(), self.y.tolist())]
        return "\n".join(lines) + "\n"


def _integrate(E: np.ndarray, left: np.ndarray, right: np.ndarray, h: float) -> np.ndarray:
    out = np.empty_like(E)
    out[0] = 0.0
    np.cumsum(0.5 * h * (left * E[:-1] + right * E[1:]), out=out[1:])
    return out


def _suffix_closure(words) -> set:
    need = {()}
    for w in words:
        for k in range(len(w)):
            need.add(tuple(w[k:]))
    return need


def _walk(need: set, m: int, u, grid: SimGrid):
    """Yield (word, E_word) for every word in ``need`` (suffix-closed), depth first."""
    left, right = u.interval_samples(grid)
    if left.shape[0] != m + 1:
        raise ValueError(f"input has {left.shape[0] - 1} channels, alphabet needs {m}")
    stack = [((), np.ones(grid.steps + 1))]
    while stack:
        w, E = stack.pop()
        yield w, E
        for i in range(m + 1):
            child = (i,) + w
            if child in need:
                stack.append((child, _integrate(E, left[i], right[i], grid.h)))


def iterated_integrals(words, u, grid: SimGrid, m: int | None = None) -> dict:
    """E_eta[u] on the grid for each requested word (or all words up to length ``words``)."""
    if isinstance(words, int):
        m = u.m if m is None else m
        words = list(enumerate_words(Alphabet(m), words))
    words = [tuple(w) for w in words]
    if m is None:
        m = u.m
    want = set(words)
    return {w: E for w, E in _walk(_suffix_closure(words), m, u, grid) if w in want}


def truncation_tail(witness: GrowthWitness, m: int, R: float, T: float, L: int) -> float | None:
    """Geometric tail K r^{L+1} / (1 - r), r = M (m+1)(R+1) T; None unless r < 1.  Heuristic."""
    r = float(witness.M) * (m + 1) * (R + 1) * T
    if r >= 1:
        return None
    return float(witness.K) * r ** (L + 1) / (1 - r)


def evaluate_operator(c: Series, u, grid: SimGrid, witness: GrowthWitness | None = None) -> Trace:
    """y(t) = sum_eta (c, eta) E_eta[u](t) over the stored terms of c."""
    y = np.zeros(grid.steps + 1)
    coeffs = {w: float(q) for w, q in c.table.items()}
    if coeffs:
        for w, E in _walk(_suffix_closure(coeffs), c.m, u, grid):
            q = coeffs.get(w)
            if q is not None:
                y += q * E
    tail = None
    if witness is not None:
        tail = truncation_tail(witness, c.m, u.sup_norm(), grid.T, c.horizon)
    return Trace(grid.times, y, tail)


def simulate_realization(R: BilinearRealization, u: InputSignal, grid: SimGrid) -> Trace:
    """Classical RK4 for z' = (A_0 z + b_0) + sum_i u_i (A_i z + b_i), y = C z."""
    A = [np.array(a, dtype=float) for a in R.A]
    b = [np.array(v, dtype=float) for v in R.b]
    C = np.array(R.C, dtype=float)
    z = np.array(R.z0, dtype=float)
    vals, _ = u.interval_samples(grid)
    if vals.shape[0] != R.m + 1:
        raise ValueError(f"input has {vals.shape[0] - 1} channels, realization needs {R.m}")
    h = grid.h
    y = np.empty(grid.steps + 1)
    y[0] = C @ z
    for j in range(grid.steps):
        # u is constant on the step, so the field is autonomous there
        Aj = sum(vals[i, j] * A[i] for i in range(R.m + 1))
        bj = sum(vals[i, j] * b[i] for i in range(R.m + 1))

        def f(x):
            return Aj @ x + bj

        k1 = f(z)
        k2 = f(z + 0.5 * h * k1)
        k3 = f(z + 0.5 * h * k2)
        k4 = f(z + h * k3)
        z = z + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        y[j + 1] = C @ z
    return Trace(grid.times, y)


def compare_parallel_product(c: Series, d: Series, u, grid: SimGrid) -> float:
    """max_t |F_c[u] F_d[u] - F_{c shuffle d}[u]|."""
    yc = evaluate_operator(c, u, grid).y
    yd = evaluate_operator(d, u, grid).y
    ycd = evaluate_operator(shuffle(c, d), u, grid).y
    return float(np.max(np.abs(yc * yd - ycd)))


def compare_cascade(c: Series, d: Series, u, grid: SimGrid) -> float:
    """max_t |F_c[F_d[u]] - F_{c o d}[u]| for single-input single-output series."""
    if c.m != 1 or d.m != 1:
        raise ValueError("cascade comparison is single-input only (m = 1)")
    inner = evaluate_operator(d, u, grid).y
    lhs = evaluate_operator(c, SampledInput(inner[None, :]), grid).y
    rhs = evaluate_operator(compose(c, d), u, grid).y
    return float(np.max(np.abs(lhs - rhs)))
