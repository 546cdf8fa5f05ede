"""JSON series-expression documents.

A document is a node, or ``{"m": <int>, "expr": <node>}`` to fix the alphabet.
Leaves::

    {"family": "letter_star", "letter": 0}
    {"poly": "2 x1 x1 + 1 x0"}
    {"realization": "plant.txt"}            # or an inline {"A":..,"b":..,"C":..,"z0":..}
    {"unit": "delta"}                       # only directly under compose
    {"op": "devlin", "n_max": 6}            # n_max optional, default 2L + 1

Interior nodes are ``{"op": <kind>, "args": [...], ...}`` with kinds add,
hadamard, cauchy, shuffle (two or more args), scale (``factor``),
shuffle_power (``n``), left_shift / augment_left / augment_right (``word``),
compose (two args).
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from pathlib import Path

from . import series as S
from .chen_fliess import InputSignal
from .errors import ExpressionError, SeriesError
from .interconnect import DELTA, BilinearRealization, compose_with_unit, devlin_feedback, realization_to_series
from .words import Alphabet, parse_word

NARY = {"add": S.add, "hadamard": S.hadamard, "cauchy": S.cauchy, "shuffle": S.shuffle}
UNARY = {"scale", "shuffle_power", "left_shift", "augment_left", "augment_right"}
OPS = set(NARY) | UNARY | {"compose", "devlin"}


@dataclass
class Node:
    kind: str  # "family", "poly", "realization", "unit", "devlin" or an op name
    params: dict = field(default_factory=dict)
    args: list = field(default_factory=list)
    path: str = "$"


@dataclass
class SeriesExpr:
    root: Node
    m: int | None = None
    base_dir: Path | None = None


@dataclass
class RunConfig:
    horizon: int = 12
    grading: str = "wordlen"
    window: int = 8
    steps: int = 512
    T: float = 0.5
    output: str | None = None
    m: int = 1

    def __post_init__(self):
        if self.horizon < 0:
            raise ValueError("horizon must be >= 0")
        if self.window < 1:
            raise ValueError("window must be >= 1")
        if self.steps < 1:
            raise ValueError("steps must be >= 1")
        if not self.T > 0:
            raise ValueError("T must be positive")


def parse_expression(document, base_dir=None) -> SeriesExpr:
    """Validate a document (JSON text or already-decoded object) into a tree."""
    if isinstance(document, (str, bytes)):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise ExpressionError(f"invalid JSON: {exc}") from None
    m = None
    if isinstance(document, dict) and "expr" in document:
        m = document.get("m")
        if m is not None and (not isinstance(m, int) or m < 0):
            raise ExpressionError("'m' must be a nonnegative integer")
        document = document["expr"]
    root = _parse_node(document, "$", under_compose=False)
    return SeriesExpr(root, m, Path(base_dir) if base_dir else None)


def load_expression(path) -> SeriesExpr:
    path = Path(path)
    return parse_expression(path.read_text(), base_dir=path.parent)


def _parse_node(obj, path, under_compose) -> Node:
    if not isinstance(obj, dict):
        raise ExpressionError(f"expected an object, got {type(obj).__name__}", path)
    if "family" in obj:
        params = {k: v for k, v in obj.items() if k != "family"}
        if obj["family"] not in S.FAMILIES:
            raise ExpressionError(f"unknown family {obj['family']!r}", path)
        return Node("family", {"name": obj["family"], **params}, [], path)
    if "poly" in obj:
        if not isinstance(obj["poly"], str):
            raise ExpressionError("'poly' must be a string", path)
        try:
            S.parse_literal(obj["poly"], Alphabet(_max_letter(obj["poly"])))
        except (ValueError, SeriesError) as exc:
            raise ExpressionError(str(exc), path) from None
        return Node("poly", {"text": obj["poly"]}, [], path)
    if "realization" in obj:
        return Node("realization", {"source": obj["realization"]}, [], path)
    if "unit" in obj:
        if obj["unit"] != "delta":
            raise ExpressionError(f"unknown unit {obj['unit']!r}", path)
        if not under_compose:
            raise ExpressionError("delta may only appear as an argument of compose", path)
        return Node("unit", {}, [], path)
    if "op" not in obj:
        raise ExpressionError("node needs one of family/poly/realization/unit/op", path)

    kind = obj["op"]
    if kind not in OPS:
        raise ExpressionError(f"unknown node kind {kind!r}", path)
    raw_args = obj.get("args", [])
    if not isinstance(raw_args, list):
        raise ExpressionError("'args' must be a list", path)
    params = {k: v for k, v in obj.items() if k not in ("op", "args")}

    if kind == "devlin":
        _arity(kind, raw_args, 0, 0, path)
        n_max = params.get("n_max")
        if n_max is not None and (not isinstance(n_max, int) or n_max < 1):
            raise ExpressionError("'n_max' must be a positive integer", path)
    elif kind in NARY:
        _arity(kind, raw_args, 2, None, path)
    elif kind == "compose":
        _arity(kind, raw_args, 2, 2, path)
    else:
        _arity(kind, raw_args, 1, 1, path)
        _check_unary_params(kind, params, path)

    args = [
        _parse_node(a, f"{path}.args[{i}]", under_compose=(kind == "compose"))
        for i, a in enumerate(raw_args)
    ]
    return Node(kind, params, args, path)


def _arity(kind, args, lo, hi, path):
    n = len(args)
    if n < lo or (hi is not None and n > hi):
        want = f"exactly {lo}" if lo == hi else f"at least {lo}"
        raise ExpressionError(f"{kind} needs {want} argument(s), got {n}", path)


def _check_unary_params(kind, params, path):
    if kind == "scale":
        try:
            Fraction(str(params["factor"]))
        except (KeyError, ValueError, ZeroDivisionError):
            raise ExpressionError("scale needs a rational 'factor'", path) from None
    elif kind == "shuffle_power":
        n = params.get("n")
        if not isinstance(n, int) or n < 0:
            raise ExpressionError("shuffle_power needs a nonnegative integer 'n'", path)
    else:
        try:
            parse_word(str(params["word"]))
        except (KeyError, ValueError):
            raise ExpressionError(f"{kind} needs a 'word'", path) from None


def _max_letter(text):
    # alphabet just large enough to validate a literal before m is known
    return max([int(k) for k in re.findall(r"x(\d+)", text)] + [0])


# --------------------------------------------------------------------------
# evaluation


def evaluate_expression(e: SeriesExpr, cfg: RunConfig):
    """Evaluate bottom-up at horizon ``cfg.horizon``; may return DELTA for compose(delta, delta)."""
    m = cfg.m if e.m is None else e.m
    return _eval(e.root, Alphabet(m), cfg.horizon, e.base_dir)


def _eval(node: Node, alphabet, L, base_dir):
    try:
        return _eval_inner(node, alphabet, L, base_dir)
    except ExpressionError:
        raise
    except SeriesError as exc:
        if getattr(exc, "located", False):
            raise
        located = type(exc)(f"{node.path}: {exc}")
        located.located = True
        raise located from exc
    except ValueError as exc:
        raise ExpressionError(str(exc), node.path) from exc


def _eval_inner(node, alphabet, L, base_dir):
    k, p = node.kind, node.params
    if k == "unit":
        return DELTA
    if k == "family":
        params = {key: (parse_word(v) if key == "word" else v) for key, v in p.items() if key not in ("name", "m")}
        if p.get("m", alphabet.m) != alphabet.m:
            raise ExpressionError(f"family alphabet m={p['m']} differs from document m={alphabet.m}", node.path)
        return S.build_family(S.SeriesFamily(p["name"], params, alphabet.m), L)
    if k == "poly":
        return S.parse_literal(p["text"], alphabet, L)
    if k == "realization":
        R = _load_realization(p["source"], base_dir)
        if R.m != alphabet.m:
            raise ExpressionError(f"realization has m={R.m}, document has m={alphabet.m}", node.path)
        return realization_to_series(R, L)
    if k == "devlin":
        if alphabet.m != 1:
            raise ExpressionError("devlin is defined for m = 1", node.path)
        return devlin_feedback(p.get("n_max"), L)

    args = [_eval(a, alphabet, L, base_dir) for a in node.args]
    if k == "compose":
        return compose_with_unit(*args)
    if any(a is DELTA for a in args):
        raise ExpressionError("delta is not a series", node.path)
    if k in NARY:
        return reduce(NARY[k], args)
    (c,) = args
    if k == "scale":
        return S.scale(Fraction(str(p["factor"])), c)
    if k == "shuffle_power":
        return S.shuffle_power(c, p["n"])
    word = parse_word(str(p["word"]))
    if k == "left_shift":
        return S.left_shift(c, word)
    if k == "augment_left":
        return S.augment_left(word, c)
    return S.augment_right(c, word)


def _load_realization(source, base_dir) -> BilinearRealization:
    if isinstance(source, dict):
        return BilinearRealization(
            A=source["A"], b=source["b"], C=source["C"], z0=source["z0"]
        )
    path = Path(source)
    if base_dir is not None and not path.is_absolute():
        path = base_dir / path
    return read_realization(path.read_text())


def read_realization(text: str) -> BilinearRealization:
    """Parse the plain-text realization format.

    One keyed line each: ``n``, ``m``, ``A<i>`` (n*n rationals, row-major),
    ``b<i>`` (n rationals), ``C`` and ``z0``.  Missing ``A<i>``/``b<i>`` are
    zero.  ``#`` starts a comment.
    """
    fields = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, *vals = line.split()
        try:
            fields[key] = [Fraction(v) for v in vals]
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"line {lineno}: bad rational in {line!r}") from None
    try:
        n = int(fields.pop("n")[0])
        m = int(fields.pop("m")[0])
        C = fields.pop("C")
        z0 = fields.pop("z0")
    except (KeyError, IndexError) as exc:
        raise ValueError(f"realization is missing field {exc}") from None
    A, b = [], []
    for i in range(m + 1):
        flat = fields.pop(f"A{i}", [Fraction(0)] * (n * n))
        if len(flat) != n * n:
            raise ValueError(f"A{i} needs {n * n} entries, got {len(flat)}")
        A.append([flat[r * n:(r + 1) * n] for r in range(n)])
        b.append(fields.pop(f"b{i}", [Fraction(0)] * n))
    if fields:
        raise ValueError(f"unknown realization fields: {', '.join(sorted(fields))}")
    return BilinearRealization(A=A, b=b, C=C, z0=z0)


def read_input_signal(text: str):
    """``t_start t_end v_1 ... v_m`` per line -> InputSignal."""
    segs = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            a, b, *vals = (float(x) for x in line.split())
        except ValueError:
            raise ValueError(f"line {lineno}: expected numbers, got {line!r}") from None
        segs.append((a, b, tuple(vals)))
    return InputSignal(tuple(segs))
