import json
import subprocess
import sys
from fractions import Fraction
from pathlib import Path

import pytest

from series_entropy import series as S
from series_entropy.cli import main
from series_entropy.errors import ExpressionError
from series_entropy.expr import (
    RunConfig,
    evaluate_expression,
    parse_expression,
    read_input_signal,
    read_realization,
)
from series_entropy.interconnect import DELTA, devlin_polynomial

EXPRS = Path(__file__).resolve().parents[1] / "scripts" / "exprs"


def run(argv, capsys):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def doc(tmp_path, obj, name="e.expr"):
    path = tmp_path / name
    path.write_text(json.dumps(obj))
    return path


# ---------------------------------------------------------------- parsing


def test_parse_valid_shuffle():
    e = parse_expression(
        '{"op":"shuffle","args":[{"family":"letter_star","letter":0},{"family":"letter_star","letter":1}]}'
    )
    assert e.root.kind == "shuffle"
    assert [a.kind for a in e.root.args] == ["family", "family"]


def test_compose_with_delta_is_identity():
    e = parse_expression('{"op":"compose","args":[{"poly":"1 x1"},{"unit":"delta"}]}')
    assert evaluate_expression(e, RunConfig(horizon=4)) == S.parse_literal("x1", 1, 4)
    both = parse_expression('{"op":"compose","args":[{"unit":"delta"},{"unit":"delta"}]}')
    assert evaluate_expression(both, RunConfig()) is DELTA


@pytest.mark.parametrize(
    "document, fragment",
    [
        ('{"op":"add","args":[{"family":"char_all"}]}', "at least 2"),
        ('{"op":"add","args":[{"unit":"delta"},{"family":"char_all"}]}', "delta"),
        ('{"op":"frobnicate","args":[]}', "unknown node kind"),
        ('{"poly":"1/0 x1"}', "bad rational"),
        ('{"op":"compose","args":[{"poly":"x1"}]}', "exactly 2"),
        ('{"op":"scale","args":[{"poly":"x1"}]}', "factor"),
        ('{"family":"nope"}', "unknown family"),
        ("[1, 2]", "expected an object"),
        ("{not json", "invalid JSON"),
    ],
)
def test_parse_errors(document, fragment):
    with pytest.raises(ExpressionError, match=fragment):
        parse_expression(document)


def test_parse_error_carries_path():
    bad = '{"op":"shuffle","args":[{"poly":"x1"},{"op":"add","args":[{"poly":"x0"}]}]}'
    with pytest.raises(ExpressionError, match=r"\$\.args\[1\]"):
        parse_expression(bad)


# ---------------------------------------------------------------- evaluation


def test_shuffle_of_stars_is_char_all():
    e = parse_expression((EXPRS / "shuffle_stars.expr").read_text())
    assert evaluate_expression(e, RunConfig(horizon=12)) == S.family("char_all", 12)


def test_devlin_node():
    e = parse_expression('{"op":"devlin","n_max":6}')
    c = evaluate_expression(e, RunConfig(horizon=6))
    assert c.coefficient((0, 0, 1)) == 15


def test_literal_matches_b3():
    e = parse_expression('{"poly":"2 x1 x1 + 1 x0"}')
    assert evaluate_expression(e, RunConfig(horizon=2)) == devlin_polynomial(3)


def test_every_unary_op():
    base = {"poly": "x0 x1 + 2 x1"}
    cfg = RunConfig(horizon=4)
    ev = lambda node: evaluate_expression(parse_expression(node), cfg)  # noqa: E731
    c = ev(base)
    assert ev({"op": "scale", "factor": "1/2", "args": [base]}) == S.scale(Fraction(1, 2), c)
    assert ev({"op": "shuffle_power", "n": 2, "args": [base]}) == S.shuffle_power(c, 2)
    assert ev({"op": "left_shift", "word": "x0", "args": [base]}) == S.left_shift(c, (0,))
    assert ev({"op": "augment_left", "word": "x1", "args": [base]}) == S.augment_left((1,), c)
    assert ev({"op": "augment_right", "word": "x1", "args": [base]}) == S.augment_right(c, (1,))
    for op in ("add", "hadamard", "cauchy", "shuffle"):
        assert ev({"op": op, "args": [base, base, base]}).horizon == 4


def test_alphabet_from_document():
    e = parse_expression({"m": 2, "expr": {"family": "char_all"}})
    assert evaluate_expression(e, RunConfig(horizon=2)).m == 2
    with pytest.raises(ExpressionError):
        parse_expression({"m": -1, "expr": {"family": "char_all"}})


def test_library_errors_carry_path():
    e = parse_expression({"op": "left_shift", "word": "x0 x0 x0", "args": [{"family": "char_all"}]})
    with pytest.raises(Exception, match=r"\$: "):
        evaluate_expression(e, RunConfig(horizon=2))


def test_run_config_validation():
    for kw in ({"horizon": -1}, {"window": 0}, {"steps": 0}, {"T": 0.0}):
        with pytest.raises(ValueError):
            RunConfig(**kw)


# ---------------------------------------------------------------- file formats


def test_read_realization():
    R = read_realization((EXPRS / "integrator.txt").read_text())
    assert R.n == 1 and R.m == 1
    assert R.A[1] == ((Fraction(0),),)
    assert R.b[1] == (Fraction(1),)
    with pytest.raises(ValueError):
        read_realization("n 1\nm 1\nC 1\n")
    with pytest.raises(ValueError):
        read_realization("n 2\nm 1\nA0 1 2 3\nC 1 0\nz0 0 0\n")
    with pytest.raises(ValueError):
        read_realization("n 1\nm 1\nC 1\nz0 0\nQ 4\n")


def test_read_input_signal():
    u = read_input_signal("# two pieces\n0 0.25 1\n0.25 0.5 -1\n")
    assert u.T == 0.5 and u.segments[1] == (0.25, 0.5, (-1.0,))
    with pytest.raises(ValueError):
        read_input_signal("0 a 1\n")


# ---------------------------------------------------------------- commands


def test_cli_entropy_palindromes(capsys):
    code, out, _ = run(["entropy", "--expr", EXPRS / "palindromes.expr", "--grading", "wordlen", "-L", 24,
                        "--window", 8], capsys)
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "degree,count,dimension,a_k,complete"
    assert lines[-1] == "summary,,,0.5,"


def test_cli_coeff_composition(capsys):
    code, out, _ = run(["coeff", "--expr", EXPRS / "compose_x1star.expr", "--word", "x0 x0 x1"], capsys)
    assert (code, out) == (0, "2\n")


def test_cli_coeff_rational(capsys, tmp_path):
    path = doc(tmp_path, {"poly": "-3/4 x1 x0"})
    assert run(["coeff", "--expr", path, "--word", "x1 x0"], capsys)[1] == "-3/4\n"


def test_cli_support_and_distance(capsys):
    code, out, _ = run(["support", "--expr", EXPRS / "palindromes.expr", "-L", 4], capsys)
    assert code == 0 and out.splitlines()[3] == "2,2,4,0.5,1"
    code, out, _ = run(["distance", "--expr", EXPRS / "char_all.expr", "--other", EXPRS / "x0star.expr",
                        "-L", 8], capsys)
    assert code == 0 and 0.99 < float(out) <= 1.0


def test_cli_eval_series_round_trip(capsys):
    code, out, _ = run(["eval-series", "--expr", EXPRS / "compose_x1star.expr", "-L", 5], capsys)
    assert code == 0
    expected = evaluate_expression(parse_expression((EXPRS / "compose_x1star.expr").read_text()), RunConfig(horizon=5))
    assert S.parse_literal(out, 1, 5) == expected
    assert run(["eval-series", "--expr", EXPRS / "compose_x1star.expr", "-L", 5], capsys)[1] == out


def test_cli_devlin(capsys):
    code, out, _ = run(["devlin", "-n", 4], capsys)
    assert code == 0
    assert out.splitlines() == ["b1 = 1 e", "b2 = 1 x1", "b3 = 1 x0 + 2 x1 x1", "b4 = 3 x0 x1 + 2 x1 x0 + 6 x1 x1 x1"]


def test_cli_realize(capsys):
    code, out, _ = run(["realize", "--realization", EXPRS / "amplifier.txt", "-L", 2], capsys)
    assert code == 0
    assert S.parse_literal(out, 1, 2) == S.family("char_all", 2)


def test_cli_simulate_both_ways(capsys):
    code, ode, _ = run(["simulate", "--realization", EXPRS / "integrator.txt", "--input",
                        EXPRS / "const_half.txt", "--steps", 64], capsys)
    assert code == 0
    code, op, _ = run(["simulate", "--expr", EXPRS / "integrator.expr", "--input", EXPRS / "const_half.txt",
                       "--steps", 64], capsys)
    assert code == 0
    a = [float(r.split(",")[1]) for r in ode.splitlines()[1:]]
    b = [float(r.split(",")[1]) for r in op.splitlines()[1:]]
    assert len(a) == len(b) == 65
    assert max(abs(x - y) for x, y in zip(a, b)) < 1e-4


def test_cli_output_file_and_env(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("SERIES_ENTROPY_OUTDIR", str(tmp_path))
    code, out, _ = run(["devlin", "-n", 2, "-o", "sub/b.txt"], capsys)
    assert code == 0 and out == ""
    assert (tmp_path / "sub" / "b.txt").read_text() == "b1 = 1 e\nb2 = 1 x1\n"


@pytest.mark.parametrize(
    "argv, code",
    [
        (["coeff", "--expr", EXPRS / "palindromes.expr", "--word", "y7"], 1),
        (["coeff", "--expr", "/no/such/file.expr", "--word", "x0"], 1),
        (["entropy", "--expr", EXPRS / "char_all.expr", "-L", 0], 2),
        (["nosuchcommand"], 1),
        (["entropy", "--expr", EXPRS / "char_all.expr", "--window", 0], 1),
        (["simulate", "--input", EXPRS / "const_half.txt"], 1),
    ],
)
def test_cli_exit_codes(argv, code, capsys):
    got, out, err = run(argv, capsys)
    assert got == code
    assert out == ""
    assert err.startswith("error:")


def test_cli_unsupported_is_computation_error(capsys, tmp_path):
    path = doc(tmp_path, {"op": "left_shift", "word": "x0 x0 x0", "args": [{"family": "char_all"}]})
    assert run(["eval-series", "--expr", path, "-L", 2], capsys)[0] == 2


def test_cli_verify_exit_code_tracks_failures(capsys):
    code, out, _ = run(["verify"], capsys)
    lines = out.splitlines()
    assert lines and all(ln.startswith(("PASS ", "FAIL ")) for ln in lines)
    assert code == (1 if any(ln.startswith("FAIL") for ln in lines) else 0)


def test_console_script_is_deterministic():
    argv = [sys.executable, "-m", "series_entropy.cli", "entropy", "--expr", str(EXPRS / "palindromes.expr"), "-L", "12"]
    first = subprocess.run(argv, capture_output=True, check=True).stdout
    second = subprocess.run(argv, capture_output=True, check=True).stdout
    assert first == second and first.endswith(b"summary,,,0.5,\n")
