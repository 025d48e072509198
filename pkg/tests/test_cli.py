"""CLI behaviour, checked against golden files in ``tests/golden``.

Set ``ATAM_UPDATE_GOLDEN=1`` to rewrite the golden files from the current
output.
"""

import io
import os
import sys
from pathlib import Path

import pytest

from atam.cli import main

GOLDEN = Path(__file__).parent / "golden"


def run(capsys, monkeypatch, argv, stdin=""):
    monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def pipe(capsys, monkeypatch, first, second):
    code, text, _ = run(capsys, monkeypatch, first)
    assert code == 0
    return run(capsys, monkeypatch, second, text)


def check_golden(name, text):
    path = GOLDEN / name
    if os.environ.get("ATAM_UPDATE_GOLDEN"):
        path.write_text(text, encoding="utf-8")
    assert text == path.read_text(encoding="utf-8")


CASES = [
    ("generate_comb3.txt", ["generate", "comb", "--n", "3"], None),
    ("generate_effpath0.txt", ["generate", "effpath", "--k", "0"], None),
    ("analyze_effpath0.txt", ["generate", "effpath", "--k", "0"], ["analyze", "--tentacular"]),
    ("build_path_comb3.txt", ["generate", "comb", "--n", "3"], ["build-path"]),
    ("terminals_comb3.txt", ["generate", "comb", "--n", "3"], ["terminals", "--show"]),
    ("terminals_effpath0.txt", ["generate", "effpath", "--k", "0"], ["terminals"]),
    ("verify_comb10.txt", ["generate", "comb", "--n", "10"], ["verify-square", "--n", "10"]),
    ("witness_comb3.txt", ["generate", "comb", "--n", "3"], ["witness", "--n", "3"]),
    ("render_comb10.txt", ["generate", "comb", "--n", "10"], ["render", "--ascii"]),
    ("render_comb2.svg", ["generate", "comb", "--n", "2"], ["render", "--svg", "--labels", "--path", "--visible"]),
    ("simulate_comb3.txt", ["generate", "comb", "--n", "3"], ["simulate", "--seed-rng", "7"]),
    ("bruteforce_n2_t2.txt", ["bruteforce", "--n", "2", "--max-tiles", "2"], None),
]


@pytest.mark.parametrize("name,first,second", CASES, ids=[c[0] for c in CASES])
def test_golden(capsys, monkeypatch, name, first, second):
    if second is None:
        code, out, _ = run(capsys, monkeypatch, first)
    else:
        code, out, _ = pipe(capsys, monkeypatch, first, second)
    assert code == 0
    check_golden(name, out)


def test_verify_square_exit_status(capsys, monkeypatch):
    code, out, _ = pipe(capsys, monkeypatch, ["generate", "comb", "--n", "10"], ["verify-square", "--n", "10"])
    assert code == 0 and out.startswith("verify_square: true")
    code, out, _ = pipe(capsys, monkeypatch, ["generate", "comb", "--n", "3"], ["verify-square", "--n", "4"])
    assert code == 1 and "verify_square: false" in out


def test_analyze_reports_right_tentacles(capsys, monkeypatch):
    _, out, _ = pipe(capsys, monkeypatch, ["generate", "effpath", "--k", "0"], ["analyze", "--tentacular"])
    assert "right_tentacular: yes" in out
    assert out.count("right tentacle:") >= 2


def test_bruteforce_none(capsys, monkeypatch):
    _, out, _ = run(capsys, monkeypatch, ["bruteforce", "--n", "2", "--max-tiles", "2"])
    assert "min_tiles_found: NONE" in out


def test_input_file(tmp_path, capsys, monkeypatch):
    _, text, _ = run(capsys, monkeypatch, ["generate", "comb", "--n", "2"])
    f = tmp_path / "comb2.tiles"
    f.write_text(text)
    code, out, _ = run(capsys, monkeypatch, ["verify-square", "--n", "2", "--input", str(f)])
    assert code == 0


@pytest.mark.parametrize(
    "argv,stdin,needle",
    [
        (["generate", "comb"], "", "--n is required"),
        (["generate", "effpath"], "", "--k is required"),
        (["verify-square", "--n", "2"], "garbage\n", "input: line 1"),
        (["terminals", "--bound", "1,2"], None, "--bound"),
        (["build-path", "--target", "x"], None, "--target"),
        (["build-path", "--target", "9,9", "--region", "0,0,1,1"], None, "--target"),
        (["verify-square", "--n", "2", "--input", "/nonexistent/file"], "", "No such file"),
    ],
)
def test_usage_errors(capsys, monkeypatch, argv, stdin, needle):
    if stdin is None:
        _, stdin, _ = run(capsys, monkeypatch, ["generate", "comb", "--n", "2"])
    code, _, err = run(capsys, monkeypatch, argv, stdin)
    assert code == 2 and needle in err


def test_terminals_without_bound(capsys, monkeypatch):
    doc = "atam-tileset\t1\nseed\t0\t0\t0\ntemperature\t1\ntile\t0\t\t\t\t\n"
    code, _, err = run(capsys, monkeypatch, ["terminals"], doc)
    assert code == 2 and "--bound is required" in err


def test_argparse_errors_exit_2(capsys, monkeypatch):
    code, _, _ = run(capsys, monkeypatch, ["nonsense"])
    assert code == 2
    code, _, _ = run(capsys, monkeypatch, ["--help"])
    assert code == 0
