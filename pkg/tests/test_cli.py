"""CLI subcommands: outputs, exit codes, determinism."""

from __future__ import annotations

import io

import pytest

from liargame.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_q1(capsys):
    code, out, _ = run_cli(capsys, "q1", "1000000")
    assert code == 0 and out.strip() == "25"


def test_bound(capsys):
    code, out, _ = run_cli(capsys, "bound", "17")
    assert code == 0
    assert "exact optimum q1(n)      : 8" in out
    assert "9 questions over 2^5" in out
    assert "gap (strategy - optimal) : 1" in out


def test_table_matches_known_values(capsys):
    code, out, _ = run_cli(capsys, "table", "--from", "2", "--to", "17")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].split("\t") == ["n", "pelc_q1", "strategy_q", "ell", "gap"]
    got = [int(line.split("\t")[1]) for line in lines[1:]]
    assert got == [3, 5, 5, 6, 6, 6, 6, 7, 7, 7, 7, 7, 7, 7, 7, 8]


def test_oracle_agrees(capsys):
    code, out, _ = run_cli(capsys, "oracle", "--n-max", "20")
    assert code == 0
    assert "all agree" in out


def test_oracle_memo_cache(capsys, tmp_path):
    cache = str(tmp_path / "memo.bin")
    code, _, err = run_cli(capsys, "oracle", "--n-max", "12", "--memo-cache", cache)
    assert code == 0 and "saved" in err
    code, _, err = run_cli(capsys, "oracle", "--n-max", "12", "--memo-cache", cache)
    assert code == 0 and "loaded" in err


def test_verify_exhaustive(capsys):
    code, out, _ = run_cli(capsys, "verify", "--n", "16")
    assert code == 0
    assert "cases=128" in out and "failures=0" in out


def test_verify_budget_refusal(capsys):
    code, _, err = run_cli(capsys, "verify", "--n", "1000000")
    assert code == 2
    assert "refusing" in err


def test_verify_sampled_deterministic(capsys):
    code1, out1, _ = run_cli(capsys, "verify", "--n", "5000", "--samples", "50", "--seed", "9")
    code2, out2, _ = run_cli(capsys, "verify", "--n", "5000", "--samples", "50", "--seed", "9")
    assert code1 == code2 == 0
    assert out1 == out2


def test_adversary_outcomes(capsys, tmp_path):
    code, out, _ = run_cli(capsys, "adversary", "--n", "1000000", "--q", "24",
                           "--transcripts", str(tmp_path))
    assert code == 0
    assert "questioner does not win" in out
    assert (tmp_path / "adversary_n1000000_q24.log").exists()

    code, out, _ = run_cli(capsys, "adversary", "--n", "2", "--q", "3")
    assert code == 0 and "questioner wins" in out

    code, out, _ = run_cli(capsys, "adversary", "--n", "9", "--q", "3",
                           "--random-questioner", "--seed", "4")
    assert code == 0 and "does not win" in out


def test_play_interactive(capsys, monkeypatch):
    # machine finds x=3 of 4; answer honestly per the rendered questions
    answers = iter(["y", "n", "n", "n", "y"] + ["n"] * 10)
    monkeypatch.setattr("builtins.input", lambda prompt="": next(answers))
    code = main(["play", "--n", "4"])
    out = capsys.readouterr().out
    assert code == 0
    assert "Your number is" in out or "Caught" in out


def test_version(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
