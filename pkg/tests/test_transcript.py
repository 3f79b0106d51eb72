"""Transcript serialization, parsing, and replay determinism."""

from __future__ import annotations

import random

import pytest

from liargame.candidates import Question
from liargame.game import initial_state
from liargame.responders import HonestResponder
from liargame.strategy import run_game
from liargame import transcript as tr


def test_question_text_roundtrip():
    for q in (
        Question.from_bit(5),
        Question.from_range(3, 17),
        Question.from_ids([9, 1, 4]),
        Question.from_ids([]),
    ):
        assert tr.question_from_text(tr.question_to_text(q)) == q
    assert tr.question_to_text(Question.from_ids([9, 1, 4])) == "1,4,9"
    assert tr.question_to_text(Question.from_ids([])) == "-"


def test_parse_rejects_garbage():
    with pytest.raises(tr.TranscriptError):
        tr.parse_line("only-two\tfields")
    with pytest.raises(tr.TranscriptError):
        tr.parse_line("1,2\tmaybe\t1,2,3")
    with pytest.raises(tr.TranscriptError):
        tr.parse_line("1,2\tY\tnot-a-summary")
    with pytest.raises(tr.TranscriptError):
        tr.parse_line("pad:3\tY\t1,2,3")
    with pytest.raises(tr.TranscriptError):
        tr.question_from_text("1,two,3")


def _random_game(rng, n, q):
    state = initial_state(n, q)
    while state.j > 0:
        members = rng.sample(range(1, n + 1), rng.randrange(0, n + 1))
        state.apply(Question.from_ids(members), bool(rng.randrange(2)))
        if rng.randrange(4) == 0:
            state.add_pennies(rng.randrange(0, 3))
    return state


def test_random_games_replay_bit_for_bit():
    rng = random.Random(2024)
    for _ in range(40):
        n = rng.randrange(1, 24)
        q = rng.randrange(1, 10)
        state = _random_game(rng, n, q)
        text = tr.to_file_text(n, q, state.transcript)
        n2, q2, entries = tr.parse_file_text(text)
        assert (n2, q2) == (n, q)
        replayed = tr.replay(n2, q2, entries)
        assert replayed.summary() == state.summary()
        assert tr.to_file_text(n, q, replayed.transcript) == text


def test_strategy_trace_replays_and_keeps_tags():
    result = run_game(21, HonestResponder(13, lie_at=3))
    text = tr.to_file_text(result.plan.padded_n, result.budget,
                           result.state.transcript, result.tags)
    n, q, entries = tr.parse_file_text(text)
    assert n == result.plan.padded_n and q == result.budget
    tags = [e.tag for e in entries]
    assert tags == result.tags
    assert any(t.startswith("BIT") for t in tags)
    assert any(t.startswith("PAD") for t in tags)
    replayed = tr.replay(n, q, entries)
    assert replayed.summary() == result.state.summary()
    assert replayed.identified() == 13


def test_replay_detects_divergence():
    state = initial_state(4, 3)
    state.apply(Question.from_ids([1, 2]), True)
    text = tr.serialize(state.transcript)
    doctored = text.replace("2,2,2", "2,1,2")
    entries = tr.parse(doctored)
    with pytest.raises(tr.TranscriptError, match="diverged"):
        tr.replay(4, 3, entries)


def test_header_required_for_files():
    with pytest.raises(tr.TranscriptError, match="header"):
        tr.parse_file_text("1,2\tY\t1,1,1\n")


def test_file_write_and_read(tmp_path):
    result = run_game(10, HonestResponder(7))
    path = tmp_path / "game.log"
    tr.write_file(str(path), result.plan.padded_n, result.budget,
                  result.state.transcript, result.tags)
    n, q, entries = tr.parse_file_text(path.read_text(encoding="ascii"))
    assert tr.replay(n, q, entries).identified() == 7


def test_serialization_is_deterministic():
    a = run_game(10**6, HonestResponder(123456, lie_at=5))
    b = run_game(10**6, HonestResponder(123456, lie_at=5))
    text_a = tr.to_file_text(a.plan.padded_n, a.budget, a.state.transcript, a.tags)
    text_b = tr.to_file_text(b.plan.padded_n, b.budget, b.state.transcript, b.tags)
    assert text_a == text_b
