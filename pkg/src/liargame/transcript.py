"""Transcript serialization and replay.

The exchange format is line-delimited text, one entry per line, fields
separated by tabs:

    <question> <TAB> <answer> <TAB> <a>,<b>,<j> [<TAB> <phase tag>]

* question: ascending comma-separated ids, ``-`` for the empty set, or a
  shorthand ``bit:i`` / ``range:lo-hi``; ``pad:k`` records k virtual
  pennies added between questions (its answer field is ``-``).
* answer: ``Y`` or ``N``.
* summary: the (a, b, j) aggregate after the entry was applied.
* phase tag: optional annotation emitted by the machine questioner
  (``BIT i``, ``PAD r``, ``HALV p y``, ``PSRCH s``, ``END s``).

Ids are always serialized ascending, so equal games produce byte-identical
files.  Files written to disk start with the header line

    liargame-transcript v1 n=<N> q=<Q>

which makes them self-contained: replaying the lines from an initial state
over 1..N with budget Q must reproduce every stored summary exactly.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

from .candidates import Question
from .game import GameState, PadEntry, QuestionEntry, StateSummary, TranscriptEntry

HEADER_PREFIX = "liargame-transcript v1"


class TranscriptError(ValueError):
    """Malformed transcript text or replay mismatch."""


def question_to_text(question: Question) -> str:
    label = question.label
    if label is not None:
        return label
    if not question.ids:
        return "-"
    return ",".join(str(i) for i in sorted(question.ids))


def question_from_text(text: str) -> Question:
    if text == "-":
        return Question.from_ids(())
    if text.startswith("bit:"):
        return Question.from_bit(int(text[4:]))
    if text.startswith("range:"):
        lo, _, hi = text[6:].partition("-")
        return Question.from_range(int(lo), int(hi))
    try:
        return Question.from_ids(int(part) for part in text.split(","))
    except ValueError as exc:
        raise TranscriptError(f"bad question field: {text!r}") from exc


def entry_to_line(entry: TranscriptEntry, tag: str | None = None) -> str:
    if isinstance(entry, PadEntry):
        fields = [f"pad:{entry.count}", "-", str(entry.after)]
    else:
        fields = [
            question_to_text(entry.question),
            "Y" if entry.answer else "N",
            str(entry.after),
        ]
    if tag is not None:
        fields.append(tag)
    return "\t".join(fields)


def serialize(entries: list[TranscriptEntry], tags: list[str] | None = None) -> str:
    """One line per entry; with tags, the machine questioner's trace format."""
    if tags is not None and len(tags) != len(entries):
        raise ValueError("one phase tag per transcript entry")
    lines = [
        entry_to_line(e, tags[i] if tags is not None else None)
        for i, e in enumerate(entries)
    ]
    return "\n".join(lines) + ("\n" if lines else "")


@dataclass(frozen=True)
class ParsedEntry:
    question: Question | None  # None for pad entries
    pad_count: int | None
    answer: bool | None
    after: StateSummary
    tag: str | None


def parse_line(line: str) -> ParsedEntry:
    fields = line.rstrip("\n").split("\t")
    if len(fields) not in (3, 4):
        raise TranscriptError(f"expected 3 or 4 tab-separated fields: {line!r}")
    qtext, anstext, sumtext = fields[:3]
    tag = fields[3] if len(fields) == 4 else None
    try:
        a, b, j = (int(part) for part in sumtext.split(","))
    except ValueError as exc:
        raise TranscriptError(f"bad summary field: {sumtext!r}") from exc
    after = StateSummary(a, b, j)
    if qtext.startswith("pad:"):
        if anstext != "-":
            raise TranscriptError("pad entries carry no answer")
        return ParsedEntry(None, int(qtext[4:]), None, after, tag)
    if anstext not in ("Y", "N"):
        raise TranscriptError(f"bad answer field: {anstext!r}")
    return ParsedEntry(question_from_text(qtext), None, anstext == "Y", after, tag)


def parse(text: str) -> list[ParsedEntry]:
    return [parse_line(line) for line in text.splitlines() if line]


def replay(n: int, q: int, entries: list[ParsedEntry]) -> GameState:
    """Re-run a transcript from scratch, checking every stored summary."""
    state = GameState(n, q)
    for lineno, entry in enumerate(entries, start=1):
        if entry.pad_count is not None:
            state.add_pennies(entry.pad_count)
        else:
            state.apply(entry.question, entry.answer)
        got = state.summary()
        if got != entry.after:
            raise TranscriptError(
                f"replay diverged at entry {lineno}: stored {entry.after}, replayed {got}"
            )
    return state


def to_file_text(n: int, q: int, entries: list[TranscriptEntry], tags: list[str] | None = None) -> str:
    header = f"{HEADER_PREFIX} n={n} q={q}\n"
    return header + serialize(entries, tags)


def parse_file_text(text: str) -> tuple[int, int, list[ParsedEntry]]:
    lines = text.splitlines()
    if not lines or not lines[0].startswith(HEADER_PREFIX):
        raise TranscriptError("missing transcript header")
    params = dict(part.split("=", 1) for part in lines[0][len(HEADER_PREFIX):].split())
    try:
        n, q = int(params["n"]), int(params["q"])
    except (KeyError, ValueError) as exc:
        raise TranscriptError("header must carry n= and q=") from exc
    return n, q, [parse_line(line) for line in lines[1:] if line]


def write_file(path: str, n: int, q: int, entries: list[TranscriptEntry], tags: list[str] | None = None) -> None:
    tmp = f"{path}.tmp"
    with open(tmp, "w", encoding="ascii") as fh:
        fh.write(to_file_text(n, q, entries, tags))
    os.replace(tmp, path)


def read_file(path: str) -> tuple[int, int, list[ParsedEntry]]:
    with open(path, "r", encoding="ascii") as fh:
        return parse_file_text(fh.read())
