"""Ground-truth semantics of the one-lie liar game.

One responder holds (or pretends to hold) a secret integer; the questioner
asks Yes/No membership questions and the responder may lie at most once.
Every candidate id carries a contradiction count against the answers so
far: 0 means consistent, 1 means the candidate is a penny (its one allowed
lie is spent), 2 or more means eliminated.  The aggregate state (a, b) is
the pair of consistent/penny counts, and with j questions remaining it
carries the weight

    w_j(a, b) = (j + 1) * a + b

which every question splits exactly across its two possible answers.  The
questioner has won as soon as a + b <= 1.

Candidate ids 1..n are the game's search space; ids above n are virtual
pennies, bookkeeping tokens added to round the weight up to a power of two.
A virtual id can never be an honest responder's secret, so a game that ends
with only a virtual survivor proves the responder answered inconsistently.
"""

from __future__ import annotations

from dataclasses import dataclass

from .candidates import (
    CandidateSet,
    CubeSet,
    IdSet,
    Question,
    empty_like,
    full_set,
    union_disjoint,
)

YES = True
NO = False


class LiarGameError(Exception):
    """Base class for game-semantics errors."""


class InconsistentResponderError(LiarGameError):
    """The answers admit no real secret with at most one lie."""


@dataclass(frozen=True)
class StateSummary:
    """Aggregate view (a, b) of a state with j questions remaining."""

    a: int
    b: int
    j: int

    @property
    def weight(self) -> int:
        return (self.j + 1) * self.a + self.b

    def __str__(self) -> str:
        return f"{self.a},{self.b},{self.j}"


def weight(summary: StateSummary) -> int:
    """The potential w_j(a, b) = (j+1)a + b.  Exact for any size."""
    return summary.weight


@dataclass(frozen=True)
class QuestionEntry:
    question: Question
    answer: bool
    after: StateSummary


@dataclass(frozen=True)
class PadEntry:
    """Virtual pennies added between questions (no answer involved)."""

    count: int
    after: StateSummary


TranscriptEntry = QuestionEntry | PadEntry


class GameState:
    """Mutable state of a single game.

    ``n`` is the size of the id range the game was created over (the
    strategy passes its padded power of two here); ``virtuals`` counts the
    virtual pennies appended above it.  The consistent and penny
    populations are candidate sets; everything with two or more
    contradictions is implicitly eliminated.  Contradiction counts never
    decrease, so the three-way classification is all the game ever needs.

    A state is owned by one game; operations mutate it under exclusive
    access.  Cross-thread use requires external serialization.
    """

    __slots__ = ("n", "virtuals", "consistent", "penny", "j", "transcript")

    def __init__(self, n: int, q: int) -> None:
        if n < 1:
            raise ValueError("search space must contain at least one candidate")
        if q < 0:
            raise ValueError("question budget must be non-negative")
        self.n = n
        self.virtuals = 0
        self.consistent: CandidateSet = full_set(n)
        bits = self.consistent.bits if isinstance(self.consistent, CubeSet) else None
        self.penny: CandidateSet = empty_like(n, bits)
        self.j = q
        self.transcript: list[TranscriptEntry] = []

    @property
    def width(self) -> int:
        return self.n + self.virtuals

    def summary(self) -> StateSummary:
        return StateSummary(self.consistent.count(), self.penny.count(), self.j)

    def apply(self, question: Question, answer: bool) -> None:
        """Apply one answered question.

        Yes adds a contradiction to every candidate outside the question
        set, No to every candidate inside it.  Consistent members of the
        contradicted side become pennies; penny members of it are
        eliminated.
        """
        if self.j < 1:
            raise ValueError("no questions remaining")
        top = question.max_id()
        if top is not None and top > self.width:
            raise ValueError(f"question references unknown id {top} (universe 1..{self.width})")
        w = self.width
        c_in, c_out = self.consistent.split(question, w)
        p_in, p_out = self.penny.split(question, w)
        if answer:
            self.consistent = c_in
            self.penny = union_disjoint(p_in, c_out, w)
        else:
            self.consistent = c_out
            self.penny = union_disjoint(p_out, c_in, w)
        self.j -= 1
        self.transcript.append(QuestionEntry(question, answer, self.summary()))

    def child_summaries(self, question: Question) -> tuple[StateSummary, StateSummary]:
        """Summaries of the two states this question could lead to.

        Pure inspection: the state is not modified.  The two weights always
        sum to the current weight.
        """
        if self.j < 1:
            raise ValueError("no questions remaining")
        w = self.width
        c_in, c_out = self.consistent.split(question, w)
        p_in, _ = self.penny.split(question, w)
        a, b = self.consistent.count(), self.penny.count()
        a_yes = c_in.count()
        k = p_in.count()
        yes = StateSummary(a_yes, k + (a - a_yes), self.j - 1)
        no = StateSummary(a - a_yes, (b - k) + a_yes, self.j - 1)
        return yes, no

    def child_real_support(self, question: Question) -> tuple[int, int]:
        """Per-child count of non-virtual candidates with <= 1 contradiction."""
        w = self.width
        c_in, c_out = self.consistent.split(question, w)
        p_in, p_out = self.penny.split(question, w)
        n = self.n
        real_c = self.consistent.count_at_most(n)
        yes_support = real_c + p_in.count_at_most(n)
        no_support = real_c + p_out.count_at_most(n)
        return yes_support, no_support

    def add_pennies(self, count: int) -> list[int]:
        """Append virtual pennies (ids above the current universe)."""
        if count < 0:
            raise ValueError("penny count must be non-negative")
        new_ids = list(range(self.width + 1, self.width + count + 1))
        self.virtuals += count
        if count:
            self.penny = union_disjoint(self.penny, IdSet(frozenset(new_ids)), self.width)
        self.transcript.append(PadEntry(count, self.summary()))
        return new_ids

    def is_won(self) -> bool:
        return self.consistent.count() + self.penny.count() <= 1

    def identified(self) -> int:
        """The unique surviving candidate of a won game.

        Raises InconsistentResponderError if no candidate survived or the
        sole survivor is a virtual penny: either way the answers fit no
        real secret with at most one lie.
        """
        a = self.consistent.count()
        b = self.penny.count()
        if a + b > 1:
            raise ValueError("game is not won yet")
        if a + b == 0:
            raise InconsistentResponderError("no candidate fits all but at most one answer")
        survivor = (self.consistent if a else self.penny).ids()[0]
        if survivor > self.n:
            raise InconsistentResponderError(
                f"sole survivor {survivor} is a virtual penny, not a possible secret"
            )
        return survivor

    def candidate_status(self, cid: int) -> int:
        """0 = consistent, 1 = penny, 2 = eliminated."""
        if not 1 <= cid <= self.width:
            raise ValueError(f"unknown candidate id {cid}")
        if self.consistent.contains(cid):
            return 0
        if self.penny.contains(cid):
            return 1
        return 2

    def consistent_ids(self) -> list[int]:
        return self.consistent.ids()

    def penny_ids(self) -> list[int]:
        return self.penny.ids()

    def questions_asked(self) -> int:
        return sum(1 for e in self.transcript if isinstance(e, QuestionEntry))


def initial_state(n: int, q: int) -> GameState:
    """Fresh game over candidates 1..n with a budget of q questions."""
    return GameState(n, q)


def _set_populations(state: GameState, consistent, pennies) -> GameState:
    from .candidates import MaskSet, mask_from_ids

    c_ids = list(consistent)
    p_ids = list(pennies)
    overlap = set(c_ids) & set(p_ids)
    if overlap:
        raise ValueError(f"candidates cannot be both consistent and pennies: {sorted(overlap)}")
    for cid in (*c_ids, *p_ids):
        if not 1 <= cid <= state.n:
            raise ValueError(f"candidate id {cid} outside 1..{state.n}")
    state.consistent = MaskSet(mask_from_ids(c_ids, state.n))
    state.penny = MaskSet(mask_from_ids(p_ids, state.n))
    return state


def state_from_populations(n: int, consistent, pennies, j: int) -> GameState:
    """A mid-game state with the given populations (everything else is
    eliminated).  For tests and property sweeps; not reachable by replay."""
    return _set_populations(GameState(n, j), consistent, pennies)
