"""Responder implementations: honest with a scripted lie, and adversarial.

The honest responder holds a fixed secret and answers membership
truthfully, except at one scripted question index where it lies.  The
adversary commits to no secret at all: it answers so the surviving weight
stays as large as possible, which is exactly the play that certifies the
counting lower bound (the heavier child always weighs at least half the
parent).  It additionally refuses an answer that would leave no real
candidate alive when the other answer leaves one, so its answer sequence
is always consistent with some secret and at most one lie.
"""

from __future__ import annotations

from .candidates import Question
from .game import GameState


class HonestResponder:
    """Fixed secret x, truthful answers, at most one scripted lie."""

    __slots__ = ("x", "lie_at")

    def __init__(self, x: int, lie_at: int | None = None) -> None:
        if x < 1:
            raise ValueError("the secret must be a positive candidate id")
        if lie_at is not None and lie_at < 1:
            raise ValueError("lie_at is a 1-based question index")
        self.x = x
        self.lie_at = lie_at

    def answer(self, index: int, question: Question, state: GameState) -> bool:
        truth = question.contains_id(self.x)
        if index == self.lie_at:
            return not truth
        return truth


class WeightAdversary:
    """Keeps the heavier child; never abandons every real candidate.

    Tie-break, in order: larger weight, then larger consistent count,
    then No.  The consistency override picks the lighter child only when
    the heavier one would leave zero non-virtual candidates with at most
    one contradiction while the lighter leaves at least one.
    """

    __slots__ = ()

    def answer(self, index: int, question: Question, state: GameState) -> bool:
        return adversarial_answer(state, question)


def adversarial_answer(state: GameState, question: Question) -> bool:
    yes, no = state.child_summaries(question)
    pick_yes = (yes.weight, yes.a, 0) > (no.weight, no.a, 1)
    real_yes, real_no = state.child_real_support(question)
    if pick_yes and real_yes == 0 and real_no > 0:
        return False
    if not pick_yes and real_no == 0 and real_yes > 0:
        return True
    return pick_yes
