"""The constructive questioner: binary search, penny padding, exact halving.

The plan for a search space 1..n, with q = strategy_bound(n).q questions:

1. Pad the space to N = 2^ell, ell = ceil(log2 n), and ask the ell bit
   questions "is bit i of the secret's zero-based code a 1?".  Whatever
   the answers, exactly one code matches all of them and ell codes match
   all but one, so the state is (1, ell) with p = q - ell questions left.
2. Add virtual pennies until the weight is exactly 2^p, i.e. up to
   r = 2^p - p - 1 pennies in total.
3. While p > 2: ask about the consistent candidate plus the y lowest
   pennies, y = (r + 1 - p) / 2, which is exactly the set whose either
   answer halves the weight.  Yes keeps (1, y) and descends to p - 1;
   No leaves 2^(p-1) pennies, found by plain binary search in the p - 1
   remaining questions (a penny's lie is spent, so every answer halves
   the survivors exactly).
4. At p = 2 the state is (1, 1) with two questions left: ask the
   consistent candidate alone (Yes ends it), then either penny.

Every post-padding answer halves the weight exactly, which is what keeps
the whole budget at q against any responder, honest or adversarial.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Protocol

from .bounds import ceil_log2, strategy_bound
from .candidates import Question
from .game import GameState, InconsistentResponderError, LiarGameError, initial_state


class Phase(Enum):
    BIT_SEARCH = "bit_search"
    PENNY_INIT = "penny_init"
    HALVING = "halving"
    PENNY_SEARCH = "penny_search"
    ENDGAME = "endgame"
    DONE = "done"


@dataclass
class StrategyPlan:
    """Derived parameters and phase progression for one game."""

    n: int
    padded_n: int
    ell: int
    q: int
    phase: Phase
    bit_index: int = 0
    p: int = 0
    r: int = 0
    penny_order: tuple[int, ...] = ()
    penny_step: int = 0
    endgame_step: int = 0


def make_plan(n: int) -> StrategyPlan:
    if n < 1:
        raise ValueError("n must be positive")
    bound = strategy_bound(n)
    if n == 1:
        return StrategyPlan(n=1, padded_n=1, ell=0, q=0, phase=Phase.DONE)
    plan = StrategyPlan(
        n=n, padded_n=1 << bound.ell, ell=bound.ell, q=bound.q, phase=Phase.BIT_SEARCH
    )
    # minimality of q makes p the rounded-up log of q+1, hence >= 2
    assert plan.ell <= plan.q - ceil_log2(plan.q + 1)
    assert plan.q - plan.ell >= 2
    return plan


def bit_question(plan: StrategyPlan, i: int) -> Question:
    if plan.phase is not Phase.BIT_SEARCH or i != plan.bit_index:
        raise ValueError(f"not at bit-search step {i}")
    if not 0 <= i < plan.ell:
        raise ValueError(f"bit index {i} out of range 0..{plan.ell - 1}")
    return Question.from_bit(i)


def pad_pennies(state: GameState, plan: StrategyPlan) -> list[int]:
    """Round the weight up to 2^p with virtual pennies; set p and r."""
    if plan.phase is not Phase.PENNY_INIT:
        raise ValueError("padding happens once, right after the bit search")
    p = plan.q - plan.ell
    summ = state.summary()
    # forced by the bit search, whatever the answers were
    assert (summ.a, summ.b) == (1, plan.ell), f"unexpected pre-padding state {summ}"
    r = (1 << p) - p - 1
    assert r >= plan.ell, "padding can only add pennies"
    added = state.add_pennies(r - plan.ell)
    plan.p, plan.r = p, r
    if state.j == p:
        after = state.summary()
        assert after.weight == 1 << p, f"padding must land exactly on 2^p, got {after}"
    plan.phase = Phase.HALVING if r >= p + 1 else Phase.ENDGAME
    return added


def halving_y(p: int, r: int) -> int:
    """Pennies to include so either answer halves the weight exactly."""
    if (r + 1 - p) % 2 != 0:
        raise LiarGameError(f"halving parity violated at p={p}, r={r}")
    y = (r + 1 - p) // 2
    if y < 1:
        raise LiarGameError(f"halving needs r >= p+1, got p={p}, r={r}")
    return y


def halving_set(plan: StrategyPlan, state: GameState) -> Question:
    """The set A_p: the consistent candidate plus the y lowest pennies."""
    if plan.phase is not Phase.HALVING:
        raise ValueError("not in the halving phase")
    y = halving_y(plan.p, plan.r)
    nonpenny = state.consistent_ids()
    assert len(nonpenny) == 1, "halving states have exactly one consistent candidate"
    pennies = state.penny_ids()
    assert len(pennies) == plan.r, f"expected {plan.r} pennies, found {len(pennies)}"
    return Question.from_ids([nonpenny[0], *pennies[:y]])


def penny_search_question(plan: StrategyPlan, state: GameState) -> Question:
    """Half of the surviving pennies: those whose entry rank has the step bit."""
    if plan.phase is not Phase.PENNY_SEARCH:
        raise ValueError("not in the penny-search phase")
    members = [
        pid
        for idx, pid in enumerate(plan.penny_order)
        if (idx >> plan.penny_step) & 1 and state.penny.contains(pid)
    ]
    return Question.from_ids(members)


def endgame_question(plan: StrategyPlan, state: GameState) -> Question:
    """Step 0: the consistent candidate alone.  Step 1: the lowest penny."""
    if plan.phase is not Phase.ENDGAME:
        raise ValueError("not in the endgame")
    summ = state.summary()
    assert summ.a + summ.b <= 2 and summ.b <= 2, f"endgame entered from {summ}"
    if plan.endgame_step == 0:
        consistent = state.consistent_ids()
        assert len(consistent) == 1 and summ.b <= 1
        return Question.from_ids(consistent)
    pennies = state.penny_ids()
    return Question.from_ids(pennies[:1])


def on_answer(plan: StrategyPlan, state: GameState, answer: bool) -> StrategyPlan:
    """Advance the phase machine after state.apply(question, answer)."""
    if plan.phase is Phase.BIT_SEARCH:
        plan.bit_index += 1
        if plan.bit_index == plan.ell:
            plan.phase = Phase.PENNY_INIT
    elif plan.phase is Phase.HALVING:
        y = halving_y(plan.p, plan.r)
        if answer:
            plan.p, plan.r = plan.p - 1, y
            if plan.p == 2:
                plan.phase = Phase.ENDGAME
        else:
            survivors = state.penny_ids()
            assert len(survivors) == 1 << (plan.p - 1), "halving must leave 2^(p-1) pennies"
            plan.penny_order = tuple(survivors)
            plan.penny_step = 0
            plan.phase = Phase.PENNY_SEARCH
    elif plan.phase is Phase.PENNY_SEARCH:
        plan.penny_step += 1
        if plan.penny_step == plan.p - 1:
            plan.phase = Phase.DONE
    elif plan.phase is Phase.ENDGAME:
        if plan.endgame_step == 0 and not answer:
            plan.endgame_step = 1
        else:
            plan.phase = Phase.DONE
    else:
        raise ValueError(f"no answer expected in phase {plan.phase}")
    return plan


class Responder(Protocol):
    def answer(self, index: int, question: Question, state: GameState) -> bool: ...


class MachineQuestioner:
    """Drives one game of the strategy against an arbitrary answer source.

    The state evolves mechanically from the answers, so the plan alone
    knows when the game is over; no per-answer survivor counting is
    needed.  ``strict`` enables the power-of-two weight assertions, which
    only hold when playing with the natural budget (ask_budget == plan.q).
    """

    def __init__(self, n: int, budget: int | None = None, strict: bool | None = None) -> None:
        self.plan = make_plan(n)
        self.budget = self.plan.q if budget is None else budget
        self.strict = (self.budget == self.plan.q) if strict is None else strict
        self.state = initial_state(self.plan.padded_n, self.budget)
        self.tags: list[str] = []
        self.asked = 0

    def done(self) -> bool:
        return self.plan.phase is Phase.DONE or self.state.j == 0

    def _pre_padding_question(self) -> tuple[Question, str]:
        # Right after the bit search, before the virtual pennies exist.
        # Padding is part of posing the next question, so this preview must
        # not mutate the state; it never needs the virtual ids because the
        # first halving set takes at most ell pennies (y <= ell follows
        # from the minimality of q) and virtual ids sort above real ones.
        plan = self.plan
        p = plan.q - plan.ell
        r = (1 << p) - p - 1
        nonpenny = self.state.consistent_ids()
        assert len(nonpenny) == 1
        if r >= p + 1:
            y = halving_y(p, r)
            pennies = self.state.penny_ids()
            assert y <= len(pennies), "first halving set fits within the real pennies"
            return Question.from_ids([nonpenny[0], *pennies[:y]]), f"HALV {p} {y}"
        return Question.from_ids(nonpenny), "END 0"

    def current_question(self) -> tuple[Question, str] | None:
        if self.done():
            return None
        plan = self.plan
        if plan.phase is Phase.BIT_SEARCH:
            return bit_question(plan, plan.bit_index), f"BIT {plan.bit_index}"
        if plan.phase is Phase.PENNY_INIT:
            return self._pre_padding_question()
        if plan.phase is Phase.HALVING:
            q = halving_set(plan, self.state)
            if self.strict:
                summ = self.state.summary()
                assert summ.weight == 1 << plan.p and self.state.j == plan.p
            return q, f"HALV {plan.p} {halving_y(plan.p, plan.r)}"
        if plan.phase is Phase.PENNY_SEARCH:
            return penny_search_question(plan, self.state), f"PSRCH {plan.penny_step}"
        if plan.phase is Phase.ENDGAME:
            return endgame_question(plan, self.state), f"END {plan.endgame_step}"
        raise AssertionError(f"unreachable phase {plan.phase}")

    def apply_answer(self, question: Question, answer: bool, tag: str) -> None:
        if self.plan.phase is Phase.PENNY_INIT:
            # the question being answered was previewed pre-padding; its
            # member set is identical either way
            pad_pennies(self.state, self.plan)
            self.tags.append(f"PAD {self.plan.r}")
        before = self.state.summary().weight if self.strict else None
        self.state.apply(question, answer)
        self.tags.append(tag)
        phase = self.plan.phase
        if self.strict and phase in (Phase.HALVING, Phase.PENNY_SEARCH, Phase.ENDGAME):
            # every post-padding answer halves the weight exactly
            assert self.state.summary().weight * 2 == before
        on_answer(self.plan, self.state, answer)
        self.asked += 1

    def play(self, responder: Responder) -> "GameResult":
        while True:
            nxt = self.current_question()
            if nxt is None:
                break
            question, tag = nxt
            ans = responder.answer(self.asked + 1, question, self.state)
            self.apply_answer(question, bool(ans), tag)
        return GameResult.from_driver(self)


@dataclass
class GameResult:
    """Outcome of one driven game.

    ``identified`` is the survivor when the game ended with exactly one
    real candidate (1 <= id <= n); None means the responder was caught
    inconsistent (survivor virtual or padding ghost, or nobody survived)
    or, for truncated budgets, that the questioner simply did not finish.
    """

    n: int
    budget: int
    won: bool
    identified: int | None
    questions_used: int
    state: GameState = field(repr=False)
    plan: StrategyPlan = field(repr=False)
    tags: list[str] = field(repr=False)

    @classmethod
    def from_driver(cls, driver: MachineQuestioner) -> "GameResult":
        state = driver.state
        won = state.is_won()
        identified: int | None = None
        if won:
            try:
                survivor = state.identified()
                identified = survivor if survivor <= driver.plan.n else None
            except InconsistentResponderError:
                identified = None
        return cls(
            n=driver.plan.n,
            budget=driver.budget,
            won=won,
            identified=identified,
            questions_used=driver.asked,
            state=state,
            plan=driver.plan,
            tags=driver.tags,
        )


def run_game(
    n: int, responder: Responder, budget: int | None = None, strict: bool | None = None
) -> GameResult:
    """Play the full strategy against a responder; at most q questions."""
    return MachineQuestioner(n, budget=budget, strict=strict).play(responder)
