"""Honest and adversarial responders."""

from __future__ import annotations

import pytest

from liargame.bounds import pelc_q1, volume_winnable
from liargame.candidates import Question
from liargame.game import initial_state, state_from_populations
from liargame.responders import HonestResponder, WeightAdversary, adversarial_answer
from liargame.strategy import run_game
from liargame.verify import SplitMix64, simulate_adversary, simulate_adversary_random


def test_honest_membership_and_lie():
    r = HonestResponder(3)
    q = Question.from_ids([1, 3])
    state = initial_state(4, 5)
    assert r.answer(1, q, state) is True
    liar = HonestResponder(3, lie_at=2)
    assert liar.answer(1, q, state) is True
    assert liar.answer(2, q, state) is False
    with pytest.raises(ValueError):
        HonestResponder(0)
    with pytest.raises(ValueError):
        HonestResponder(3, lie_at=0)


def test_honest_secret_never_eliminated():
    rng = SplitMix64(40)
    for _ in range(80):
        n = 2 + rng.below(30)
        q = 1 + rng.below(8)
        x = 1 + rng.below(n)
        lie_at = (rng.below(q + 1)) or None
        responder = HonestResponder(x, lie_at)
        state = initial_state(n, q)
        idx = 0
        while state.j > 0:
            idx += 1
            members = [cid for cid in range(1, n + 1) if rng.below(2)]
            question = Question.from_ids(members)
            state.apply(question, responder.answer(idx, question, state))
            assert state.candidate_status(x) <= 1


def test_adversary_tie_on_the_closing_example_split():
    # state (1, 26) with five questions left: asking the nonpenny plus 11
    # pennies gives two children of weight 16;  the tie-break prefers the
    # answer that keeps the consistent candidate.
    state = state_from_populations(27, consistent=[1], pennies=range(2, 28), j=5)
    question = Question.from_ids([1, *range(2, 13)])
    yes, no = state.child_summaries(question)
    assert yes.weight == no.weight == 16
    assert adversarial_answer(state, question) is True  # larger a'


def test_adversary_symmetric_split_answers_no():
    state = state_from_populations(2, consistent=[1, 2], pennies=[], j=2)
    question = Question.from_ids([1])
    yes, no = state.child_summaries(question)
    assert (yes.a, yes.b) == (1, 1) and (no.a, no.b) == (1, 1)
    assert adversarial_answer(state, question) is False  # full tie: No


def test_adversary_picks_heavier_child():
    state = state_from_populations(8, consistent=[1, 2, 3, 4], pennies=[5, 6], j=3)
    # Yes keeps 1 consistent of 4: yes=(1, 2+3)=w 4+5... compute via summaries
    question = Question.from_ids([1, 5])
    yes, no = state.child_summaries(question)
    expected = yes.weight > no.weight
    assert adversarial_answer(state, question) is expected


def test_adversary_never_abandons_all_real_candidates():
    # one real penny vs many virtual pennies: weight alone would say No,
    # consistency forces Yes
    state = initial_state(1, 3)
    state.apply(Question.from_ids([]), True)  # the single candidate becomes a penny
    state.add_pennies(5)
    question = Question.from_ids([1])
    yes, no = state.child_summaries(question)
    assert no.weight > yes.weight
    assert adversarial_answer(state, question) is True


def test_losing_certificate_small_grid():
    # whenever n(q+1) > 2^q the adversary survives the strategy
    for n in range(2, 65):
        for q in range(0, 10):
            if not volume_winnable(n, q):
                run = simulate_adversary(n, q)
                assert not run.won, (n, q)
                assert run.final_a + run.final_b >= 2, (n, q)
                assert not run.passed_one_zero, (n, q)
                assert run.min_half_weight_ok, (n, q)


def test_losing_certificate_random_questioners():
    for n in (3, 5, 9, 33, 64):
        for q in range(0, 10):
            if not volume_winnable(n, q):
                for seed in (1, 2, 3):
                    run = simulate_adversary_random(n, q, seed)
                    assert not run.won, (n, q, seed)
                    assert not run.passed_one_zero, (n, q, seed)
                    assert run.min_half_weight_ok, (n, q, seed)


def test_adversary_loses_when_volume_allows():
    assert simulate_adversary(2, 3).won
    assert simulate_adversary(16, strategy_bound_q(16)).won


def strategy_bound_q(n):
    from liargame.bounds import strategy_bound

    return strategy_bound(n).q


def test_n3_cannot_be_won_in_two():
    run = simulate_adversary(3, 2)
    assert not run.won and run.final_a + run.final_b >= 2
    # matches the oracle's verdict
    from liargame.oracle import Oracle

    assert not Oracle().winnable(3, 0, 2)


def test_weight_adversary_vs_strategy_keeps_half_weight():
    adversary = WeightAdversary()
    result = run_game(10**6, adversary, budget=24)
    assert not result.won


def test_pelc_budget_games_stay_consistent():
    # against the adversary with the optimal budget the strategy can lose,
    # but the adversary's answers must remain consistent with some real id
    for n in (17, 33):
        budget = pelc_q1(n)
        result = run_game(n, WeightAdversary(), budget=budget)
        state = result.state
        real_support = (
            state.consistent.count_at_most(state.n) + state.penny.count_at_most(state.n)
        )
        assert real_support >= 1
