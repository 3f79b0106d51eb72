"""Acceptance criteria, one test per criterion.

Each test prints a single PASS/FAIL line (visible with ``pytest -s``) and
enforces the criterion exactly: zero tolerance on values, the stated wall
clock targets on the timed sweeps.
"""

from __future__ import annotations

import time

import pytest

from liargame.bounds import gap_histogram, pelc_q1, strategy_bound, volume_winnable
from liargame.game import PadEntry
from liargame.oracle import Oracle
from liargame.responders import HonestResponder
from liargame.strategy import MachineQuestioner, Phase, run_game
from liargame.verify import (
    simulate_adversary,
    verify_exhaustive,
    verify_sampled,
    weight_conservation_sweep,
)


class Criterion:
    def __init__(self, name: str):
        self.name = name
        self.t0 = time.perf_counter()

    def finish(self, ok: bool, detail: str = "") -> None:
        elapsed = time.perf_counter() - self.t0
        status = "PASS" if ok else "FAIL"
        extra = f" ({detail})" if detail else ""
        print(f"{status}  {self.name}  [{elapsed:.2f}s]{extra}")
        assert ok, f"{self.name}{extra}"
        self.elapsed = elapsed


def test_small_values_table():
    c = Criterion("small-values table q1(2..17)")
    expected = [3, 5, 5, 6, 6, 6, 6, 7, 7, 7, 7, 7, 7, 7, 7, 8]
    t0 = time.perf_counter()
    got = [pelc_q1(n) for n in range(2, 18)]
    elapsed = time.perf_counter() - t0
    c.finish(got == expected and elapsed < 0.001, f"computed in {elapsed * 1e6:.0f}us")


def test_headline_million():
    c = Criterion("headline n=10^6: q=25, ell=20, boundary constants")
    ok = (
        pelc_q1(10**6) == 25
        and (strategy_bound(10**6).q, strategy_bound(10**6).ell) == (25, 20)
        and 2**24 // 25 == 671088
        and 2**25 // 26 == 1290555
        and 2**20 == 1048576
        and 671088 < 10**6 <= 1048576 < 1290555
        and volume_winnable(671088, 24)
        and not volume_winnable(671089, 24)
        and not volume_winnable(10**6, 24)
        and volume_winnable(10**6, 25)
    )
    c.finish(ok)


def test_oracle_equivalence_to_64():
    c = Criterion("oracle equivalence: brute force = formula for n <= 64")
    oracle = Oracle()
    mismatches = [n for n in range(1, 65) if oracle.q1(n) != pelc_q1(n)]
    elapsed = time.perf_counter() - c.t0
    c.finish(not mismatches and elapsed < 60.0, f"memo {oracle.memo_size()} states")


@pytest.fixture(scope="module")
def exhaustive_reports():
    t0 = time.perf_counter()
    reports = {n: verify_exhaustive(n, check_halving=True) for n in range(1, 257)}
    return reports, time.perf_counter() - t0


def test_exhaustive_soundness_to_256(exhaustive_reports):
    c = Criterion("exhaustive soundness: all n <= 256, all x, all lie slots")
    reports, elapsed = exhaustive_reports
    failures = sum(len(r.failures) for r in reports.values())
    over_budget = [n for n, r in reports.items() if r.q_used_max > r.q_budget]
    cases = sum(r.cases_run for r in reports.values())
    c.finish(
        failures == 0 and not over_budget and elapsed < 120.0,
        f"{cases} cases in {elapsed:.1f}s",
    )


@pytest.fixture(scope="module")
def sampled_report():
    t0 = time.perf_counter()
    report = verify_sampled(10**6, 10_000, seed=1, check_halving=True)
    return report, time.perf_counter() - t0


def test_sampled_million(sampled_report):
    c = Criterion("sampled soundness: 10^4 seeded cases at n=10^6 within 25 questions")
    r, elapsed = sampled_report
    c.finish(
        r.ok and r.q_used_max <= 25 and r.cases_run == 10_000 and elapsed < 30.0,
        f"max questions {r.q_used_max} in {elapsed:.1f}s",
    )


def test_weight_conservation_and_exact_halving(exhaustive_reports, sampled_report):
    c = Criterion("weight conservation on 10^5 random pairs; exact halving in verified games")
    violations = weight_conservation_sweep(100_000, seed=2024)
    halving_bad = sum(r.halving_violations for r in exhaustive_reports[0].values())
    halving_bad += sampled_report[0].halving_violations
    c.finish(violations == 0 and halving_bad == 0, "100000 pairs")


def test_adversary_lower_bound():
    c = Criterion("adversary: no questioner win whenever n(q+1) > 2^q; (1,0) unreachable")
    bad = []
    runs = 0
    for n in range(2, 65):
        for q in range(0, 11):
            if not volume_winnable(n, q):
                run = simulate_adversary(n, q)
                runs += 1
                if run.won or run.passed_one_zero or run.final_a + run.final_b < 2:
                    bad.append((n, q))
    big = simulate_adversary(10**6, 24)
    runs += 1
    if big.won or big.passed_one_zero:
        bad.append((10**6, 24))
    c.finish(not bad, f"{runs} runs")


def test_gap_claim_to_million():
    c = Criterion("gap: strategy bound within {0,1,2} of optimal for 2 <= n <= 10^6")
    hist = gap_histogram(2, 10**6)
    elapsed = time.perf_counter() - c.t0
    c.finish(
        set(hist) <= {0, 1, 2} and sum(hist.values()) == 10**6 - 1 and elapsed < 5.0,
        f"gaps {dict(sorted(hist.items()))}",
    )


def test_closing_trace_reproduced():
    c = Criterion("closing trace at n=10^6: (1,20) w=26, r=26, y=11, A4 has 4 pennies, No leaves 16")
    x = 123456
    driver = _drive_past_bits(x)
    after_bits = driver.state.summary()
    ok = (after_bits.a, after_bits.b) == (1, 20) and after_bits.weight == 26

    question, tag = driver.current_question()
    ok = ok and tag == "HALV 5 11"  # padding lands on r=26, hence y=11
    ok = ok and len(question.member_ids(driver.state.width)) == 12

    # Yes branch: the pad entry records r=26 at weight 32; A_4 is the
    # nonpenny plus 4 pennies
    yes_driver = _drive_past_bits(x)
    q5, t5 = yes_driver.current_question()
    yes_driver.apply_answer(q5, True, t5)
    entries = yes_driver.state.transcript
    pad = next(e for e in entries if isinstance(e, PadEntry))
    ok = ok and pad.count == 6 and pad.after.b == 26 and pad.after.weight == 32
    ok = ok and (yes_driver.plan.p, yes_driver.plan.r) == (4, 11)
    q4, t4 = yes_driver.current_question()
    ok = ok and t4 == "HALV 4 4" and len(q4.member_ids(yes_driver.state.width)) == 5

    # No branch: 16 pennies remain and binary search finds x
    no_driver = _drive_past_bits(x)
    qn, tn = no_driver.current_question()
    no_driver.apply_answer(qn, False, tn)
    summ = no_driver.state.summary()
    ok = ok and (summ.a, summ.b) == (0, 16)
    result = no_driver.play(HonestResponder(x))
    ok = ok and result.identified == x and result.questions_used <= 25
    c.finish(ok)


def _drive_past_bits(x: int) -> MachineQuestioner:
    driver = MachineQuestioner(10**6)
    responder = HonestResponder(x)
    while driver.plan.phase is Phase.BIT_SEARCH:
        question, tag = driver.current_question()
        driver.apply_answer(
            question, responder.answer(driver.asked + 1, question, driver.state), tag
        )
    return driver
