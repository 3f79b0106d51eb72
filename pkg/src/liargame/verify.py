"""Verification harness: exhaustive and sampled soundness runs, adversary
simulations, and the randomized weight-conservation sweep.

Sampling uses SplitMix64, a tiny explicitly-specified generator, so
reports are bit-identical across platforms and Python versions.  Case
generation is documented in the README: for each sample, draw x uniformly
from 1..n, then a lie slot uniformly from {none, 1..q}.

Cases are independent, so exhaustive sweeps can shard by secret across
processes; shards are merged in case order, which keeps reports identical
for any worker count.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from multiprocessing import Pool

from .bounds import strategy_bound
from .candidates import Question, iter_mask_ids
from .game import GameState, PadEntry, QuestionEntry, state_from_populations
from .responders import HonestResponder, WeightAdversary
from .strategy import GameResult, MachineQuestioner, run_game
from .transcript import to_file_text


class CaseBudgetError(Exception):
    """Raised instead of silently running an enormous sweep."""

    def __init__(self, cases: int, budget: int) -> None:
        super().__init__(f"{cases} cases exceed the budget of {budget}; pass full=True to run anyway")
        self.cases = cases
        self.budget = budget


MASK64 = (1 << 64) - 1


class SplitMix64:
    """Deterministic 64-bit generator (SplitMix64, standard constants)."""

    __slots__ = ("state",)

    def __init__(self, seed: int) -> None:
        self.state = seed & MASK64

    def next64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        """Uniform integer in [0, bound), unbiased by rejection."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        limit = (MASK64 + 1) - ((MASK64 + 1) % bound)
        while True:
            v = self.next64()
            if v < limit:
                return v % bound


@dataclass(frozen=True)
class CaseFailure:
    x: int
    lie_at: int | None
    reason: str
    transcript: str


@dataclass
class VerificationReport:
    n: int
    q_budget: int
    cases_run: int
    q_used_max: int
    failures: list[CaseFailure] = field(default_factory=list)
    halving_violations: int = 0

    @property
    def ok(self) -> bool:
        return not self.failures and self.halving_violations == 0

    def lines(self) -> list[str]:
        out = [
            f"n={self.n} budget={self.q_budget} cases={self.cases_run} "
            f"max_questions={self.q_used_max} failures={len(self.failures)} "
            f"halving_violations={self.halving_violations}"
        ]
        for f in self.failures:
            out.append(f"FAIL x={f.x} lie_at={f.lie_at or 0}: {f.reason}")
        return out


def _halving_ok(result: GameResult) -> bool:
    """Exact halving of the weight at every step after padding."""
    entries = result.state.transcript
    pad_at = next((i for i, e in enumerate(entries) if isinstance(e, PadEntry)), None)
    if pad_at is None:
        return True
    w = entries[pad_at].after.weight
    for entry in entries[pad_at + 1 :]:
        if not isinstance(entry, QuestionEntry):
            return False
        if entry.after.weight * 2 != w:
            return False
        w = entry.after.weight
    return True


def _run_case(n: int, q: int, x: int, lie_at: int | None, check_halving: bool) -> tuple[int, str | None, bool]:
    """Returns (questions_used, failure reason or None, halving ok)."""
    result = run_game(n, HonestResponder(x, lie_at))
    reason = None
    if result.identified != x:
        reason = f"identified {result.identified!r} instead of {x}"
    elif result.questions_used > q:
        reason = f"used {result.questions_used} questions, budget {q}"
    halving = _halving_ok(result) if check_halving else True
    if reason is not None:
        reason += "\n" + to_file_text(result.plan.padded_n, result.budget, result.state.transcript, result.tags)
    return result.questions_used, reason, halving


def _case_transcript(n: int, x: int, lie_at: int | None) -> tuple[GameResult, str]:
    result = run_game(n, HonestResponder(x, lie_at))
    text = to_file_text(result.plan.padded_n, result.budget, result.state.transcript, result.tags)
    return result, text


def _exhaustive_shard(args: tuple[int, int, int, int, bool]) -> tuple[int, list[tuple[int, int]], int]:
    n, q, x_lo, x_hi, check_halving = args
    q_used_max = 0
    bad: list[tuple[int, int]] = []  # (x, lie slot), 0 means no lie
    halving_violations = 0
    for x in range(x_lo, x_hi):
        for slot in range(q + 1):
            lie_at = slot or None
            used, reason, halving = _run_case(n, q, x, lie_at, check_halving)
            q_used_max = max(q_used_max, used)
            if reason is not None:
                bad.append((x, slot))
            if not halving:
                halving_violations += 1
    return q_used_max, bad, halving_violations


def verify_exhaustive(
    n: int,
    max_cases: int = 1_000_000,
    full: bool = False,
    check_halving: bool = True,
    workers: int = 1,
    progress=None,
) -> VerificationReport:
    """Every secret crossed with every lie position (including none)."""
    q = strategy_bound(n).q
    total = n * (q + 1)
    if not full and total > max_cases:
        raise CaseBudgetError(total, max_cases)
    report = VerificationReport(n=n, q_budget=q, cases_run=total, q_used_max=0)
    shard_size = max(1, min(n, 4096 // (q + 1) or 1))
    shards = [
        (n, q, lo, min(lo + shard_size, n + 1), check_halving)
        for lo in range(1, n + 1, shard_size)
    ]

    def absorb(shard_args, outcome):
        used_max, bad, halving_violations = outcome
        report.q_used_max = max(report.q_used_max, used_max)
        report.halving_violations += halving_violations
        for x, slot in bad:
            _, text = _case_transcript(n, x, slot or None)
            report.failures.append(
                CaseFailure(x, slot or None, "replayed failure", text)
            )

    done = 0
    if workers > 1:
        with Pool(workers) as pool:
            for shard_args, outcome in zip(shards, pool.imap(_exhaustive_shard, shards)):
                absorb(shard_args, outcome)
                done += (shard_args[3] - shard_args[2]) * (q + 1)
                if progress:
                    progress(done, total)
    else:
        for shard_args in shards:
            absorb(shard_args, _exhaustive_shard(shard_args))
            done += (shard_args[3] - shard_args[2]) * (q + 1)
            if progress:
                progress(done, total)
    # re-derive the precise failure reasons (kept out of the shard payload)
    fixed: list[CaseFailure] = []
    for f in report.failures:
        used, reason, _ = _run_case(n, q, f.x, f.lie_at, check_halving)
        fixed.append(CaseFailure(f.x, f.lie_at, reason or "unreproducible", f.transcript))
    report.failures = fixed
    return report


def verify_sampled(
    n: int, samples: int, seed: int, check_halving: bool = True, progress=None
) -> VerificationReport:
    """Seeded uniform (x, lie slot) samples; identical seeds, identical reports."""
    if samples < 1:
        raise ValueError("need at least one sample")
    q = strategy_bound(n).q
    rng = SplitMix64(seed)
    report = VerificationReport(n=n, q_budget=q, cases_run=samples, q_used_max=0)
    for idx in range(samples):
        x = 1 + rng.below(n)
        slot = rng.below(q + 1)
        lie_at = slot or None
        used, reason, halving = _run_case(n, q, x, lie_at, check_halving)
        report.q_used_max = max(report.q_used_max, used)
        if reason is not None:
            _, text = _case_transcript(n, x, lie_at)
            report.failures.append(CaseFailure(x, lie_at, reason.splitlines()[0], text))
        if not halving:
            report.halving_violations += 1
        if progress and (idx + 1) % 1000 == 0:
            progress(idx + 1, samples)
    return report


@dataclass
class AdversaryRun:
    n: int
    q: int
    won: bool
    final_a: int
    final_b: int
    questions_asked: int
    passed_one_zero: bool
    min_half_weight_ok: bool
    transcript_text: str

    def line(self) -> str:
        outcome = "questioner wins" if self.won else "questioner does not win"
        return (
            f"n={self.n} q={self.q}: {outcome}; final state ({self.final_a},{self.final_b}) "
            f"after {self.questions_asked} questions"
        )


def simulate_adversary(n: int, q: int) -> AdversaryRun:
    """The strategy (truncated to q questions) against the weight adversary."""
    adversary = WeightAdversary()
    driver = MachineQuestioner(n, budget=q)
    passed_one_zero = False
    half_ok = True
    while True:
        nxt = driver.current_question()
        if nxt is None:
            break
        question, tag = nxt
        parent = driver.state.summary().weight
        ans = adversary.answer(driver.asked + 1, question, driver.state)
        driver.apply_answer(question, ans, tag)
        child = driver.state.summary().weight
        if 2 * child < parent:
            half_ok = False
        summ = driver.state.summary()
        if (summ.a, summ.b) == (1, 0):
            passed_one_zero = True
    result = GameResult.from_driver(driver)
    summ = driver.state.summary()
    text = to_file_text(driver.plan.padded_n, driver.budget, driver.state.transcript, driver.tags)
    return AdversaryRun(
        n=n,
        q=q,
        won=result.won,
        final_a=summ.a,
        final_b=summ.b,
        questions_asked=result.questions_used,
        passed_one_zero=passed_one_zero,
        min_half_weight_ok=half_ok,
        transcript_text=text,
    )


def simulate_adversary_random(n: int, q: int, seed: int) -> AdversaryRun:
    """Random-subset questioner against the weight adversary (no padding)."""
    adversary = WeightAdversary()
    state = GameState(n, q)
    passed_one_zero = False
    half_ok = True
    rng = SplitMix64(seed)
    asked = 0
    while state.j > 0 and not state.is_won():
        mask = rng.next64()
        for _ in range(max(0, (n - 1) // 64)):
            mask = (mask << 64) | rng.next64()
        question = Question.from_ids(iter_mask_ids(mask & ((1 << n) - 1)))
        parent = state.summary().weight
        ans = adversary.answer(asked + 1, question, state)
        state.apply(question, ans)
        asked += 1
        child = state.summary().weight
        if 2 * child < parent:
            half_ok = False
        summ = state.summary()
        if (summ.a, summ.b) == (1, 0):
            passed_one_zero = True
    summ = state.summary()
    return AdversaryRun(
        n=n,
        q=q,
        won=state.is_won(),
        final_a=summ.a,
        final_b=summ.b,
        questions_asked=asked,
        passed_one_zero=passed_one_zero,
        min_half_weight_ok=half_ok,
        transcript_text=to_file_text(n, q, state.transcript),
    )


def weight_conservation_sweep(cases: int, seed: int, max_n: int = 64, max_j: int = 12) -> int:
    """Random (state, question) pairs; returns how many violate exact
    conservation of weight across the two possible answers."""
    rng = SplitMix64(seed)
    violations = 0
    for _ in range(cases):
        n = 2 + rng.below(max_n - 1)
        universe_mask = (1 << n) - 1
        consistent = rng.next64() & universe_mask
        penny = rng.next64() & universe_mask & (universe_mask ^ consistent)
        j = 1 + rng.below(max_j)
        state = state_from_populations(
            n, iter_mask_ids(consistent), iter_mask_ids(penny), j
        )
        question = Question.from_ids(iter_mask_ids(rng.next64() & universe_mask))
        parent = state.summary().weight
        yes, no = state.child_summaries(question)
        if yes.weight + no.weight != parent:
            violations += 1
    return violations
