"""Closed-form question-count bounds for the one-lie game.

Three bounds live here, all evaluated in exact integer arithmetic
(cross-multiplied comparisons; the only logarithm is a bit-length):

* ``pelc_q1``: the exact optimum q1(n).  For even n it is the least q with
  n(q+1) <= 2^q; for odd n the least q with n(q+1) <= 2^q - q + 1.
* ``strategy_bound``: the budget sufficient for the constructive
  binary-search-plus-halving questioner: pad n to N = 2^ceil(log2 n), then
  take the least q with N(q+1) <= 2^q.  Never more than two above optimal.
* ``volume_winnable``: the necessary counting condition n(q+1) <= 2^q; when
  it fails the responder provably survives q questions.
"""

from __future__ import annotations

from dataclasses import dataclass

# Largest question count the closed-form search will consider.  Covers
# n up to ~2^51 with margin; past it we refuse rather than loop on.
MAX_Q = 57


def ceil_log2(n: int) -> int:
    """Smallest k with n <= 2^k, by bit length (no floating point)."""
    if n < 1:
        raise ValueError("n must be positive")
    return (n - 1).bit_length()


def _check_n(n: int) -> None:
    if n < 1:
        raise ValueError("n must be positive")


def _pelc_holds(n: int, q: int) -> bool:
    if n % 2 == 0:
        return n * (q + 1) <= (1 << q)
    return n * (q + 1) <= (1 << q) - q + 1


def pelc_q1(n: int) -> int:
    """Exact optimal number of questions for the one-lie game on 1..n."""
    _check_n(n)
    for q in range(MAX_Q + 1):
        if _pelc_holds(n, q):
            return q
    raise OverflowError(f"n={n} needs more than {MAX_Q} questions (past the supported cap)")


@dataclass(frozen=True)
class StrategyBound:
    """Sufficient budget for the constructive strategy: q questions over
    the padded space 2^ell."""

    n: int
    q: int
    ell: int


def strategy_bound(n: int) -> StrategyBound:
    _check_n(n)
    ell = ceil_log2(n)
    pow_ell = 1 << ell
    for q in range(MAX_Q + 1):
        if pow_ell * (q + 1) <= (1 << q):
            return StrategyBound(n, q, ell)
    raise OverflowError(f"n={n} needs more than {MAX_Q} questions (past the supported cap)")


def volume_winnable(n: int, q: int) -> bool:
    """Necessary condition for winning with q questions: n(q+1) <= 2^q."""
    _check_n(n)
    if q < 0:
        raise ValueError("q must be non-negative")
    if q > MAX_Q:
        raise OverflowError(f"q={q} is past the supported cap {MAX_Q}")
    return n * (q + 1) <= (1 << q)


def gap(n: int) -> int:
    """strategy_bound(n).q - pelc_q1(n); always 0, 1 or 2."""
    if n < 2:
        raise ValueError("gap is defined for n >= 2")
    return strategy_bound(n).q - pelc_q1(n)


def gap_histogram(lo: int, hi: int) -> dict[int, int]:
    """Gap value counts over lo..hi inclusive.

    Sweeps n ascending while advancing three minimal-q pointers (even-n
    and odd-n exact bounds, plus the strategy bound per ell).  Both bounds
    are non-decreasing in n, so re-establishing the failed inequality at
    each bump gives exactly the per-n minimum without re-searching from
    zero; spot minimality is asserted whenever a pointer moves.
    """
    if lo < 2 or hi < lo:
        raise ValueError("need 2 <= lo <= hi")
    hist: dict[int, int] = {}
    q_even = pelc_q1(lo if lo % 2 == 0 else lo + 1)
    q_odd = pelc_q1(lo if lo % 2 == 1 else lo + 1)
    ell = ceil_log2(lo)
    q_strat = strategy_bound(lo).q
    for n in range(lo, hi + 1):
        if n % 2 == 0:
            while not _pelc_holds(n, q_even):
                q_even += 1
            exact = q_even
        else:
            while not _pelc_holds(n, q_odd):
                q_odd += 1
            exact = q_odd
        assert exact == 0 or not _pelc_holds(n, exact - 1)
        new_ell = ceil_log2(n)
        if new_ell != ell:
            ell = new_ell
            q_strat = strategy_bound(n).q
        g = q_strat - exact
        hist[g] = hist.get(g, 0) + 1
    return hist


def bound_table_lines(lo: int, hi: int, sep: str = "\t") -> list[str]:
    """Rows of n, exact bound, strategy bound, ell and gap for a range."""
    if lo < 2 or hi < lo:
        raise ValueError("need 2 <= lo <= hi")
    lines = [sep.join(("n", "pelc_q1", "strategy_q", "ell", "gap"))]
    for n in range(lo, hi + 1):
        sb = strategy_bound(n)
        exact = pelc_q1(n)
        lines.append(sep.join(str(v) for v in (n, exact, sb.q, sb.ell, sb.q - exact)))
    return lines
