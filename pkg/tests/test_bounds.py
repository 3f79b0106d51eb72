"""Closed-form bounds: exact values, minimality, monotonicity, the gap."""

from __future__ import annotations

import pytest

from liargame.bounds import (
    MAX_Q,
    bound_table_lines,
    ceil_log2,
    gap,
    gap_histogram,
    pelc_q1,
    strategy_bound,
    volume_winnable,
)

SMALL_VALUES = {2: 3, 3: 5, 4: 5, 5: 6, 6: 6, 7: 6, 8: 6,
                9: 7, 10: 7, 11: 7, 12: 7, 13: 7, 14: 7, 15: 7, 16: 7, 17: 8}


def test_small_values_table():
    for n, expected in SMALL_VALUES.items():
        assert pelc_q1(n) == expected, n


def test_headline_values():
    assert pelc_q1(10**6) == 25
    sb = strategy_bound(10**6)
    assert (sb.q, sb.ell) == (25, 20)


def test_boundary_constants():
    assert 2**24 // 25 == 671088
    assert 2**25 // 26 == 1290555
    assert 2**20 == 1048576
    assert 671088 < 10**6 <= 1048576 < 1290555
    # the same boundaries via the volume predicate
    assert volume_winnable(671088, 24)
    assert not volume_winnable(671089, 24)
    assert volume_winnable(1290555, 25)
    assert not volume_winnable(1290556, 25)
    assert not volume_winnable(10**6, 24)
    assert volume_winnable(10**6, 25)
    assert volume_winnable(1, 0)


def test_strategy_bound_examples():
    assert strategy_bound(17) == strategy_bound(17).__class__(17, 9, 5)
    assert (strategy_bound(4).q, strategy_bound(4).ell) == (5, 2)
    assert strategy_bound(1).q == 0
    assert pelc_q1(1) == 0


def test_gap_examples():
    assert gap(10**6) == 0
    assert gap(17) == 1
    assert gap(2**20) == 0
    with pytest.raises(ValueError):
        gap(1)


def test_minimality_and_monotonicity_sweep():
    prev_exact = prev_strat = 0
    for n in range(1, 4097):
        exact = pelc_q1(n)
        strat = strategy_bound(n).q
        assert exact >= prev_exact and strat >= prev_strat, n
        prev_exact, prev_strat = exact, strat
        # minimality: the defining inequality fails one question earlier
        if exact > 0:
            if n % 2 == 0:
                assert n * exact > 2 ** (exact - 1)
            else:
                assert n * exact > 2 ** (exact - 1) - (exact - 1) + 1
        if strat > 0:
            ell = ceil_log2(n)
            assert (1 << ell) * strat > 2 ** (strat - 1)
        assert strat >= exact


def test_even_n_matches_volume_bound():
    for n in range(2, 2048, 2):
        q = pelc_q1(n)
        assert volume_winnable(n, q)
        assert q == 0 or not volume_winnable(n, q - 1)


def test_gap_histogram_small_range():
    hist = gap_histogram(2, 4096)
    assert set(hist) <= {0, 1, 2}
    assert sum(hist.values()) == 4095
    # spot values agree with direct computation
    direct = {}
    for n in range(2, 4097):
        direct[gap(n)] = direct.get(gap(n), 0) + 1
    assert hist == direct


def test_ceil_log2():
    assert [ceil_log2(n) for n in (1, 2, 3, 4, 5, 8, 9)] == [0, 1, 2, 2, 3, 3, 4]
    with pytest.raises(ValueError):
        ceil_log2(0)


def test_cap_is_reported():
    with pytest.raises(OverflowError):
        pelc_q1(10**18)
    with pytest.raises(OverflowError):
        strategy_bound(10**18)
    with pytest.raises(OverflowError):
        volume_winnable(5, MAX_Q + 1)


def test_table_lines():
    lines = bound_table_lines(2, 17)
    assert lines[0].split("\t") == ["n", "pelc_q1", "strategy_q", "ell", "gap"]
    rows = {int(parts[0]): parts for parts in (l.split("\t") for l in lines[1:])}
    assert int(rows[17][1]) == 8 and int(rows[17][2]) == 9 and int(rows[17][4]) == 1
    for n, expected in SMALL_VALUES.items():
        assert int(rows[n][1]) == expected
