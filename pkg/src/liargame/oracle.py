"""Independent exact solver: memoized minimax over aggregate states.

Optimal play in the one-lie game depends only on the aggregate state
(a, b, j): a question is characterized, up to relabeling, by how many
consistent candidates (i of a) and pennies (k of b) it contains, every
such split is realizable by an actual id set, and the update rule maps
counts to counts.  So the questioner wins from (a, b) with j questions
remaining iff

    a + b <= 1, or j >= 1 and some 0 <= i <= a, 0 <= k <= b has both
    children winnable:  yes -> (i, k + a - i),  no -> (a - i, b - k + i),

each with j - 1 remaining.  This brute-force recursion is the module the
closed-form bounds are validated against; it shares no code with them.

Two admissible prunings keep it fast without affecting exactness: a state
whose weight (j+1)a + b exceeds 2^j is lost (the responder can always keep
the heavier child, so weight per remaining question can at best halve),
and consequently only splits leaving both children within 2^(j-1) can ever
win, which narrows k to an interval per i.  A pruned-versus-unpruned
equivalence sweep in the test suite backs the first claim empirically.
"""

from __future__ import annotations

import os
import struct

_MEMO_MAGIC = b"LIARGAME-ORACLE-v1\n"
_RECORD = struct.Struct("<IIIB")


class OracleCapError(Exception):
    """The requested state is past the configured resource guard."""


class Oracle:
    """Winnability solver with a persistent memo table.

    The memo maps (a, b, j) to a bool and entries are immutable once
    written, so lookups tolerate concurrent readers and insertion order
    cannot change any result; single-threaded runs are bit-identical.
    Caps on a+b and j guard against accidentally unbounded recursions and
    raise OracleCapError instead of grinding.
    """

    def __init__(self, max_candidates: int = 512, max_questions: int = 40) -> None:
        self.max_candidates = max_candidates
        self.max_questions = max_questions
        self._memo: dict[tuple[int, int, int], bool] = {}

    def winnable(self, a: int, b: int, j: int) -> bool:
        if a < 0 or b < 0 or j < 0:
            raise ValueError("a, b, j must be non-negative")
        if a + b > self.max_candidates:
            raise OracleCapError(
                f"a+b={a + b} exceeds the configured cap {self.max_candidates}"
            )
        if j > self.max_questions:
            raise OracleCapError(f"j={j} exceeds the configured cap {self.max_questions}")
        return self._win(a, b, j)

    def _win(self, a: int, b: int, j: int) -> bool:
        if a + b <= 1:
            return True
        if j == 0:
            return False
        w = (j + 1) * a + b
        half = 1 << (j - 1)
        if w > 2 * half:
            return False  # weight can at best halve per question
        key = (a, b, j)
        cached = self._memo.get(key)
        if cached is not None:
            return cached
        result = False
        jm1 = j - 1
        lo = w - half
        # yes-child weight is (j-1)i + a + k; keep it (and thus the no
        # child) within [w - 2^(j-1), 2^(j-1)].
        for i in range(a + 1):
            base = jm1 * i + a
            k_lo = max(0, lo - base)
            k_hi = min(b, half - base)
            if k_lo > k_hi:
                if base > half:
                    break  # base only grows with i
                continue
            # try balanced splits first: the winning k is usually central
            mid = (k_lo + k_hi) // 2
            order = [mid]
            for d in range(1, k_hi - k_lo + 1):
                if mid + d <= k_hi:
                    order.append(mid + d)
                if mid - d >= k_lo:
                    order.append(mid - d)
            for k in order:
                if self._win(i, k + a - i, jm1) and self._win(a - i, b - k + i, jm1):
                    result = True
                    break
            if result:
                break
        self._memo[key] = result
        return result

    def q1(self, n: int) -> int:
        """Minimal j with (n, 0) winnable in j questions, by ascending scan."""
        if n < 1:
            raise ValueError("n must be positive")
        j = 0
        while n * (j + 1) > (1 << j):  # below the counting bound: hopeless
            j += 1
        while not self.winnable(n, 0, j):
            j += 1
        return j

    # -- memo persistence ------------------------------------------------

    def memo_size(self) -> int:
        return len(self._memo)

    def save_memo(self, path: str) -> int:
        """Write the memo table; returns the number of records."""
        items = sorted(self._memo.items())
        tmp = f"{path}.tmp"
        with open(tmp, "wb") as fh:
            fh.write(_MEMO_MAGIC)
            fh.write(struct.pack("<Q", len(items)))
            for (a, b, j), win in items:
                fh.write(_RECORD.pack(a, b, j, 1 if win else 0))
        os.replace(tmp, path)
        return len(items)

    def load_memo(self, path: str) -> int:
        """Merge records from a saved table; returns the number loaded."""
        with open(path, "rb") as fh:
            if fh.read(len(_MEMO_MAGIC)) != _MEMO_MAGIC:
                raise ValueError(f"{path} is not an oracle memo file")
            (count,) = struct.unpack("<Q", fh.read(8))
            data = fh.read(count * _RECORD.size)
        if len(data) != count * _RECORD.size:
            raise ValueError(f"{path} is truncated")
        for off in range(0, len(data), _RECORD.size):
            a, b, j, win = _RECORD.unpack_from(data, off)
            self._memo[(a, b, j)] = bool(win)
        return count


def winnable(a: int, b: int, j: int, oracle: Oracle | None = None) -> bool:
    return (oracle or Oracle()).winnable(a, b, j)

def oracle_q1(n: int, oracle: Oracle | None = None) -> int:
    return (oracle or Oracle()).q1(n)
