"""Candidate bookkeeping for the liar game: questions and candidate sets.

A game tracks, for every candidate id, whether it has contradicted zero
answers (consistent), exactly one (a penny), or at least two (eliminated).
The consistent and penny populations are plain sets of ids, but games are
played on universes ranging from a handful of ids up to 2^20, so one
concrete set representation cannot be fast everywhere.  This module
provides three interchangeable representations behind one interface:

``MaskSet``
    An int used as a bitmask (bit ``id - 1``).  The default for small
    universes and the fallback for large irregular sets.  Negative-int
    operators (``~``, unary ``-``) are never used on masks: on multi-word
    ints CPython's negative paths are an order of magnitude slower, so
    complements are taken with XOR against a known superset.

``IdSet``
    A frozenset of ids, for sparse sets over huge universes (for example
    the couple dozen pennies that survive a 2^20-wide binary search).

``CubeSet``
    A disjoint union of subcubes of a power-of-two code space: the states
    arising from bit questions.  Splitting a cube on a bit question is
    O(1), which is what makes large-scale simulation cheap.

Sets convert between representations automatically; every operation is
equivalence-tested against a frozenset reference model in the test suite.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Iterator

# Sparse sets switch to IdSet at or below this many members; cube states
# materialize through it when their structure is broken by an irregular
# question.
IDS_MAX = 4096

# Universes at or below this width always use plain int masks.
SMALL_UNIVERSE = 1 << 16

# Only needed so enumeration helpers cannot be pointed at astronomically
# large sets by accident.
ENUMERATION_LIMIT = 1 << 22


@lru_cache(maxsize=512)
def bit_question_mask(width: int, i: int) -> int:
    """Mask of ids 1..width whose zero-based code has bit i set."""
    blk = 1 << i
    period = blk << 1
    if blk >= width:
        return 0
    unit = ((1 << blk) - 1) << blk
    reps = (width + period - 1) // period
    mask = unit * (((1 << (period * reps)) - 1) // ((1 << period) - 1))
    return mask & ((1 << width) - 1)


def mask_from_ids(ids: Iterable[int], width: int) -> int:
    """Build a bitmask from candidate ids without per-bit big-int shifts."""
    buf = bytearray((width + 7) >> 3)
    for cid in ids:
        p = cid - 1
        buf[p >> 3] |= 1 << (p & 7)
    return int.from_bytes(buf, "little")


def iter_mask_ids(mask: int) -> Iterator[int]:
    """Yield ids of set bits, ascending.  Cost scales with mask width."""
    s = mask
    while s:
        t = s & (s - 1)  # clears lowest set bit; stays on the positive path
        yield (s ^ t).bit_length()
        s = t


class Question:
    """A Yes/No membership question: is the secret in this id set?

    Three shapes, kept distinct because they serialize compactly and
    because bit questions admit O(1) cube splits:

    * ``bit i``: ids whose zero-based code (id - 1) has bit i set
    * ``range lo..hi``: the inclusive id interval
    * explicit id set
    """

    __slots__ = ("kind", "bit", "lo", "hi", "ids", "_masks")

    def __init__(self) -> None:
        raise TypeError("use Question.from_bit / from_range / from_ids")

    @classmethod
    def _new(cls) -> "Question":
        q = object.__new__(cls)
        q._masks = {}
        return q

    @classmethod
    def from_bit(cls, i: int) -> "Question":
        if i < 0 or i > 63:
            raise ValueError(f"bit index out of range: {i}")
        q = cls._new()
        q.kind, q.bit, q.lo, q.hi, q.ids = "bit", i, None, None, None
        return q

    @classmethod
    def from_range(cls, lo: int, hi: int) -> "Question":
        if lo < 1 or hi < lo:
            raise ValueError(f"bad id range: {lo}-{hi}")
        q = cls._new()
        q.kind, q.bit, q.lo, q.hi, q.ids = "range", None, lo, hi, None
        return q

    @classmethod
    def from_ids(cls, ids: Iterable[int]) -> "Question":
        fs = frozenset(ids)
        if any(cid < 1 for cid in fs):
            raise ValueError("candidate ids are positive")
        q = cls._new()
        q.kind, q.bit, q.lo, q.hi, q.ids = "ids", None, None, None, fs
        return q

    @property
    def label(self) -> str | None:
        """Compact shorthand for transcripts, None for explicit id sets."""
        if self.kind == "bit":
            return f"bit:{self.bit}"
        if self.kind == "range":
            return f"range:{self.lo}-{self.hi}"
        return None

    def contains_id(self, cid: int) -> bool:
        if self.kind == "bit":
            return ((cid - 1) >> self.bit) & 1 == 1
        if self.kind == "range":
            return self.lo <= cid <= self.hi
        return cid in self.ids

    def max_id(self) -> int | None:
        """Largest id the question can reference; None means unbounded."""
        if self.kind == "ids":
            return max(self.ids) if self.ids else 0
        if self.kind == "range":
            return self.hi
        return None  # bit questions are valid over any universe

    def mask(self, width: int) -> int:
        m = self._masks.get(width)
        if m is None:
            if self.kind == "bit":
                m = bit_question_mask(width, self.bit)
            elif self.kind == "range":
                hi = min(self.hi, width)
                m = (1 << hi) - (1 << (self.lo - 1)) if hi >= self.lo else 0
            else:
                m = mask_from_ids(self.ids, width)
            self._masks[width] = m
        return m

    def member_ids(self, width: int) -> list[int]:
        """Explicit member list within 1..width, ascending."""
        if self.kind == "ids":
            return sorted(cid for cid in self.ids if cid <= width)
        if self.kind == "range":
            return list(range(self.lo, min(self.hi, width) + 1))
        return list(iter_mask_ids(self.mask(width)))

    def __repr__(self) -> str:
        if self.kind == "ids":
            return f"Question(ids={sorted(self.ids)!r})"
        return f"Question({self.label})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Question):
            return NotImplemented
        return (self.kind, self.bit, self.lo, self.hi, self.ids) == (
            other.kind,
            other.bit,
            other.lo,
            other.hi,
            other.ids,
        )

    def __hash__(self) -> int:
        return hash((self.kind, self.bit, self.lo, self.hi, self.ids))


class CandidateSet:
    """Interface shared by the three set representations."""

    __slots__ = ()

    def count(self) -> int:
        raise NotImplementedError

    def count_at_most(self, limit: int) -> int:
        """Members with id <= limit (used to count non-virtual survivors)."""
        raise NotImplementedError

    def contains(self, cid: int) -> bool:
        raise NotImplementedError

    def split(self, question: Question, width: int) -> tuple["CandidateSet", "CandidateSet"]:
        """Partition into (members, nonmembers) of the question set."""
        raise NotImplementedError

    def ids(self) -> list[int]:
        """All member ids, ascending.  Refuses absurdly large sets."""
        raise NotImplementedError

    def to_mask(self, width: int) -> int:
        raise NotImplementedError

    def is_empty(self) -> bool:
        return self.count() == 0


class MaskSet(CandidateSet):
    __slots__ = ("mask", "_count")

    def __init__(self, mask: int) -> None:
        self.mask = mask
        self._count: int | None = None

    def count(self) -> int:
        if self._count is None:
            self._count = self.mask.bit_count()
        return self._count

    def count_at_most(self, limit: int) -> int:
        return (self.mask & ((1 << limit) - 1)).bit_count()

    def contains(self, cid: int) -> bool:
        return (self.mask >> (cid - 1)) & 1 == 1

    def split(self, question: Question, width: int) -> tuple[CandidateSet, CandidateSet]:
        qm = question.mask(width)
        inside = self.mask & qm
        return MaskSet(inside), MaskSet(self.mask ^ inside)

    def ids(self) -> list[int]:
        if self.count() > ENUMERATION_LIMIT:
            raise ValueError("refusing to enumerate a set this large")
        return list(iter_mask_ids(self.mask))

    def to_mask(self, width: int) -> int:
        return self.mask

    def __repr__(self) -> str:
        return f"MaskSet(count={self.count()})"


class IdSet(CandidateSet):
    __slots__ = ("members",)

    def __init__(self, members: frozenset[int]) -> None:
        self.members = members

    def count(self) -> int:
        return len(self.members)

    def count_at_most(self, limit: int) -> int:
        return sum(1 for cid in self.members if cid <= limit)

    def contains(self, cid: int) -> bool:
        return cid in self.members

    def split(self, question: Question, width: int) -> tuple[CandidateSet, CandidateSet]:
        if question.kind == "ids" and len(question.ids) < len(self.members):
            inside = self.members & question.ids
        else:
            inside = frozenset(c for c in self.members if question.contains_id(c))
        return IdSet(inside), IdSet(self.members - inside)

    def ids(self) -> list[int]:
        return sorted(self.members)

    def to_mask(self, width: int) -> int:
        return mask_from_ids(self.members, width)

    def __repr__(self) -> str:
        return f"IdSet(count={len(self.members)})"


def _cube_mask(care: int, val: int, bits: int) -> int:
    # Indicator of {p < 2^bits : p & care == val}, built by doubling.
    m = 1
    span = 1
    for b in range(bits):
        if (care >> b) & 1:
            if (val >> b) & 1:
                m <<= span
        else:
            m |= m << span
        span <<= 1
    return m


class CubeSet(CandidateSet):
    """Disjoint subcubes of a 2^bits code space (codes are id - 1).

    A cube (care, val) holds the codes p with ``p & care == val``.  States
    produced by bit questions are exactly such unions: the consistent set
    is one cube and each penny group (candidates that contradicted one
    specific bit answer) is another.  Disjointness is a construction
    invariant, so counts are plain sums.
    """

    __slots__ = ("cubes", "bits", "_count")

    def __init__(self, cubes: tuple[tuple[int, int], ...], bits: int) -> None:
        self.cubes = cubes
        self.bits = bits
        self._count: int | None = None

    @classmethod
    def full(cls, bits: int) -> "CubeSet":
        return cls(((0, 0),), bits)

    @classmethod
    def empty(cls, bits: int) -> "CubeSet":
        return cls((), bits)

    def count(self) -> int:
        if self._count is None:
            b = self.bits
            self._count = sum(1 << (b - care.bit_count()) for care, _ in self.cubes)
        return self._count

    def count_at_most(self, limit: int) -> int:
        if limit >= (1 << self.bits):
            return self.count()
        return self._materialize().count_at_most(limit)

    def contains(self, cid: int) -> bool:
        p = cid - 1
        if p >= (1 << self.bits):
            return False
        return any(p & care == val for care, val in self.cubes)

    def split(self, question: Question, width: int) -> tuple[CandidateSet, CandidateSet]:
        if question.kind == "bit":
            i = question.bit
            if i >= self.bits:
                return CubeSet.empty(self.bits), self
            hit = 1 << i
            ins: list[tuple[int, int]] = []
            outs: list[tuple[int, int]] = []
            for care, val in self.cubes:
                if care & hit:
                    (ins if val & hit else outs).append((care, val))
                else:
                    ins.append((care | hit, val | hit))
                    outs.append((care | hit, val))
            return CubeSet(tuple(ins), self.bits), CubeSet(tuple(outs), self.bits)
        return self._materialize().split(question, width)

    def _materialize(self) -> CandidateSet:
        if self.count() <= IDS_MAX:
            return IdSet(frozenset(self.ids()))
        return MaskSet(self.to_mask(1 << self.bits))

    def ids(self) -> list[int]:
        if self.count() > ENUMERATION_LIMIT:
            raise ValueError("refusing to enumerate a set this large")
        out: list[int] = []
        for care, val in self.cubes:
            free = [b for b in range(self.bits) if not (care >> b) & 1]
            for combo in range(1 << len(free)):
                p = val
                for idx, b in enumerate(free):
                    if (combo >> idx) & 1:
                        p |= 1 << b
                out.append(p + 1)
        out.sort()
        return out

    def to_mask(self, width: int) -> int:
        m = 0
        for care, val in self.cubes:
            m |= _cube_mask(care, val, self.bits)
        return m

    def __repr__(self) -> str:
        return f"CubeSet(bits={self.bits}, cubes={len(self.cubes)})"


def union_disjoint(a: CandidateSet, b: CandidateSet, width: int) -> CandidateSet:
    """Union of sets known to be disjoint (pieces of disjoint parents)."""
    if isinstance(a, CubeSet) and isinstance(b, CubeSet):
        return CubeSet(a.cubes + b.cubes, a.bits)
    if isinstance(a, CubeSet):
        a = a._materialize()
    if isinstance(b, CubeSet):
        b = b._materialize()
    if isinstance(a, IdSet) and isinstance(b, IdSet):
        merged = a.members | b.members
        if len(merged) <= IDS_MAX:
            return IdSet(merged)
        return MaskSet(mask_from_ids(merged, width))
    return MaskSet(a.to_mask(width) | b.to_mask(width))


def empty_like(width: int, bits: int | None) -> CandidateSet:
    if bits is not None:
        return CubeSet.empty(bits)
    if width <= SMALL_UNIVERSE:
        return MaskSet(0)
    return IdSet(frozenset())


def full_set(n: int) -> CandidateSet:
    """The set {1..n} in the representation best suited to n."""
    if n <= SMALL_UNIVERSE:
        return MaskSet((1 << n) - 1)
    if n & (n - 1) == 0:
        return CubeSet.full(n.bit_length() - 1)
    return MaskSet((1 << n) - 1)
