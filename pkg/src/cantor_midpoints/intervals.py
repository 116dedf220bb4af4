"""Exact rational intervals and canonical finite unions of intervals.

Every endpoint is a :class:`fractions.Fraction` and every interval tracks the
inclusivity of each endpoint separately, so sets such as ``(0, 1/2) | (1/2, 1)``
keep the excluded point ``1/2`` while ``(0, 1/2] | [1/2, 1)`` merges to ``(0, 1)``.

Internally, set operations run on an integer *encoding* of endpoints.  After
scaling all endpoints by a common denominator ``D`` a left endpoint ``v`` is
stored as ``2v`` when closed and ``2v + 1`` when open, a right endpoint as
``2v`` when closed and ``2v - 1`` when open.  With that encoding

* an interval is empty iff ``lo_enc > hi_enc``,
* intersection is ``(max lo_enc, min hi_enc)``,
* two sorted intervals can be merged iff ``next.lo_enc <= cur.hi_enc + 1``,

which turns inclusivity bookkeeping into plain integer comparisons and lets the
hot paths use numpy.
"""

from __future__ import annotations

import bisect
import json
import math
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

import numpy as np

Rational = Fraction

__all__ = [
    "Rational",
    "Interval",
    "IntervalSet",
    "as_rational",
    "parse_rational",
    "format_rational",
    "normalize",
    "union",
    "intersect",
    "affine",
    "measure",
    "contains_point",
    "is_subset",
    "to_records",
    "from_records",
    "dumps",
    "loads",
]

# encoded values below this bound are coalesced with int64 numpy arrays
_INT64_SAFE = 1 << 62


def as_rational(value: Fraction | int | str) -> Fraction:
    """Coerce ``value`` to an exact Fraction; floats are refused."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"``; decimal notation is rejected."""
    s = text.strip()
    num, sep, den = s.partition("/")
    try:
        p = int(num)
        q = int(den) if sep else 1
    except ValueError:
        raise ValueError(f"not an exact rational 'p/q': {text!r}") from None
    if q == 0:
        raise ZeroDivisionError(f"zero denominator in {text!r}")
    return Fraction(p, q)


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


class Interval:
    """A connected piece of the real line with exact rational endpoints.

    Degenerate intervals (a single point) are allowed but must be closed on
    both ends.
    """

    __slots__ = ("lo", "hi", "lo_closed", "hi_closed")

    lo: Fraction
    hi: Fraction
    lo_closed: bool
    hi_closed: bool

    def __init__(
        self,
        lo: Fraction | int | str,
        hi: Fraction | int | str,
        lo_closed: bool = True,
        hi_closed: bool = True,
    ) -> None:
        lo = as_rational(lo)
        hi = as_rational(hi)
        if lo > hi:
            raise ValueError(f"interval lower end {lo} exceeds upper end {hi}")
        if lo == hi and not (lo_closed and hi_closed):
            raise ValueError(f"degenerate interval at {lo} must be closed on both ends")
        self._set(lo, hi, bool(lo_closed), bool(hi_closed))

    def _set(self, lo, hi, lo_closed, hi_closed):
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        object.__setattr__(self, "lo_closed", lo_closed)
        object.__setattr__(self, "hi_closed", hi_closed)

    @classmethod
    def _trusted(cls, lo: Fraction, hi: Fraction, lo_closed: bool, hi_closed: bool) -> Interval:
        # caller guarantees the invariant
        self = object.__new__(cls)
        self._set(lo, hi, lo_closed, hi_closed)
        return self

    def __setattr__(self, name, value):
        raise AttributeError("Interval is immutable")

    @classmethod
    def closed(cls, lo, hi) -> Interval:
        return cls(lo, hi, True, True)

    @classmethod
    def open(cls, lo, hi) -> Interval:
        return cls(lo, hi, False, False)

    @classmethod
    def point(cls, x) -> Interval:
        return cls(x, x, True, True)

    @property
    def length(self) -> Fraction:
        return self.hi - self.lo

    @property
    def is_degenerate(self) -> bool:
        return self.lo == self.hi

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def closure(self) -> Interval:
        return Interval._trusted(self.lo, self.hi, True, True)

    def __contains__(self, x) -> bool:
        x = as_rational(x)
        if self.lo < x < self.hi:
            return True
        return (x == self.lo and self.lo_closed) or (x == self.hi and self.hi_closed)

    def _key(self):
        return (self.lo, self.hi, self.lo_closed, self.hi_closed)

    def __eq__(self, other):
        if not isinstance(other, Interval):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __reduce__(self):
        return (Interval, self._key())

    def __repr__(self):
        return f"Interval({self})"

    def __str__(self):
        if self.is_degenerate:
            return f"{{{self.lo}}}"
        left = "[" if self.lo_closed else "("
        right = "]" if self.hi_closed else ")"
        return f"{left}{self.lo}, {self.hi}{right}"


class IntervalSet:
    """Canonical finite union of pairwise disjoint, non-mergeable intervals.

    Construction always normalizes, so two IntervalSets compare equal exactly
    when they denote the same point set.
    """

    __slots__ = ("components", "_los")

    components: tuple[Interval, ...]

    def __init__(self, intervals: Iterable[Interval] = ()) -> None:
        comps = _normalize_intervals(list(intervals))
        object.__setattr__(self, "components", comps)
        object.__setattr__(self, "_los", None)

    @classmethod
    def _from_canonical(cls, components: Sequence[Interval]) -> IntervalSet:
        self = object.__new__(cls)
        object.__setattr__(self, "components", tuple(components))
        object.__setattr__(self, "_los", None)
        return self

    def __setattr__(self, name, value):
        raise AttributeError("IntervalSet is immutable")

    @classmethod
    def empty(cls) -> IntervalSet:
        return _EMPTY

    @classmethod
    def closed(cls, lo, hi) -> IntervalSet:
        return cls._from_canonical([Interval.closed(lo, hi)])

    @classmethod
    def open(cls, lo, hi) -> IntervalSet:
        return cls._from_canonical([Interval.open(lo, hi)])

    @classmethod
    def point(cls, x) -> IntervalSet:
        return cls._from_canonical([Interval.point(x)])

    def __len__(self) -> int:
        return len(self.components)

    def __iter__(self) -> Iterator[Interval]:
        return iter(self.components)

    def __bool__(self) -> bool:
        return bool(self.components)

    def __eq__(self, other):
        if not isinstance(other, IntervalSet):
            return NotImplemented
        return self.components == other.components

    def __hash__(self):
        return hash(self.components)

    def __reduce__(self):
        return (IntervalSet._from_canonical, (self.components,))

    def __repr__(self):
        if not self.components:
            return "IntervalSet(∅)"
        return "IntervalSet(" + " ∪ ".join(str(c) for c in self.components) + ")"

    def __contains__(self, x) -> bool:
        return contains_point(self, x)

    def __or__(self, other: IntervalSet) -> IntervalSet:
        return union(self, other)

    def __and__(self, other: IntervalSet) -> IntervalSet:
        return intersect(self, other)

    def __le__(self, other: IntervalSet) -> bool:
        return is_subset(self, other)

    @property
    def measure(self) -> Fraction:
        return measure(self)

    @property
    def inf(self) -> Fraction:
        if not self.components:
            raise ValueError("empty set has no infimum")
        return self.components[0].lo

    @property
    def sup(self) -> Fraction:
        if not self.components:
            raise ValueError("empty set has no supremum")
        return self.components[-1].hi

    def hull(self) -> Interval:
        """Smallest interval containing the set, with matching inclusivity."""
        first, last = self.components[0], self.components[-1]
        return Interval._trusted(first.lo, last.hi, first.lo_closed, last.hi_closed)


_EMPTY = IntervalSet._from_canonical(())


# -- integer encoding --------------------------------------------------------


def _common_denominator(intervals: Iterable[Interval]) -> int:
    dens = set()
    for iv in intervals:
        dens.add(iv.lo.denominator)
        dens.add(iv.hi.denominator)
    return math.lcm(*dens) if dens else 1


def _encode(intervals: Sequence[Interval], scale: int) -> list[tuple[int, int]]:
    out = []
    for iv in intervals:
        lo = 2 * (iv.lo.numerator * (scale // iv.lo.denominator))
        hi = 2 * (iv.hi.numerator * (scale // iv.hi.denominator))
        out.append((lo if iv.lo_closed else lo + 1, hi if iv.hi_closed else hi - 1))
    return out


def _decode(pairs: Iterable[tuple[int, int]], scale: int) -> tuple[Interval, ...]:
    out = []
    for lo_enc, hi_enc in pairs:
        lo_enc, hi_enc = int(lo_enc), int(hi_enc)
        out.append(
            Interval._trusted(
                Fraction(lo_enc // 2, scale),
                Fraction((hi_enc + 1) // 2, scale),
                lo_enc % 2 == 0,
                hi_enc % 2 == 0,
            )
        )
    return tuple(out)


def _coalesce_pairs(pairs: list[tuple[int, int]]) -> list[tuple[int, int]]:
    """Sort-and-sweep merge of encoded intervals (pure Python, any size ints)."""
    pairs = sorted(p for p in pairs if p[0] <= p[1])
    out: list[tuple[int, int]] = []
    if not pairs:
        return out
    cur_lo, cur_hi = pairs[0]
    for lo, hi in pairs[1:]:
        if lo <= cur_hi + 1:
            if hi > cur_hi:
                cur_hi = hi
        else:
            out.append((cur_lo, cur_hi))
            cur_lo, cur_hi = lo, hi
    out.append((cur_lo, cur_hi))
    return out


def _coalesce_arrays(lo: np.ndarray, hi: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized sort-and-sweep merge of int64-encoded intervals."""
    keep = lo <= hi
    lo, hi = lo[keep], hi[keep]
    if lo.size == 0:
        return lo, hi
    order = np.argsort(lo, kind="stable")
    lo, hi = lo[order], hi[order]
    reach = np.maximum.accumulate(hi)
    starts = np.empty(lo.size, dtype=bool)
    starts[0] = True
    starts[1:] = lo[1:] > reach[:-1] + 1
    start_idx = np.flatnonzero(starts)
    end_idx = np.empty_like(start_idx)
    end_idx[:-1] = start_idx[1:] - 1
    end_idx[-1] = lo.size - 1
    return lo[start_idx], reach[end_idx]


def _coalesce(pairs: list[tuple[int, int]]) -> list[tuple[int, int]]:
    if len(pairs) > 256:
        bound = max(max(abs(a), abs(b)) for a, b in pairs)
        if bound < _INT64_SAFE:
            arr = np.asarray(pairs, dtype=np.int64)
            lo, hi = _coalesce_arrays(arr[:, 0], arr[:, 1])
            return list(zip(lo.tolist(), hi.tolist()))
    return _coalesce_pairs(pairs)


def _normalize_intervals(raw: list[Interval]) -> tuple[Interval, ...]:
    for iv in raw:
        if not isinstance(iv, Interval):
            raise TypeError(f"expected Interval, got {type(iv).__name__}")
    if not raw:
        return ()
    scale = _common_denominator(raw)
    return _decode(_coalesce(_encode(raw, scale)), scale)


# -- operations ---------------------------------------------------------------


def normalize(raw: Iterable[Interval]) -> IntervalSet:
    """Canonical IntervalSet denoting the union of ``raw``."""
    if isinstance(raw, IntervalSet):
        return raw
    return IntervalSet(raw)


def union(a: IntervalSet, b: IntervalSet) -> IntervalSet:
    if not a.components:
        return b
    if not b.components:
        return a
    return IntervalSet(a.components + b.components)


def intersect(a: IntervalSet, b: IntervalSet) -> IntervalSet:
    if not a.components or not b.components:
        return _EMPTY
    scale = math.lcm(_common_denominator(a.components), _common_denominator(b.components))
    ea, eb = _encode(a.components, scale), _encode(b.components, scale)
    out = []
    i = j = 0
    while i < len(ea) and j < len(eb):
        lo = max(ea[i][0], eb[j][0])
        hi = min(ea[i][1], eb[j][1])
        if lo <= hi:
            out.append((lo, hi))
        if ea[i][1] < eb[j][1]:
            i += 1
        else:
            j += 1
    # pieces of two canonical sets are already separated
    return IntervalSet._from_canonical(_decode(out, scale))


def affine(a: IntervalSet, c1, c2) -> IntervalSet:
    """Image of ``a`` under ``x -> c1*x + c2``; ``c1`` must be nonzero."""
    c1, c2 = as_rational(c1), as_rational(c2)
    if c1 == 0:
        raise ValueError("affine scale factor must be nonzero")
    if c1 > 0:
        comps = [
            Interval._trusted(c1 * iv.lo + c2, c1 * iv.hi + c2, iv.lo_closed, iv.hi_closed)
            for iv in a.components
        ]
    else:
        comps = [
            Interval._trusted(c1 * iv.hi + c2, c1 * iv.lo + c2, iv.hi_closed, iv.lo_closed)
            for iv in reversed(a.components)
        ]
    # a monotone bijection preserves gaps and excluded points
    return IntervalSet._from_canonical(comps)


def measure(a: IntervalSet) -> Fraction:
    """Exact Lebesgue measure; endpoint inclusivity is irrelevant."""
    if not a.components:
        return Fraction(0)
    scale = _common_denominator(a.components)
    total = 0
    for iv in a.components:
        total += iv.hi.numerator * (scale // iv.hi.denominator)
        total -= iv.lo.numerator * (scale // iv.lo.denominator)
    return Fraction(total, scale)


def contains_point(a: IntervalSet, x) -> bool:
    x = as_rational(x)
    los = a._los
    if los is None:
        los = [iv.lo for iv in a.components]
        object.__setattr__(a, "_los", los)
    k = bisect.bisect_right(los, x) - 1
    if k < 0:
        return False
    return x in a.components[k]


def is_subset(a: IntervalSet, b: IntervalSet) -> bool:
    return intersect(a, b) == a


# -- interchange form ---------------------------------------------------------


def to_records(a: IntervalSet) -> list[dict]:
    return [
        {
            "lo": format_rational(iv.lo),
            "lo_closed": iv.lo_closed,
            "hi": format_rational(iv.hi),
            "hi_closed": iv.hi_closed,
        }
        for iv in a.components
    ]


def from_records(records: Iterable[dict]) -> IntervalSet:
    intervals = []
    for rec in records:
        lo, hi = rec["lo"], rec["hi"]
        if not isinstance(lo, str) or not isinstance(hi, str):
            raise TypeError("interval endpoints must be serialized as 'p/q' strings")
        intervals.append(
            Interval(parse_rational(lo), parse_rational(hi), bool(rec["lo_closed"]), bool(rec["hi_closed"]))
        )
    return IntervalSet(intervals)


def dumps(a: IntervalSet, **kwargs) -> str:
    return json.dumps(to_records(a), **kwargs)


def loads(text: str) -> IntervalSet:
    return from_records(json.loads(text))
