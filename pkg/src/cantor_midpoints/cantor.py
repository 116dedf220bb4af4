"""Stages of the middle-thirds Cantor set, partition cells and exact membership."""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction

from .intervals import Interval, IntervalSet, as_rational

__all__ = [
    "DEFAULT_STAGE_CAP",
    "ResourceCapError",
    "CantorStage",
    "PartitionCell",
    "TernaryDigits",
    "stage",
    "stage_left_numerators",
    "partition",
    "partition_cell",
    "in_limit_set",
    "stage_interval_of",
]

DEFAULT_STAGE_CAP = 14

# stages above this level are rebuilt on demand rather than kept in memory
_CACHED_LEVELS = 16


class ResourceCapError(RuntimeError):
    """Requested size exceeds the configured blowup cap."""


def _check_level(i: int, cap: int | None, what: str = "stage") -> None:
    if not isinstance(i, int) or isinstance(i, bool):
        raise TypeError(f"{what} level must be an int, got {type(i).__name__}")
    if i < 1:
        raise ValueError(f"{what} level must be >= 1, got {i}")
    if cap is not None and i > cap:
        raise ResourceCapError(f"{what} level {i} exceeds cap {cap}")


@dataclass(frozen=True)
class CantorStage:
    level: int
    set: IntervalSet

    @property
    def width(self) -> Fraction:
        return Fraction(1, 3**self.level)


@dataclass(frozen=True)
class PartitionCell:
    level: int
    index: int
    cell: Interval


# Left endpoints of C_i scaled by 3**i.  C_i = C_{i-1}/3 ∪ (2/3 + C_{i-1}/3)
# keeps a numerator unchanged in the first copy and adds 2*3**(i-1) in the second.
_numerators: dict[int, tuple[int, ...]] = {0: (0,)}
_stages: dict[int, CantorStage] = {}
_lock = threading.Lock()


def stage_left_numerators(i: int) -> tuple[int, ...]:
    """Sorted integers ``a`` such that ``[a/3**i, (a+1)/3**i]`` is a component of C_i."""
    if i in _numerators:
        return _numerators[i]
    prev = stage_left_numerators(i - 1)
    shift = 2 * 3 ** (i - 1)
    cur = prev + tuple(a + shift for a in prev)
    if i <= _CACHED_LEVELS:
        with _lock:
            _numerators.setdefault(i, cur)
    return cur


def stage(i: int, cap: int | None = DEFAULT_STAGE_CAP) -> CantorStage:
    """The i-th Cantor stage C_i: 2**i closed intervals of length 3**-i."""
    _check_level(i, cap)
    cached = _stages.get(i)
    if cached is not None:
        return cached
    den = 3**i
    comps = [
        Interval._trusted(Fraction(a, den), Fraction(a + 1, den), True, True)
        for a in stage_left_numerators(i)
    ]
    result = CantorStage(i, IntervalSet._from_canonical(comps))
    if i <= _CACHED_LEVELS:
        with _lock:
            result = _stages.setdefault(i, result)
    return result


def partition_cell(i: int, k: int) -> Interval:
    """Open cell ``((k-1)/3**i, k/3**i)``."""
    n = 3**i
    if not 1 <= k <= n:
        raise ValueError(f"cell index {k} outside 1..{n}")
    return Interval._trusted(Fraction(k - 1, n), Fraction(k, n), False, False)


def partition(i: int, cap: int | None = DEFAULT_STAGE_CAP) -> list[PartitionCell]:
    _check_level(i, cap, "partition")
    return [PartitionCell(i, k, partition_cell(i, k)) for k in range(1, 3**i + 1)]


@dataclass(frozen=True)
class TernaryDigits:
    """Eventually periodic base-3 expansion ``0.digits (repetend)*``."""

    digits: tuple[int, ...]
    repetend: tuple[int, ...] = ()

    def __post_init__(self):
        for d in self.digits + self.repetend:
            if d not in (0, 1, 2):
                raise ValueError(f"ternary digit out of range: {d}")

    @classmethod
    def from_rational(cls, x) -> TernaryDigits:
        """Standard expansion (finite whenever one exists), except 1 = 0.(2)."""
        x = as_rational(x)
        if not 0 <= x <= 1:
            raise ValueError(f"{x} is outside [0, 1]")
        if x == 1:
            return cls((), (2,))
        p, q = x.numerator, x.denominator
        digits: list[int] = []
        seen: dict[int, int] = {}
        r = p
        while r and r not in seen:
            seen[r] = len(digits)
            r *= 3
            digits.append(r // q)
            r %= q
        if not r:
            return cls(tuple(digits))
        start = seen[r]
        return cls(tuple(digits[:start]), tuple(digits[start:]))

    def to_rational(self) -> Fraction:
        head = 0
        for d in self.digits:
            head = 3 * head + d
        value = Fraction(head, 3 ** len(self.digits))
        if self.repetend:
            block = 0
            for d in self.repetend:
                block = 3 * block + d
            period = len(self.repetend)
            value += Fraction(block, 3 ** len(self.digits) * (3**period - 1))
        return value

    def alternative(self) -> TernaryDigits | None:
        """The other expansion of a triadic rational (``0.x1 = 0.x0(2)``), if any."""
        if self.repetend and set(self.repetend) != {0}:
            return None
        digits = list(self.digits)
        while digits and digits[-1] == 0:
            digits.pop()
        if not digits:
            return None
        digits[-1] -= 1
        return TernaryDigits(tuple(digits), (2,))

    def avoids_one(self) -> bool:
        return 1 not in self.digits and 1 not in self.repetend

    def prefix(self, n: int) -> list[int]:
        out = list(self.digits[:n])
        k = 0
        while len(out) < n:
            out.append(self.repetend[k % len(self.repetend)] if self.repetend else 0)
            k += 1
        return out


def _is_triadic(q: int) -> bool:
    while q % 3 == 0:
        q //= 3
    return q == 1


def _cantor_digits(x: Fraction) -> TernaryDigits | None:
    """Expansion of a triadic rational avoiding the digit 1, or None."""
    digits = TernaryDigits.from_rational(x)
    if digits.avoids_one():
        return digits
    alt = digits.alternative()
    if alt is not None and alt.avoids_one():
        return alt
    return None


def _digit_stream(x: Fraction):
    # non-triadic rationals have a single expansion
    r, q = x.numerator, x.denominator
    while True:
        r *= 3
        yield r // q
        r %= q


def _is_member(x: Fraction) -> bool:
    if x == 1 or _is_triadic(x.denominator):
        return _cantor_digits(x) is not None
    q = x.denominator
    seen = set()
    r = x.numerator
    while r not in seen:
        seen.add(r)
        r *= 3
        if r // q == 1:
            return False
        r %= q
    return True


def in_limit_set(x) -> bool:
    """Exact membership of a rational ``x`` in the middle-thirds Cantor set."""
    x = as_rational(x)
    if not 0 <= x <= 1:
        raise ValueError(f"{x} is outside [0, 1]")
    return _is_member(x)


def stage_interval_of(x, i: int) -> Interval:
    """Component of C_i containing the Cantor point ``x``."""
    x = as_rational(x)
    if i < 1:
        raise ValueError(f"stage level must be >= 1, got {i}")
    if not 0 <= x <= 1:
        raise ValueError(f"{x} is outside [0, 1]")
    if not _is_member(x):
        raise ValueError(f"{x} is not in the Cantor set")
    if x == 1 or _is_triadic(x.denominator):
        prefix = _cantor_digits(x).prefix(i)
    else:
        stream = _digit_stream(x)
        prefix = [next(stream) for _ in range(i)]
    a = 0
    for d in prefix:
        a = 3 * a + d
    den = 3**i
    return Interval._trusted(Fraction(a, den), Fraction(a + 1, den), True, True)
