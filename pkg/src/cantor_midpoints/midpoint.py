"""Midpoint sets ``M_A = {(x+y)/2 : x, y in A, x != y}`` of interval sets.

Two independent engines compute the midpoint set of a Cantor stage:

``pairwise``
    contributions of every pair of components, coalesced by a sweep.
``selfsimilar``
    the recursion obtained from ``C_i = C_{i-1}/3 ∪ (2/3 + C_{i-1}/3)``::

        M(C_i) = M(C_{i-1})/3 ∪ (2/3 + M(C_{i-1})/3) ∪ (1/3 + (M(C_{i-1}) ∪ C_{i-1})/3)

    where the last term collects midpoints of one point from each copy.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import intervals as iv
from .cantor import DEFAULT_STAGE_CAP, ResourceCapError, partition_cell, stage
from .intervals import Interval, IntervalSet, affine, as_rational, union

__all__ = [
    "DEFAULT_PAIR_CAP",
    "METHODS",
    "MidpointCertificate",
    "LevelResult",
    "VerificationReport",
    "midpoint_set",
    "half_sumset",
    "pair_count",
    "stage_midpoint_set",
    "midpoint_set_bruteforce",
    "check_scaling_lemma",
    "check_partition_lemma",
    "build_certificates",
    "certified_coverage",
    "verify_midpoint_claims",
]

DEFAULT_PAIR_CAP = 12
METHODS = ("pairwise", "selfsimilar")

# contributions buffered before an intermediate coalesce
_CHUNK = 1 << 21

UNIT_OPEN = IntervalSet.open(0, 1)


def _scaled(comps) -> tuple[int, list[tuple[int, bool, int, bool]]]:
    scale = iv._common_denominator(comps)
    rows = [
        (
            c.lo.numerator * (scale // c.lo.denominator),
            c.lo_closed,
            c.hi.numerator * (scale // c.hi.denominator),
            c.hi_closed,
        )
        for c in comps
    ]
    return scale, rows


def _pairwise_python(rows, diagonal: bool, other=None) -> list[tuple[int, int]]:
    out = []
    if other is None:
        for i, (l1, c1, h1, d1) in enumerate(rows):
            if diagonal and l1 != h1:
                out.append((4 * l1 + 1, 4 * h1 - 1))
            for l2, c2, h2, d2 in rows[i + 1 :]:
                out.append((2 * (l1 + l2) + (0 if c1 and c2 else 1), 2 * (h1 + h2) - (0 if d1 and d2 else 1)))
            if len(out) > _CHUNK:
                out = iv._coalesce_pairs(out)
    else:
        for l1, c1, h1, d1 in rows:
            for l2, c2, h2, d2 in other:
                out.append((2 * (l1 + l2) + (0 if c1 and c2 else 1), 2 * (h1 + h2) - (0 if d1 and d2 else 1)))
            if len(out) > _CHUNK:
                out = iv._coalesce_pairs(out)
    return iv._coalesce_pairs(out)


def _pairwise_numpy(rows, diagonal: bool, other=None) -> list[tuple[int, int]]:
    lo = np.array([r[0] for r in rows], dtype=np.int64)
    lc = np.array([r[1] for r in rows], dtype=bool)
    hi = np.array([r[2] for r in rows], dtype=np.int64)
    hc = np.array([r[3] for r in rows], dtype=bool)
    if other is None:
        lo2, lc2, hi2, hc2 = lo, lc, hi, hc
    else:
        lo2 = np.array([r[0] for r in other], dtype=np.int64)
        lc2 = np.array([r[1] for r in other], dtype=bool)
        hi2 = np.array([r[2] for r in other], dtype=np.int64)
        hc2 = np.array([r[3] for r in other], dtype=bool)

    los: list[np.ndarray] = []
    his: list[np.ndarray] = []
    buffered = 0
    done_lo = np.empty(0, dtype=np.int64)
    done_hi = np.empty(0, dtype=np.int64)

    if diagonal:
        nondeg = lo < hi
        los.append(4 * lo[nondeg] + 1)
        his.append(4 * hi[nondeg] - 1)
        buffered += int(nondeg.sum())

    for i in range(lo.size):
        start = i + 1 if other is None else 0
        if start >= lo2.size:
            continue
        los.append(2 * (lo[i] + lo2[start:]) + ~(lc[i] & lc2[start:]))
        his.append(2 * (hi[i] + hi2[start:]) - ~(hc[i] & hc2[start:]))
        buffered += lo2.size - start
        if buffered > _CHUNK:
            done_lo, done_hi = iv._coalesce_arrays(
                np.concatenate([done_lo, *los]), np.concatenate([done_hi, *his])
            )
            los, his, buffered = [], [], 0

    a, b = iv._coalesce_arrays(np.concatenate([done_lo, *los]), np.concatenate([done_hi, *his]))
    return list(zip(a.tolist(), b.tolist()))


def _pairwise(comps, diagonal: bool, other_comps=None) -> IntervalSet:
    all_comps = list(comps) + list(other_comps or ())
    scale, rows = _scaled(all_comps)
    other = None
    if other_comps is not None:
        rows, other = rows[: len(comps)], rows[len(comps) :]
    bound = 4 * max(max(abs(r[0]), abs(r[2])) for r in rows + (other or [])) + 2
    engine = _pairwise_numpy if bound < iv._INT64_SAFE else _pairwise_python
    merged = engine(rows, diagonal, other)
    # sums of two scaled endpoints live on the grid 1/(2*scale)
    return IntervalSet._from_canonical(iv._decode(merged, 2 * scale))


def midpoint_set(a: IntervalSet) -> IntervalSet:
    """Exact midpoint set of ``a`` with the distinct-pair rule.

    A component paired with itself contributes its open interior; two distinct
    components contribute the interval between the averages of their ends,
    each end closed only when both source ends are closed.
    """
    if not a.components:
        return IntervalSet.empty()
    return _pairwise(a.components, diagonal=True)


def half_sumset(a: IntervalSet, b: IntervalSet) -> IntervalSet:
    """``{(x+y)/2 : x in a, y in b}``, pairs with ``x == y`` included."""
    if not a.components or not b.components:
        return IntervalSet.empty()
    return _pairwise(a.components, diagonal=False, other_comps=b.components)


def pair_count(a: IntervalSet) -> int:
    """Number of component pairs the pairwise engine generates before coalescing."""
    k = len(a.components)
    return math.comb(k, 2) + k


def _selfsimilar(level: int, cap: int | None) -> IntervalSet:
    third = Fraction(1, 3)
    prev_stage = IntervalSet.closed(0, 1)
    m = midpoint_set(prev_stage)
    for k in range(1, level + 1):
        m = union(
            union(affine(m, third, 0), affine(m, third, 2 * third)),
            affine(union(m, prev_stage), third, third),
        )
        if k < level:
            prev_stage = stage(k, cap).set
    return m


def stage_midpoint_set(
    i: int,
    method: str = "pairwise",
    cap: int | None = None,
    stage_cap: int | None = DEFAULT_STAGE_CAP,
) -> IntervalSet:
    """Midpoint set of C_i by the chosen engine.

    ``cap`` bounds the level for the pairwise engine (default
    ``DEFAULT_PAIR_CAP``); ``stage_cap`` bounds every stage construction.
    """
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")
    if i < 1:
        raise ValueError(f"stage level must be >= 1, got {i}")
    if stage_cap is not None and i > stage_cap:
        raise ResourceCapError(f"stage level {i} exceeds cap {stage_cap}")
    if method == "pairwise":
        pair_cap = DEFAULT_PAIR_CAP if cap is None else cap
        if i > pair_cap:
            raise ResourceCapError(f"pairwise midpoint level {i} exceeds cap {pair_cap}")
        return midpoint_set(stage(i, stage_cap).set)
    return _selfsimilar(i, stage_cap)


def midpoint_set_bruteforce(a: IntervalSet, grid_denominator: int) -> set[Fraction]:
    """Midpoints of distinct grid points ``k/grid_denominator`` lying in ``a``."""
    if grid_denominator < 1:
        raise ValueError("grid_denominator must be >= 1")
    if not a.components:
        return set()
    d = grid_denominator
    lo_k = math.ceil(a.inf * d)
    hi_k = math.floor(a.sup * d)
    ks = [k for k in range(lo_k, hi_k + 1) if iv.contains_point(a, Fraction(k, d))]
    if len(ks) < 2:
        return set()
    arr = np.array(ks, dtype=object if max(abs(lo_k), abs(hi_k)) > 1 << 30 else np.int64)
    sums = np.add.outer(arr, arr)[np.triu_indices(len(ks), 1)]
    return {Fraction(int(s), 2 * d) for s in np.unique(sums)}


def check_scaling_lemma(t: IntervalSet, c1, c2) -> bool:
    """Whether ``M(c1*t + c2) == c1*M(t) + c2`` holds exactly."""
    c1, c2 = as_rational(c1), as_rational(c2)
    if c1 == 0:
        raise ValueError("scale factor c1 must be nonzero")
    return midpoint_set(affine(t, c1, c2)) == affine(midpoint_set(t), c1, c2)


def _validate_indices(i: int, m: int, n: int) -> int:
    top = 3**i
    if not (1 <= m <= top and 1 <= n <= top):
        raise ValueError(f"cell indices must lie in 1..{top}, got ({m}, {n})")
    if m == n:
        raise ValueError("source cells must be distinct")
    if (m + n) % 2:
        raise ValueError(f"m + n = {m + n} is odd; the averaged index is not an integer")
    return (m + n) // 2


def check_partition_lemma(i: int, m: int, n: int) -> bool:
    """Whether cell ``(m+n)/2`` lies inside the midpoint set of cells m and n."""
    s = _validate_indices(i, m, n)
    target = IntervalSet._from_canonical([partition_cell(i, s)])
    sources = IntervalSet([partition_cell(i, m), partition_cell(i, n)])
    return iv.is_subset(target, midpoint_set(sources))


@dataclass(frozen=True)
class MidpointCertificate:
    """Cell ``s`` of level ``level`` is covered by midpoints of cells ``m`` and ``n``."""

    level: int
    s: int
    m: int
    n: int

    def sources(self) -> IntervalSet:
        """Closures of the two source cells."""
        return IntervalSet._from_canonical(
            sorted(
                (partition_cell(self.level, self.m).closure(), partition_cell(self.level, self.n).closure()),
                key=lambda c: c.lo,
            )
        )

    def region(self) -> IntervalSet:
        return midpoint_set(self.sources())

    def is_valid(self, cap: int | None = DEFAULT_STAGE_CAP) -> bool:
        if self.m == self.n or 2 * self.s != self.m + self.n:
            return False
        if not iv.is_subset(self.sources(), stage(self.level, cap).set):
            return False
        target = IntervalSet._from_canonical([partition_cell(self.level, self.s)])
        return check_partition_lemma(self.level, self.m, self.n) and iv.is_subset(target, self.region())

    def to_dict(self) -> dict:
        return {"level": self.level, "s": self.s, "m": self.m, "n": self.n}


def build_certificates(i: int) -> list[MidpointCertificate]:
    """Certificates for every middle-third cell of level ``i``.

    Level 1 uses ``(s, m, n) = (2, 1, 3)``.  Each level-(i-1) certificate is
    refined by splitting all three cells into thirds: first thirds pair with
    first thirds, last with last, and first with last for the middle piece.
    Only first and last thirds of surviving cells survive in C_i.
    """
    if i < 1:
        raise ValueError(f"level must be >= 1, got {i}")
    certs = [(2, 1, 3)]
    for _ in range(i - 1):
        refined = []
        for s, m, n in certs:
            refined.append((3 * s - 2, 3 * m - 2, 3 * n - 2))
            refined.append((3 * s - 1, 3 * m - 2, 3 * n))
            refined.append((3 * s, 3 * m, 3 * n))
        certs = refined
    return [MidpointCertificate(i, s, m, n) for s, m, n in sorted(certs)]


def certified_coverage(i: int) -> IntervalSet:
    """Part of M(C_i) witnessed by certificates plus the two scaled copies.

    The copies are ``M(C_{i-1})/3`` and ``2/3 + M(C_{i-1})/3`` taken from the
    certified coverage of the previous level, starting from ``M([0, 1])``.
    """
    if i < 1:
        raise ValueError(f"level must be >= 1, got {i}")
    third = Fraction(1, 3)
    cover = midpoint_set(IntervalSet.closed(0, 1))
    for level in range(1, i + 1):
        pieces = [affine(cover, third, 0), affine(cover, third, 2 * third)]
        pieces.extend(c.region() for c in build_certificates(level))
        cover = IntervalSet([c for p in pieces for c in p.components])
    return cover


@dataclass
class LevelResult:
    level: int
    method: str
    passed: bool
    components: int
    measure: Fraction
    contains_zero: bool
    contains_one: bool
    pair_count: int
    seconds: float

    def to_dict(self) -> dict:
        return {
            "level": self.level,
            "method": self.method,
            "passed": self.passed,
            "components": self.components,
            "measure": iv.format_rational(self.measure),
            "contains_zero": self.contains_zero,
            "contains_one": self.contains_one,
            "pair_count": self.pair_count,
            "seconds": round(self.seconds, 6),
        }


@dataclass
class VerificationReport:
    max_level: int
    method: str
    levels: list[LevelResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return len(self.levels) == self.max_level and all(r.passed for r in self.levels)

    def to_dict(self) -> dict:
        return {
            "max_level": self.max_level,
            "method": self.method,
            "passed": self.passed,
            "levels": [r.to_dict() for r in self.levels],
        }


def verify_midpoint_claims(
    max_level: int,
    method: str = "pairwise",
    cap: int | None = None,
    stage_cap: int | None = DEFAULT_STAGE_CAP,
) -> VerificationReport:
    """Check ``M(C_i) == (0, 1)`` exactly for every ``i <= max_level``."""
    if max_level < 1:
        raise ValueError("max_level must be >= 1")
    if method == "pairwise":
        pair_cap = DEFAULT_PAIR_CAP if cap is None else cap
        if max_level > pair_cap:
            raise ResourceCapError(f"pairwise midpoint level {max_level} exceeds cap {pair_cap}")
    if stage_cap is not None and max_level > stage_cap:
        raise ResourceCapError(f"stage level {max_level} exceeds cap {stage_cap}")
    report = VerificationReport(max_level, method)
    for i in range(1, max_level + 1):
        t0 = time.perf_counter()
        m = stage_midpoint_set(i, method, cap=cap, stage_cap=stage_cap)
        elapsed = time.perf_counter() - t0
        report.levels.append(
            LevelResult(
                level=i,
                method=method,
                passed=m == UNIT_OPEN,
                components=len(m),
                measure=iv.measure(m),
                contains_zero=iv.contains_point(m, 0),
                contains_one=iv.contains_point(m, 1),
                pair_count=math.comb(2**i, 2) + 2**i,
                seconds=elapsed,
            )
        )
    return report
