"""Independent oracles and random generators shared by the test modules."""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import product

from hypothesis import strategies as st

from cantor_midpoints.intervals import Interval, IntervalSet, affine, intersect

rationals = st.fractions(min_value=-3, max_value=3, max_denominator=12)


@st.composite
def intervals(draw):
    a = draw(rationals)
    b = draw(rationals)
    lo, hi = min(a, b), max(a, b)
    if lo == hi:
        return Interval.point(lo)
    return Interval(lo, hi, draw(st.booleans()), draw(st.booleans()))


interval_lists = st.lists(intervals(), max_size=6)
interval_sets = interval_lists.map(IntervalSet)


def random_interval(rng: random.Random, max_den: int = 12, span: int = 2) -> Interval:
    def rat():
        q = rng.randint(1, max_den)
        return Fraction(rng.randint(-span * q, span * q), q)

    a, b = sorted((rat(), rat()))
    if a == b or rng.random() < 0.1:
        return Interval.point(a)
    return Interval(a, b, rng.random() < 0.5, rng.random() < 0.5)


def random_interval_set(rng: random.Random, max_components: int = 6, **kw) -> IntervalSet:
    return IntervalSet(random_interval(rng, **kw) for _ in range(rng.randint(0, max_components)))


def random_nonzero_rational(rng: random.Random, bound: int = 50) -> Fraction:
    while True:
        p = rng.randint(-bound, bound)
        if p:
            return Fraction(p, rng.randint(1, bound))


def is_midpoint_member(a: IntervalSet, z: Fraction) -> bool:
    """z is in M_a iff a ∩ (2z - a) holds a point other than z itself."""
    if not a.components:
        return False
    common = intersect(a, affine(a, -1, 2 * z))
    return bool(common.components) and common != IntervalSet.point(z)


def probe_points(s: IntervalSet) -> list[Fraction]:
    """Endpoints, component midpoints and gap midpoints of ``s``."""
    pts = []
    comps = s.components
    for c in comps:
        pts += [c.lo, c.hi, (c.lo + c.hi) / 2]
    for left, right in zip(comps, comps[1:]):
        pts.append((left.hi + right.lo) / 2)
    if comps:
        pts += [comps[0].lo - 1, comps[-1].hi + 1]
    return pts


def cantor_stage_by_digits(n: int) -> list[tuple[Fraction, Fraction]]:
    """Components of C_n enumerated from ternary digit strings over {0, 2}."""
    den = 3**n
    out = []
    for ds in product((0, 2), repeat=n):
        a = 0
        for d in ds:
            a = 3 * a + d
        out.append((Fraction(a, den), Fraction(a + 1, den)))
    return sorted(out)


def pointwise_midpoints(points) -> set[Fraction]:
    pts = sorted(set(points))
    return {(x + y) / 2 for i, x in enumerate(pts) for y in pts[i + 1 :]}
