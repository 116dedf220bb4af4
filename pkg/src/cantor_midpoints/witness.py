"""Nested stage-interval pairs localizing a Cantor pair with a prescribed midpoint."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cantor import DEFAULT_STAGE_CAP, ResourceCapError, in_limit_set, stage_interval_of
from .intervals import Interval, IntervalSet, as_rational, format_rational
from .midpoint import midpoint_set

__all__ = [
    "SEPARATED",
    "NOT_SEPARATED",
    "WitnessChain",
    "find_witness",
    "refine_witness",
    "witness_midpoint_residual",
]

SEPARATED = "separated"
NOT_SEPARATED = "separation not yet certified at requested depth"

_UNIT = Interval._trusted(Fraction(0), Fraction(1), True, True)


@dataclass(frozen=True)
class WitnessChain:
    """Pairs ``(X_n, Y_n)`` of components of C_n for ``n = 1..depth``.

    ``2 * target`` lies in ``X_n + Y_n`` at every level and the pairs are
    nested, so the limit points ``x in X_n``, ``y in Y_n`` are Cantor points
    with ``(x + y) / 2 == target``.
    """

    target: Fraction
    pairs: tuple[tuple[Interval, Interval], ...]

    @property
    def depth(self) -> int:
        return len(self.pairs)

    @property
    def last(self) -> tuple[Interval, Interval]:
        return self.pairs[-1]

    @property
    def separated(self) -> bool:
        x, y = self.last
        return x != y

    @property
    def separation_level(self) -> int | None:
        for n, (x, y) in enumerate(self.pairs, start=1):
            if x != y:
                return n
        return None

    @property
    def status(self) -> str:
        return SEPARATED if self.separated else NOT_SEPARATED

    def violations(self) -> list[str]:
        """Broken chain invariants, empty for a valid chain."""
        problems = []
        z = self.target
        prev = None
        for n, (x, y) in enumerate(self.pairs, start=1):
            width = Fraction(1, 3**n)
            for name, comp in (("X", x), ("Y", y)):
                if comp.length != width or not (comp.lo_closed and comp.hi_closed):
                    problems.append(f"level {n}: {name}={comp} is not a closed interval of width 3^-{n}")
                elif not in_limit_set(comp.lo) or stage_interval_of(comp.lo, n) != comp:
                    problems.append(f"level {n}: {name}={comp} is not a component of C_{n}")
            if not x.lo + y.lo <= 2 * z <= x.hi + y.hi:
                problems.append(f"level {n}: 2z outside X+Y")
            if z not in midpoint_set(IntervalSet([x, y])):
                problems.append(f"level {n}: z not a midpoint of X ∪ Y")
            if prev is not None:
                px, py = prev
                if not (px.lo <= x.lo and x.hi <= px.hi and py.lo <= y.lo and y.hi <= py.hi):
                    problems.append(f"level {n}: pair not nested in level {n - 1}")
            prev = (x, y)
        return problems

    def is_valid(self) -> bool:
        return not self.violations()

    def to_dict(self) -> dict:
        def rec(c: Interval) -> dict:
            return {"lo": format_rational(c.lo), "lo_closed": True, "hi": format_rational(c.hi), "hi_closed": True}

        return {
            "z": format_rational(self.target),
            "depth": self.depth,
            "status": self.status,
            "separation_level": self.separation_level,
            "chain": [
                {"level": n, "X": rec(x), "Y": rec(y), "bound": f"1/3^{n}"}
                for n, (x, y) in enumerate(self.pairs, start=1)
            ],
        }


def _thirds(c: Interval) -> tuple[Interval, Interval]:
    w = c.length / 3
    return (
        Interval._trusted(c.lo, c.lo + w, True, True),
        Interval._trusted(c.hi - w, c.hi, True, True),
    )


def _next_pair(z2: Fraction, x: Interval, y: Interval) -> tuple[Interval, Interval]:
    feasible = [
        (a, b)
        for a in _thirds(x)
        for b in _thirds(y)
        if a.lo + b.lo <= z2 <= a.hi + b.hi
    ]
    # prefer distinct components; fall back to the diagonal and separate later
    pool = [p for p in feasible if p[0] != p[1]] or feasible
    return min(pool, key=lambda p: (p[0].lo, p[1].lo))


def _extend(z: Fraction, pairs: list[tuple[Interval, Interval]], depth: int) -> WitnessChain:
    z2 = 2 * z
    x, y = pairs[-1] if pairs else (_UNIT, _UNIT)
    while len(pairs) < depth:
        x, y = _next_pair(z2, x, y)
        pairs.append((x, y))
    return WitnessChain(z, tuple(pairs))


def _check_depth(depth: int, cap: int | None) -> None:
    if depth < 1:
        raise ValueError(f"depth must be >= 1, got {depth}")
    if cap is not None and depth > cap:
        raise ResourceCapError(f"witness depth {depth} exceeds cap {cap}")


def find_witness(z, depth: int, cap: int | None = DEFAULT_STAGE_CAP) -> WitnessChain:
    """Greedy nested witness for ``z`` in (0, 1) down to ``depth`` levels.

    At each level the children of the previous pair that still satisfy
    ``2z in X + Y`` are considered; among them the pair with the smallest
    ``lo(X)`` and then ``lo(Y)`` wins, except that pairs of distinct
    components beat the diagonal ``X == Y``.  Some targets, e.g. 1/4, only
    ever admit the diagonal; the chain then reports ``NOT_SEPARATED``.
    """
    z = as_rational(z)
    if not 0 < z < 1:
        raise ValueError(f"target {z} is outside (0, 1)")
    _check_depth(depth, cap)
    return _extend(z, [], depth)


def refine_witness(chain: WitnessChain, extra_depth: int, cap: int | None = DEFAULT_STAGE_CAP) -> WitnessChain:
    if extra_depth < 0:
        raise ValueError("extra_depth must be non-negative")
    _check_depth(chain.depth + extra_depth, cap)
    return _extend(chain.target, list(chain.pairs), chain.depth + extra_depth)


def witness_midpoint_residual(chain: WitnessChain, representatives=None) -> Fraction:
    """Worst ``|(u+v)/2 - z|`` over ``u in X_depth, v in Y_depth``.

    With ``representatives=(u, v)`` the residual of that specific pair is
    returned instead.  The worst case never exceeds ``3**-depth``.
    """
    z = chain.target
    if representatives is not None:
        u, v = (as_rational(r) for r in representatives)
        return abs((u + v) / 2 - z)
    x, y = chain.last
    return max(abs((x.lo + y.lo) / 2 - z), abs((x.hi + y.hi) / 2 - z))
