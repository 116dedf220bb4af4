"""Two-point spheres inside a thin Cantor stage centered at every sample of (0, 1)."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import intervals as iv
from .cantor import DEFAULT_STAGE_CAP, in_limit_set, stage
from .intervals import as_rational, format_rational
from .midpoint import stage_midpoint_set
from .witness import WitnessChain, find_witness, witness_midpoint_residual

__all__ = ["CoverError", "SphereAssignment", "CoverReport", "assign_sphere", "cover_report"]


class CoverError(RuntimeError):
    """A sample center could not be given a sphere inside the stage."""


@dataclass(frozen=True)
class SphereAssignment:
    center: Fraction
    radius: Fraction
    certified_at_level: int
    exact: bool
    residual_bound: Fraction
    chain: WitnessChain | None = field(default=None, compare=False, repr=False)

    @property
    def points(self) -> tuple[Fraction, Fraction]:
        return self.center - self.radius, self.center + self.radius

    def to_dict(self) -> dict:
        left, right = self.points
        out = {
            "z": format_rational(self.center),
            "r": format_rational(self.radius),
            "points": [format_rational(left), format_rational(right)],
            "exact": self.exact,
            "certified_at_level": self.certified_at_level,
            "residual_bound": format_rational(self.residual_bound),
        }
        if self.chain is not None:
            out["separation"] = self.chain.status
        return out


def _exact_pair(chain: WitnessChain) -> tuple[Fraction, Fraction] | None:
    z = chain.target
    x_comp, _ = chain.last
    for x in (x_comp.lo, x_comp.hi):
        y = 2 * z - x
        if x < z and y <= 1 and in_limit_set(x) and in_limit_set(y):
            return x, y
    return None


def assign_sphere(z, max_depth: int, cap: int | None = DEFAULT_STAGE_CAP) -> SphereAssignment:
    """Radius ``r > 0`` with ``z - r`` and ``z + r`` both in the Cantor stage C_max_depth.

    When an endpoint of the final left interval pairs with a Cantor point
    around ``z`` the sphere is exact (both points in the Cantor set itself).
    Otherwise the points are taken inside the final witness intervals.
    """
    z = as_rational(z)
    if not 0 < z < 1:
        raise ValueError(f"center {z} is outside (0, 1)")
    chain = find_witness(z, max_depth, cap)
    exact = _exact_pair(chain)
    if exact is not None:
        x, _ = exact
        return SphereAssignment(z, z - x, max_depth, True, Fraction(0), chain)
    x_comp, y_comp = chain.last
    if chain.separated:
        radius = (y_comp.midpoint - x_comp.midpoint) / 2
    else:
        radius = min(z - x_comp.lo, x_comp.hi - z)
    if radius <= 0:
        raise CoverError(f"no positive radius found for z = {z}")
    return SphereAssignment(z, radius, max_depth, False, witness_midpoint_residual(chain), chain)


@dataclass
class CoverReport:
    grid_denominator: int
    stage_level: int
    max_depth: int
    assignments: list[SphereAssignment]
    measure_S: Fraction
    measure_B_stage: Fraction

    @property
    def sample_count(self) -> int:
        return len(self.assignments)

    @property
    def exact_count(self) -> int:
        return sum(a.exact for a in self.assignments)

    def to_dict(self) -> dict:
        return {
            "sample": {"grid_denominator": self.grid_denominator, "count": self.sample_count},
            "stage_level": self.stage_level,
            "max_depth": self.max_depth,
            "measure_S": format_rational(self.measure_S),
            "measure_B_stage": format_rational(self.measure_B_stage),
            "exact_assignments": self.exact_count,
            "assignments": [a.to_dict() for a in self.assignments],
        }


def cover_report(
    grid_denominator: int,
    stage_level: int,
    max_depth: int,
    cap: int | None = DEFAULT_STAGE_CAP,
) -> CoverReport:
    """Assign a sphere inside C_stage_level to every center ``k/grid_denominator``."""
    if grid_denominator < 2:
        raise ValueError("grid_denominator must be >= 2")
    if stage_level < 1:
        raise ValueError("stage_level must be >= 1")
    if max_depth < stage_level:
        raise ValueError("max_depth must be >= stage_level")
    b = stage(stage_level, cap).set
    assignments = []
    for k in range(1, grid_denominator):
        z = Fraction(k, grid_denominator)
        a = assign_sphere(z, max_depth, cap)
        left, right = a.points
        if not (a.radius > 0 and iv.contains_point(b, left) and iv.contains_point(b, right)):
            raise CoverError(f"sphere about z = {z} leaves stage C_{stage_level}")
        assignments.append(a)
    s = stage_midpoint_set(stage_level, "selfsimilar", stage_cap=cap)
    return CoverReport(
        grid_denominator=grid_denominator,
        stage_level=stage_level,
        max_depth=max_depth,
        assignments=assignments,
        measure_S=iv.measure(s),
        measure_B_stage=iv.measure(b),
    )
