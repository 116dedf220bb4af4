import random
from fractions import Fraction as F

import pytest

from cantor_midpoints.cantor import in_limit_set, stage
from cantor_midpoints.cover import CoverError, assign_sphere, cover_report
from cantor_midpoints.intervals import contains_point


def test_half_exact():
    a = assign_sphere(F(1, 2), 8)
    assert a.exact and a.radius == F(1, 2)
    assert a.points == (0, 1)


def test_third_exact():
    a = assign_sphere(F(1, 3), 8)
    assert a.exact and a.radius == F(1, 3)
    assert a.points == (0, F(2, 3))


def test_quarter_certificate():
    a = assign_sphere(F(1, 4), 12)
    assert not a.exact
    assert a.radius > 0
    assert a.residual_bound <= F(1, 3**12)
    left, right = a.points
    assert contains_point(stage(12).set, left) and contains_point(stage(12).set, right)


@pytest.mark.parametrize("z", [F(0), F(1), F(-1, 3)])
def test_rejects_outside(z):
    with pytest.raises(ValueError):
        assign_sphere(z, 4)


def test_soundness_random():
    rng = random.Random(21)
    c10 = stage(10).set
    for _ in range(150):
        z = F(rng.randint(1, 9999), 10**4)
        a = assign_sphere(z, 10)
        left, right = a.points
        assert a.radius > 0
        assert contains_point(c10, left) and contains_point(c10, right)
        if a.exact:
            assert in_limit_set(left) and in_limit_set(right)
        else:
            assert a.chain is not None and a.chain.is_valid()
            assert a.residual_bound <= F(1, 3**10)


def test_report_grid_81():
    r = cover_report(3**4, 8, 12)
    assert r.sample_count == 80
    assert [a.center for a in r.assignments] == [F(k, 81) for k in range(1, 81)]
    assert r.measure_B_stage == F(256, 6561)
    assert r.measure_S == 1
    c8 = stage(8).set
    for a in r.assignments:
        left, right = a.points
        assert contains_point(c8, left) and contains_point(c8, right)


def test_report_grid_two():
    r = cover_report(2, 3, 3)
    assert r.sample_count == 1
    assert r.assignments[0].exact and r.assignments[0].center == F(1, 2)


def test_report_non_triadic_grid():
    r = cover_report(20, 6, 9)
    assert r.sample_count == 19
    c6 = stage(6).set
    assert all(contains_point(c6, p) for a in r.assignments for p in a.points)


@pytest.mark.parametrize("level", range(1, 9))
def test_gap_grows(level):
    r = cover_report(2, level, level)
    gap = r.measure_S - r.measure_B_stage
    assert gap == 1 - F(2, 3) ** level
    if level > 1:
        assert gap > 1 - F(2, 3) ** (level - 1)


def test_report_validation():
    with pytest.raises(ValueError):
        cover_report(1, 3, 3)
    with pytest.raises(ValueError):
        cover_report(4, 5, 4)


def test_report_serializes():
    d = cover_report(3, 2, 4).to_dict()
    assert d["measure_S"] == "1/1" and d["measure_B_stage"] == "4/9"
    assert d["sample"] == {"grid_denominator": 3, "count": 2}
    assert d["assignments"][0]["z"] == "1/3"


def test_cover_error_is_runtime_error():
    assert issubclass(CoverError, RuntimeError)
