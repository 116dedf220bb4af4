"""Exit criteria for the package; each test prints one verdict line in the summary."""

import random
import time
from fractions import Fraction as F

import pytest

from cantor_midpoints.cantor import in_limit_set, stage
from cantor_midpoints.cover import cover_report
from cantor_midpoints.intervals import Interval, IntervalSet, contains_point, is_subset, measure
from cantor_midpoints.midpoint import (
    build_certificates,
    certified_coverage,
    check_partition_lemma,
    check_scaling_lemma,
    midpoint_set,
    midpoint_set_bruteforce,
    stage_midpoint_set,
)
from cantor_midpoints.witness import find_witness, witness_midpoint_residual

UNIT_OPEN = IntervalSet.open(0, 1)


def _random_unit_set(rng, max_components=6, max_den=12):
    comps = []
    for _ in range(rng.randint(0, max_components)):
        q1, q2 = rng.randint(1, max_den), rng.randint(1, max_den)
        lo, hi = sorted((F(rng.randint(0, q1), q1), F(rng.randint(0, q2), q2)))
        if lo == hi:
            comps.append(Interval.point(lo))
        else:
            comps.append(Interval(lo, hi, rng.random() < 0.5, rng.random() < 0.5))
    return IntervalSet(comps)


def _random_set(rng):
    comps = []
    for _ in range(rng.randint(0, 6)):
        q1, q2 = rng.randint(1, 20), rng.randint(1, 20)
        a, b = sorted((F(rng.randint(-40, 40), q1), F(rng.randint(-40, 40), q2)))
        if a == b:
            comps.append(Interval.point(a))
        else:
            comps.append(Interval(a, b, rng.random() < 0.5, rng.random() < 0.5))
    return IntervalSet(comps)


def _random_c1(rng):
    while True:
        p = rng.randint(-50, 50)
        if p:
            return F(p, rng.randint(1, 50))


@pytest.mark.criterion(1, "M(C_1) = (0,1) exactly, one open component, measure 1, < 1 s")
def test_claim_one():
    t0 = time.perf_counter()
    m = midpoint_set(stage(1).set)
    elapsed = time.perf_counter() - t0
    assert m == UNIT_OPEN
    assert m.components == (Interval(0, 1, False, False),)
    assert measure(m) == 1
    assert elapsed < 1.0


@pytest.mark.criterion(2, "M(C_i) = (0,1): pairwise i<=10, self-similar i<=14, methods agree, < 2 min")
def test_claim_two():
    t0 = time.perf_counter()
    pairwise = {i: stage_midpoint_set(i, "pairwise") for i in range(1, 11)}
    selfsim = {i: stage_midpoint_set(i, "selfsimilar") for i in range(1, 15)}
    elapsed = time.perf_counter() - t0
    assert all(m == UNIT_OPEN for m in pairwise.values())
    assert all(m == UNIT_OPEN for m in selfsim.values())
    assert all(pairwise[i] == selfsim[i] for i in pairwise)
    assert elapsed < 120


@pytest.mark.criterion(3, "measure(C_n) = (2/3)^n exactly for n = 1..20")
def test_measure_trend():
    for n in range(1, 21):
        assert measure(stage(n, cap=20).set) == F(2, 3) ** n


@pytest.mark.criterion(4, "partition lemma holds for every valid (i, m, n), i <= 4, > 3000 cases")
def test_partition_lemma_exhaustive():
    cases = failures = 0
    for i in range(1, 5):
        top = 3**i
        for m in range(1, top + 1):
            for n in range(1, top + 1):
                if m != n and (m + n) % 2 == 0:
                    cases += 1
                    failures += not check_partition_lemma(i, m, n)
    assert cases > 3000
    assert failures == 0


@pytest.mark.criterion(5, "scaling lemma passes 1000 randomized trials")
def test_scaling_lemma_random():
    rng = random.Random(20240505)
    failures = 0
    for _ in range(1000):
        t = _random_set(rng)
        c1 = _random_c1(rng)
        c2 = F(rng.randint(-50, 50), rng.randint(1, 50))
        failures += not check_scaling_lemma(t, c1, c2)
    assert failures == 0


@pytest.mark.criterion(6, "certificates i <= 6: sources in C_i, coverage of (0,1) with scaled copies")
def test_certificates():
    for i in range(1, 7):
        certs = build_certificates(i)
        c_i = stage(i).set
        for cert in certs:
            assert is_subset(cert.sources(), c_i)
            assert cert.is_valid()
        assert is_subset(UNIT_OPEN, certified_coverage(i))


@pytest.mark.criterion(7, "200 random z: depth-12 chains nested, monotone, Cantor endpoints, residual <= 3^-12, < 1 min")
def test_witness_convergence():
    rng = random.Random(77)
    bound = F(1, 3**12)
    t0 = time.perf_counter()
    for _ in range(200):
        q = rng.randint(2, 10**6)
        z = F(rng.randint(1, q - 1), q)
        chain = find_witness(z, 12)
        prev = None
        for x, y in chain.pairs:
            if prev is not None:
                assert prev[0].lo <= x.lo and x.hi <= prev[0].hi
                assert prev[1].lo <= y.lo and y.hi <= prev[1].hi
            for end in (x.lo, x.hi, y.lo, y.hi):
                assert in_limit_set(end)
            prev = (x, y)
        assert witness_midpoint_residual(chain) <= bound
    assert time.perf_counter() - t0 < 60


@pytest.mark.criterion(8, "brute-force midpoints on grid 3^6 lie in the exact midpoint set; stage 2 dense")
def test_oracle_equivalence():
    d = 3**6
    rng = random.Random(8)
    sets = [_random_unit_set(rng) for _ in range(100)] + [stage(i).set for i in range(1, 5)]
    for a in sets:
        m = midpoint_set(a)
        assert all(contains_point(m, p) for p in midpoint_set_bruteforce(a, d))
    pts = midpoint_set_bruteforce(stage(2).set, d)
    assert all(F(k, d) in pts for k in range(1, d))


@pytest.mark.criterion(9, "cover report grid 3^4, stage 8, depth 12: 80 spheres inside C_8, measure_S = 1")
def test_cover_report():
    report = cover_report(3**4, 8, 12)
    assert report.sample_count == 80
    c8 = stage(8).set
    for a in report.assignments:
        left, right = a.points
        assert a.radius > 0
        assert contains_point(c8, left) and contains_point(c8, right)
    assert report.measure_B_stage == F(256, 6561)
    assert report.measure_S == 1


@pytest.mark.criterion(10, "0 and 1 are not in M(C_i) for i <= 10")
def test_openness():
    for i in range(1, 11):
        m = midpoint_set(stage(i).set)
        assert not contains_point(m, 0)
        assert not contains_point(m, 1)
