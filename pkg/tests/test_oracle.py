import pytest

from threegap.cf import PeriodicSource, SurdSource
from threegap.errors import InvalidInput, PrecisionExhausted
from threegap.exact import surd_normalize
from threegap.oracle import brute_force_gaps, iter_partitions, oracle_extremes

PHI = surd_normalize(1, 1, 5, 2)
SQRT2 = surd_normalize(0, 1, 2, 1)


def test_phi_m3():
    s = brute_force_gaps(PHI, 3)
    assert s.points == (2 * PHI - 3, PHI - 1, 3 * PHI - 4)
    assert [round(float(g), 5) for g in s.gaps] == [0.23607, 0.38197, 0.23607, 0.1459]
    assert oracle_extremes(s) == (2 - PHI, 5 - 3 * PHI)


def test_phi_m1():
    s = brute_force_gaps(PHI, 1)
    assert s.points == (PHI - 1,)
    assert s.gaps == (PHI - 1, 2 - PHI)
    assert oracle_extremes(s) == (PHI - 1, 2 - PHI)


def test_sqrt2_m2_two_equal_gaps():
    s = brute_force_gaps(SQRT2, 2)
    assert s.points == (SQRT2 - 1, 2 * SQRT2 - 2)
    assert s.gaps == (SQRT2 - 1, SQRT2 - 1, 3 - 2 * SQRT2)
    assert s.multiset() == {SQRT2 - 1: 2, 3 - 2 * SQRT2: 1}


def test_sqrt2_m10_extremes():
    d_max, d_min = oracle_extremes(brute_force_gaps(SQRT2, 10))
    assert round(float(d_max), 5) == 0.17157
    assert round(float(d_min), 5) == 0.07107


def test_accepts_surd_source():
    assert brute_force_gaps(SurdSource(PHI), 5) == brute_force_gaps(PHI, 5)


@pytest.mark.parametrize("alpha", [PHI, SQRT2, surd_normalize(1, 1, 13, 2)], ids=str)
def test_incremental_matches_batch_and_invariants(alpha):
    for sample in iter_partitions(alpha, 300):
        if sample.m % 37 == 0:
            batch = brute_force_gaps(alpha, sample.m)
            assert batch.points == sample.points and batch.gaps == sample.gaps
        pts = sample.points
        assert len(set(pts)) == sample.m
        assert all(pts[i] < pts[i + 1] for i in range(len(pts) - 1))
        assert 0 < pts[0] and pts[-1] < 1
        assert sum(sample.gaps, 0 * alpha) == 1
        assert len(sample.multiset()) <= 3
        assert sum(sample.multiset().values()) == sample.m + 1


def test_interval_mode_matches_exact():
    src = PeriodicSource([0], [1, 2])
    exact = brute_force_gaps(src.to_surd(), 50)
    iv = brute_force_gaps(src, 50)
    assert not iv.exact and iv.precision == 128
    for e, i in zip(exact.gaps, iv.gaps):
        assert i.contains(e.to_interval(300).mid)
    d_max, d_min = oracle_extremes(iv)
    assert d_max.contains(oracle_extremes(exact)[0].to_interval(300).mid)


def test_interval_incremental_matches_batch():
    src = PeriodicSource([0], [1, 2])
    samples = list(iter_partitions(src, 40))
    batch = brute_force_gaps(src, 40)
    assert [p.lo for p in samples[-1].points] == [p.lo for p in batch.points]


def test_interval_multiset_unavailable():
    with pytest.raises(InvalidInput):
        brute_force_gaps(PeriodicSource([0], [1, 2]), 3).multiset()


def test_precision_exhaustion_reported():
    # cap below the start forces an immediate failure
    with pytest.raises(PrecisionExhausted):
        brute_force_gaps(PeriodicSource([0], [1, 2]), 10, precision=256, precision_cap=128)
    with pytest.raises(PrecisionExhausted):
        list(iter_partitions(PeriodicSource([0], [1, 2]), 10, precision=256, precision_cap=128))


def test_refinement_doubles_precision():
    # 4 bits cannot separate 20 points; the oracle refines until it can
    s = brute_force_gaps(PeriodicSource([0], [1, 2]), 20, precision=4)
    assert s.precision > 4


def test_bad_m():
    with pytest.raises(InvalidInput):
        brute_force_gaps(PHI, 0)
