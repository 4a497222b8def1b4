"""Compact sets, the Hausdorff metric, and Vietoris neighbourhoods."""

import random
from fractions import Fraction as F

import pytest

from swmix.geometry import CompactRep, hausdorff_distance, vietoris_member
from swmix.intervals import IntervalSet

A = CompactRep(((F(0), F(1, 4)), (F(1, 2), F(3, 4))))
B = CompactRep(((F(1, 8), F(3, 8)),))
POINT = CompactRep(((F(1, 2), F(1, 2)),))


def random_compact(rng: random.Random) -> CompactRep:
    comps = []
    for _ in range(rng.randrange(1, 4)):
        lo = F(rng.randrange(0, 64), 64)
        hi = lo + F(rng.randrange(0, 16), 64)  # degenerate points allowed
        comps.append((lo, hi))
    return CompactRep(tuple(comps))  # the normal form merges overlaps


def test_hausdorff_frozen_values():
    assert hausdorff_distance(A, B) == F(3, 8)
    assert hausdorff_distance(POINT, A) == F(1, 2)
    assert hausdorff_distance(A, A) == 0


def test_metric_axioms_on_random_sets():
    rng = random.Random(41)
    for _ in range(300):
        x, y, z = (random_compact(rng) for _ in range(3))
        dxy = hausdorff_distance(x, y)
        assert dxy == hausdorff_distance(y, x)
        assert dxy >= 0
        assert hausdorff_distance(x, x) == 0
        assert hausdorff_distance(x, z) <= dxy + hausdorff_distance(y, z)


def test_distance_zero_iff_equal():
    rng = random.Random(43)
    for _ in range(100):
        x, y = random_compact(rng), random_compact(rng)
        if hausdorff_distance(x, y) == 0:
            assert x == y


def test_vietoris_membership():
    covers = [IntervalSet.of(F(-1, 100), F(1, 3)), IntervalSet.of(F(2, 5), F(1))]
    assert vietoris_member(A, covers)
    # Failing the cover condition: the union misses (1/2, 3/4).
    assert not vietoris_member(A, [IntervalSet.of(F(-1, 100), F(1, 3))])
    # Failing the meet condition: (9/10, 1) misses A entirely.
    assert not vietoris_member(
        A, [IntervalSet.of(F(-1, 100), F(1)), IntervalSet.of(F(9, 10), F(1))]
    )


def test_compact_rep_validation():
    with pytest.raises(ValueError):
        CompactRep(())
    with pytest.raises(ValueError):
        CompactRep(((F(1), F(0)),))


def test_compact_rep_normal_form_and_helpers():
    # Touching closed components merge into one.
    assert CompactRep(((F(0), F(1, 2)), (F(1, 2), F(1)))).components == ((F(0), F(1)),)
    pts = CompactRep.points([F(3, 4), F(1, 4)])
    assert pts.components == ((F(1, 4), F(1, 4)), (F(3, 4), F(3, 4)))
    closed = CompactRep.closure(IntervalSet.of(F(0), F(1)))
    assert closed.components == ((F(0), F(1)),)
    assert closed.distance_to(F(3, 2)) == F(1, 2)
    assert closed.distance_to(F(1, 2)) == 0
