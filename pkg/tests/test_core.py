"""Core evaluator: exact images, preimages, orbits, and itineraries."""

import random
from fractions import Fraction as F

import pytest

from swmix.core import (
    AffinePiece,
    Numerics,
    PiecewiseAffineMap,
    SwitchedSystem,
    eval_interval,
    eval_point,
    image_of,
    itinerary_word,
    preimage,
    word_preimage,
)
from swmix.demo import tent_orbit, tent_partition, tent_system
from swmix.errors import OutsidePartition, UndefinedAtPoint, UndefinedOnSet
from swmix.intervals import Interval, IntervalSet
from swmix.language import FullShift
from swmix.words import Word

from helpers import random_system, rotation

TENT = tent_system()


def test_eval_point_frozen_values():
    assert eval_point(TENT, Word.from_string("0"), F(3, 10)) == F(3, 5)
    assert eval_point(TENT, Word.from_string("01"), F(3, 10)) == F(4, 5)
    # Unclamped orbits roam outside the box: 1/3 -> 4/3 -> -2/3.
    assert eval_point(TENT, Word.from_string("11"), F(1, 3)) == F(-2, 3)


def test_eval_point_rejects_bad_words():
    with pytest.raises(ValueError):
        eval_point(TENT, (), F(1, 2))
    with pytest.raises(ValueError):
        eval_point(TENT, Word.of(2), F(1, 2))


def test_eval_interval_frozen_values():
    img = eval_interval(TENT, Word.from_string("0000"), IntervalSet.of(F(0), F(1, 10)))
    assert img == IntervalSet.of(F(0), F(8, 5))
    pre = word_preimage(TENT, Word.from_string("0000"), IntervalSet.of(F(0), F(4, 5)))
    assert pre == IntervalSet.of(F(0), F(1, 20))


def test_concatenation_composes_left_to_right():
    rng = random.Random(7)
    for _ in range(50):
        u = Word(tuple(rng.randrange(2) for _ in range(rng.randrange(1, 5))))
        v = Word(tuple(rng.randrange(2) for _ in range(rng.randrange(1, 5))))
        x = F(rng.getrandbits(16), 2 ** 16)
        assert eval_point(TENT, u + v, x) == eval_point(TENT, v, eval_point(TENT, u, x))


def test_point_orbit_lands_in_enclosure():
    rng = random.Random(11)
    for _ in range(60):
        system = random_system(rng)
        w = Word(tuple(rng.randrange(system.m) for _ in range(rng.randrange(1, 6))))
        x = F(1 + rng.getrandbits(12), 2 ** 13)  # interior of (0, 1/2)
        src = IntervalSet.of(F(0), F(1))
        try:
            y = eval_point(system, w, x)
        except UndefinedAtPoint:
            continue
        img = eval_interval(system, w, src, partial=True)
        assert img.closure_contains(y)


def test_preimage_galois_on_global_maps():
    rng = random.Random(13)
    target = IntervalSet.of(F(1, 3), F(2, 3))
    for _ in range(100):
        w = Word(tuple(rng.randrange(2) for _ in range(rng.randrange(1, 7))))
        x = F(rng.getrandbits(20), 2 ** 20)
        pre = word_preimage(TENT, w, target)
        assert pre.contains(x) == target.contains(eval_point(TENT, w, x))


def test_preimage_confined_to_piece_domains():
    rot = rotation(F(1, 3))
    pre = preimage(rot, IntervalSet.of(F(0), F(1)))
    # Both pieces pull the unit interval back into their own open domains.
    assert pre == IntervalSet.from_intervals(
        [Interval(F(0), F(2, 3)), Interval(F(2, 3), F(1))]
    )


def test_image_of_strict_vs_partial():
    gap = PiecewiseAffineMap(
        pieces=(
            AffinePiece(Interval(F(0), F(1, 4)), F(2), F(0)),
            AffinePiece(Interval(F(1, 2), F(1)), F(1), F(0)),
        )
    )
    src = IntervalSet.of(F(0), F(1))
    with pytest.raises(UndefinedOnSet):
        image_of(gap, src)
    img = image_of(gap, src, partial=True)
    assert img == IntervalSet.from_intervals(
        [Interval(F(0), F(1, 2)), Interval(F(1, 2), F(1))]
    )


def test_value_at_undefined_between_pieces():
    rot = rotation(F(1, 3))
    with pytest.raises(UndefinedAtPoint):
        rot.value_at(F(2, 3))
    assert rot.value_at(F(1, 2)) == F(5, 6)


def test_system_requires_full_coverage():
    gap = PiecewiseAffineMap(
        pieces=(AffinePiece(Interval(F(0), F(1, 4)), F(2), F(0)),)
    )
    with pytest.raises(ValueError, match="not defined on the whole bounding box"):
        SwitchedSystem(
            maps=(gap,), language=FullShift(1), bounds=Interval(F(0), F(1))
        )


def test_clamp_kill_box_is_closed():
    system = tent_system(clamp=True)
    assert system.inside_kill_box(IntervalSet.of(F(1, 2), F(3, 2)))
    assert not system.inside_kill_box(IntervalSet.of(F(1), F(2)))
    assert system.point_in_kill_box(F(1))
    assert not system.point_in_kill_box(F(11, 10))


def test_itinerary_matches_reference_orbit():
    partition = tent_partition()
    for x in (F(3, 10), F(1, 7), F(123, 1024)):
        word = itinerary_word(TENT, partition, x, 12)
        ref = tent_orbit(x, 12)
        for n in range(1, 13):
            assert eval_point(TENT, word.prefix(n), x) == ref[n]


def test_itinerary_frozen_and_boundary_tie():
    partition = tent_partition()
    assert itinerary_word(TENT, partition, F(3, 10), 2) == Word.from_string("01")
    # 1/2 lies in both cell closures; the first listed cell wins.
    assert itinerary_word(TENT, partition, F(1, 2), 1) == Word.of(0)


def test_itinerary_outside_partition():
    half_only = [(IntervalSet.of(F(0), F(1, 2)), 0)]
    with pytest.raises(OutsidePartition):
        itinerary_word(TENT, half_only, F(3, 10), 2)


def test_float_mode_widens_outward():
    system = tent_system(numerics=Numerics(mode="float"))
    img = eval_interval(
        system, Word.from_string("0000"), IntervalSet.of(F(0), F(1, 10))
    )
    comp = img.components[0]
    assert comp.lo <= 0 and comp.hi >= 1.6


def test_numerics_validation():
    with pytest.raises(ValueError):
        Numerics(mode="decimal")
    with pytest.raises(ValueError):
        Numerics(mode="float", tau=0.0)
    assert Numerics().widen == 0
