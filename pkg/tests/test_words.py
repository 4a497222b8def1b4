"""Switching words: construction, concatenation order, string forms."""

import pytest

from swmix.words import Word


def test_construction_and_validation():
    w = Word.of(0, 1, 0)
    assert w.symbols == (0, 1, 0)
    assert len(w) == 3
    assert list(w) == [0, 1, 0]
    assert w[1] == 1
    with pytest.raises(ValueError):
        Word(())
    with pytest.raises(ValueError):
        Word.of(0, -1)


def test_string_round_trip():
    w = Word.from_string("0110")
    assert w == Word.of(0, 1, 1, 0)
    assert w.as_string() == "0110"
    # Alphabets past ten switch to a dotted rendering.
    assert Word.of(3, 11).as_string() == "3.11"


def test_concatenation_is_application_order():
    u = Word.of(0)
    v = Word.of(1, 1)
    assert (u + v).symbols == (0, 1, 1)


def test_prefix():
    w = Word.of(0, 1, 0, 1)
    assert w.prefix(2) == Word.of(0, 1)
    assert w.prefix(4) == w
    with pytest.raises(ValueError):
        w.prefix(0)
    with pytest.raises(ValueError):
        w.prefix(5)
