import random

import pytest
from fractions import Fraction
from hypothesis import given, strategies as st

from forster_forge.errors import MalformedInput
from forster_forge.hilbert import (
    bad_places,
    hilbert_symbol,
    hilbert_symbol_oracle,
    parse_place,
    product_over_places,
)

PLACES = [2, 3, 5, 7, 13, "inf"]
nonzero = st.integers(-200, 200).filter(bool)


def test_examples():
    for place in PLACES:
        assert hilbert_symbol(1, 7, place) == 1
    assert hilbert_symbol(-1, -1, 2) == -1
    assert hilbert_symbol_oracle(-1, -1, 2) == -1
    assert hilbert_symbol(-1, -1, "inf") == -1
    for a, b in [(-1, 3), (2, 5), (-2, -7)]:
        assert product_over_places(a, b)[0] == 1


def test_known_values():
    assert hilbert_symbol(2, 3, 3) == -1
    assert hilbert_symbol(3, 3, 3) == hilbert_symbol(3, -1, 3) == -1
    assert hilbert_symbol(5, 2, 5) == -1
    assert hilbert_symbol(Fraction(1, 3), 3, 3) == hilbert_symbol(3, 3, 3)


def test_bad_input():
    with pytest.raises(MalformedInput):
        hilbert_symbol(0, 1, 3)
    with pytest.raises(MalformedInput):
        parse_place(4)
    assert parse_place("infinity") == "inf"
    assert bad_places(6, -5) == [2, 3, 5, "inf"]


@given(nonzero, nonzero, st.sampled_from(PLACES))
def test_closed_form_matches_oracle(a, b, place):
    assert hilbert_symbol(a, b, place) == hilbert_symbol_oracle(a, b, place)


@given(nonzero, nonzero, nonzero, st.sampled_from(PLACES))
def test_bilinear_and_symmetric(a, b, c, place):
    s = hilbert_symbol
    assert s(a, b * c, place) == s(a, b, place) * s(a, c, place)
    assert s(a, b, place) == s(b, a, place)
    assert s(a, -a, place) == 1
    assert s(a, b * b, place) == 1


@given(st.integers(-10**6, 10**6).filter(bool), st.integers(-10**6, 10**6).filter(bool))
def test_product_formula(a, b):
    prod, values = product_over_places(a, b)
    assert prod == 1
    # away from bad places the symbol is 1
    for p in (11, 17, 19):
        if p not in values:
            assert hilbert_symbol(a, b, p) == 1
