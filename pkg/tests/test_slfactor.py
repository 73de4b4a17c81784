import random

import pytest
from hypothesis import given, strategies as st

from forster_forge.errors import MalformedInput, NotSL
from forster_forge.linalg import ExactMatrix
from forster_forge.rings import PrimeField, ZMod
from forster_forge.sampling import random_sl
from forster_forge.slfactor import ElementaryWord, factor_sl, position_sequence, word_length


def test_m1_is_empty():
    assert position_sequence(1).positions == ()
    a = ExactMatrix.identity(ZMod(6), 1)
    assert factor_sl(a).coefficients == ()


def test_word_lengths():
    assert [word_length(m) for m in range(1, 6)] == [0, 4, 12, 25, 44]
    for m in range(1, 7):
        assert len(position_sequence(m)) == word_length(m)


def test_m2_word_is_fixed():
    assert position_sequence(2).positions == ((1, 2), (2, 1), (1, 2), (2, 1))


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_identity_gives_zeros(m):
    R = ZMod(30)
    word = factor_sl(ExactMatrix.identity(R, m))
    assert set(word.coefficients) <= {0}
    assert word.evaluate(R) == ExactMatrix.identity(R, m)


@pytest.mark.parametrize("n", [6, 720, 30030])
def test_elementary_e12(n):
    R = ZMod(n)
    a = ExactMatrix(R, [[1, 5], [0, 1]])
    assert factor_sl(a).evaluate(R) == a


def test_random_sl3_over_720():
    R = ZMod(720)
    rng = random.Random(11)
    for _ in range(20):
        a = random_sl(R, 3, rng)
        word = factor_sl(a)
        assert word.evaluate(R) == a
        assert word.positions == position_sequence(3).positions


@given(
    st.sampled_from([2, 6, 12, 720, 30030]),
    st.integers(2, 4),
    st.integers(0, 10**6),
)
def test_multiply_back(n, m, seed):
    R = ZMod(n)
    a = random_sl(R, m, random.Random(seed))
    word = factor_sl(a)
    assert len(word.coefficients) == word_length(m)
    assert word.positions == position_sequence(m).positions
    assert word.evaluate(R) == a


@given(st.sampled_from([2, 5, 13]), st.integers(2, 4), st.integers(0, 10**6))
def test_multiply_back_over_fields(p, m, seed):
    F = PrimeField(p)
    a = random_sl(F, m, random.Random(seed))
    assert factor_sl(a).evaluate(F) == a


def test_not_sl():
    R = ZMod(6)
    with pytest.raises(NotSL):
        factor_sl(ExactMatrix(R, [[5, 0], [0, 1]]))
    with pytest.raises(MalformedInput):
        factor_sl(ExactMatrix(R, [[1, 0, 0], [0, 1, 0]]))


def test_word_json_round_trip():
    R = ZMod(720)
    a = random_sl(R, 3, random.Random(3))
    word = factor_sl(a)
    back = ElementaryWord.from_json(word.to_json(R), R)
    assert back == word
    with pytest.raises(MalformedInput):
        ElementaryWord(2, ((1, 1),))
