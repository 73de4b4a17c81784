import pytest
from hypothesis import given, settings, strategies as st

from forster_forge.algebras import dual_numbers
from forster_forge.errors import NoSolution, NotCharP, NotCyclicP, RankMismatch
from forster_forge.galois import (
    GaloisExtensionData,
    artin_schreier,
    artin_schreier_descent,
    check_descent,
    comparison_matrix,
    is_galois,
    small_char_p_rings,
    split_extension,
    trivial_action,
    wp_preimage,
)
from forster_forge.rings import FpQuotient, PrimeField, ZMod

RINGS = small_char_p_rings(27)


def test_f2_examples():
    F = PrimeField(2)
    split = artin_schreier(F, 0)
    x = split.algebra.basis(1)
    A = split.algebra
    assert A.mul(x, A.add(x, A.unit)) == A.zero()
    f4 = artin_schreier(F, 1)
    A = f4.algebra
    # x^2 + x + 1 has no root in F2, so every nonzero element is a unit
    for v in [(1, 0), (0, 1), (1, 1)]:
        assert any(A.mul(v, w) == A.unit for w in [(1, 0), (0, 1), (1, 1)])
    assert is_galois(f4)
    assert artin_schreier_descent(f4).a == 1


def test_truncated_polynomial_example():
    R = FpQuotient(3, (0, 0, 0, 1))
    t = R.coerce([0, 1])
    assert is_galois(artin_schreier(R, t))


def test_split_and_trivial_actions():
    F = PrimeField(3)
    assert is_galois(split_extension(F, 3))
    assert is_galois(split_extension(ZMod(10), 4))
    cert = is_galois(trivial_action(dual_numbers(PrimeField(2)), 2))
    assert not cert and cert.witness is not None
    with pytest.raises(RankMismatch):
        is_galois(trivial_action(dual_numbers(PrimeField(2)), 3))


def test_descent_examples():
    F = PrimeField(3)
    res = artin_schreier_descent(split_extension(F, 3))
    assert wp_preimage(F, res.a) is not None
    R = FpQuotient(3, (0, 0, 1))
    t = R.coerce([0, 1])
    res = artin_schreier_descent(artin_schreier(R, t))
    assert wp_preimage(R, R.sub(res.a, t)) is not None
    assert all(check_descent(artin_schreier(R, t), res.a, res.x).values())


def test_descent_rejections():
    with pytest.raises(NotCyclicP):
        artin_schreier_descent(split_extension(PrimeField(3), 2))
    with pytest.raises(NoSolution):
        artin_schreier_descent(trivial_action(dual_numbers(PrimeField(2)), 2))
    with pytest.raises(NotCharP):
        artin_schreier(ZMod(6), 1)


def test_bad_sigma_rejected():
    from forster_forge.errors import MalformedInput
    from forster_forge.linalg import ExactMatrix

    F = PrimeField(2)
    A = artin_schreier(F, 1).algebra
    with pytest.raises(MalformedInput):
        GaloisExtensionData(F, A, ExactMatrix(F, [[0, 1], [1, 0]]), 2)


def test_ring_menu():
    assert len(RINGS) == len({repr(r) for r in RINGS})
    assert all(r.order() <= 27 for r in RINGS)
    assert {r.characteristic() for r in RINGS} >= {2, 3, 5, 7, 11, 13}


@settings(max_examples=40)
@given(st.sampled_from(RINGS), st.data())
def test_artin_schreier_round_trip(R, data):
    elems = list(R.elements())
    a = data.draw(st.sampled_from(elems))
    E = artin_schreier(R, a)
    assert is_galois(E)
    res = artin_schreier_descent(E)
    assert wp_preimage(R, R.sub(res.a, a)) is not None
    assert R.is_unit(res.iso_det)


def test_extension_json_round_trip():
    E = artin_schreier(PrimeField(3), 2)
    back = GaloisExtensionData.from_json(E.to_json())
    assert back.sigma == E.sigma and back.algebra == E.algebra
    assert comparison_matrix(back) == comparison_matrix(E)
