import pytest
from hypothesis import given, settings, strategies as st

from forster_forge.algebras import (
    RootOfUnity,
    StructureConstantAlgebra,
    dual_numbers,
    find_root_of_unity,
    is_azumaya,
    matrix_algebra,
    split_over_finite_field,
    symbol_algebra,
    verify_split,
)
from forster_forge.errors import BadRoot, NotAUnit
from forster_forge.rings import ExtField, PrimeField, ZMod


def test_n1_is_the_ring():
    F = PrimeField(7)
    A = symbol_algebra(3, 5, RootOfUnity(F, 1, 1))
    assert A.dim == 1 and is_azumaya(A)


def test_quaternion_table():
    F = PrimeField(5)
    A = symbol_algebra(4, 4, RootOfUnity(F, 4, 2))
    one, y, x, xy = (A.basis(i) for i in range(4))
    minus_one = A.scale(4, one)
    assert A.mul(x, x) == minus_one
    assert A.mul(y, y) == minus_one
    assert A.mul(x, y) == xy
    assert A.mul(y, x) == A.scale(4, xy)


def test_azumaya_examples():
    assert is_azumaya(matrix_algebra(ZMod(15), 2))
    R = ZMod(15)
    assert is_azumaya(StructureConstantAlgebra(R, [[[1]]], [1]))
    cert = is_azumaya(dual_numbers(R))
    assert not cert and not R.is_unit(cert.det)


def test_symbol_rejects_bad_input():
    F = PrimeField(5)
    with pytest.raises(NotAUnit):
        symbol_algebra(0, 1, RootOfUnity(F, 4, 2))
    with pytest.raises(BadRoot):
        RootOfUnity(F, 1, 2)
    with pytest.raises(BadRoot):
        RootOfUnity(ZMod(6), 5, 2)  # 2 is not a unit


def _split_ok(A):
    data = split_over_finite_field(A)
    assert verify_split(A, data)
    assert all(data.checks.values())
    return data


def test_split_examples():
    F5 = PrimeField(5)
    _split_ok(symbol_algebra(2, 3, RootOfUnity(F5, 4, 2)))
    F7 = PrimeField(7)
    rho = find_root_of_unity(F7, 3)
    _split_ok(symbol_algebra(1, 3, rho))
    F9 = ExtField(3, (1, 0, 1))
    g = (1, 1)
    assert F9.pow(g, 4) != F9.one()
    _split_ok(symbol_algebra(g, g, RootOfUnity(F9, F9.from_int(-1), 2)))


def test_one_b_has_split_x():
    F = PrimeField(13)
    rho = find_root_of_unity(F, 3)
    A = symbol_algebra(1, 2, rho)
    x = A.basis(3)  # x^1 y^0 at index 1*n + 0
    assert A.pow(x, 3) == A.unit


def test_matrix_algebra_splits_over_field():
    F = PrimeField(7)
    _split_ok(matrix_algebra(F, 2))


@pytest.mark.parametrize("q,n", [(5, 2), (7, 3), (13, 2), (13, 3)])
def test_symbol_algebras_are_azumaya_and_split(q, n):
    F = PrimeField(q)
    rho = find_root_of_unity(F, n)
    for a, b in [(2, 3), (q - 1, q - 1), (1, 2)]:
        A = symbol_algebra(a, b, rho)
        assert is_azumaya(A)
        _split_ok(A)


@settings(max_examples=15)
@given(st.sampled_from([15, 21, 35, 39]), st.data())
def test_symbols_over_zmod_are_azumaya(n, data):
    R = ZMod(n)
    units = [u for u in range(n) if R.is_unit(u)]
    a = data.draw(st.sampled_from(units))
    b = data.draw(st.sampled_from(units))
    A = symbol_algebra(a, b, RootOfUnity(R, n - 1, 2))
    assert is_azumaya(A)


def test_tensor_and_opposite():
    F = PrimeField(5)
    rho = RootOfUnity(F, 4, 2)
    A, B = symbol_algebra(2, 3, rho), symbol_algebra(2, 2, rho)
    T = A.tensor(B)
    assert T.dim == 16 and is_azumaya(T)
    _split_ok(T)  # (2,3)(2,2) ~ (2,6) = (2,1), which is split
    op = A.opposite()
    assert is_azumaya(op)
    assert op.mul(op.basis(1), op.basis(2)) == A.mul(A.basis(2), A.basis(1))


def test_algebra_json_round_trip():
    A = symbol_algebra(2, 3, RootOfUnity(PrimeField(7), 6, 2))
    assert StructureConstantAlgebra.from_json(A.to_json()) == A
