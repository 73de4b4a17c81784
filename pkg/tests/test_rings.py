from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from forster_forge.errors import MalformedInput
from forster_forge.rings import (
    ExtField,
    FpQuotient,
    LocalInt,
    PrimeField,
    Product,
    QuadOrder,
    ZMod,
    ring_from_json,
)

from conftest import zmod_rings


def _chars(ring):
    return sorted(q.residue_char for q in ring.max_ideals())


def test_max_ideals_of_zmod12():
    assert _chars(ZMod(12)) == [2, 3]


def test_prime_field_is_local():
    assert len(PrimeField(7).max_ideals()) == 1


def test_max_ideals_of_360360():
    assert _chars(ZMod(360360)) == [2, 3, 5, 7, 11, 13]


def test_residue_examples():
    R = ZMod(12)
    (q3,) = [q for q in R.max_ideals() if q.residue_char == 3]
    assert R.residue(10, q3) == 1
    assert all(R.residue(R.one(), q) == q.field.one() for q in R.max_ideals())
    L = LocalInt(2)
    (m,) = L.max_ideals()
    assert L.residue(Fraction(5, 3), m) == 1


def test_crt_lift_examples():
    R = ZMod(6)
    q2, q3 = sorted(R.max_ideals(), key=lambda q: q.residue_char)
    assert R.crt_lift({q2: 1, q3: 2}) == 5
    assert R.crt_lift({q2: 0, q3: 0}) == 0
    P = Product((PrimeField(2), PrimeField(3)))
    targets = {}
    for q, v in zip(P.max_ideals(), (1, 2)):
        targets[q] = v
    assert P.crt_lift(targets) == (1, 2)


SMALL_RINGS = [
    ZMod(12),
    ZMod(30),
    ZMod(8),
    PrimeField(7),
    ExtField(3, (1, 0, 1)),
    FpQuotient(2, (0, 0, 1)),
    FpQuotient(3, (2, 0, 1)),
    Product((PrimeField(2), ZMod(9))),
]


@pytest.mark.parametrize("ring", SMALL_RINGS, ids=repr)
def test_unit_iff_residues_nonzero(ring):
    for x in ring.elements():
        by_residue = all(not q.field.is_zero(ring.residue(x, q)) for q in ring.max_ideals())
        assert ring.is_unit(x) == by_residue
        if by_residue:
            assert ring.mul(x, ring.inv(x)) == ring.one()


@pytest.mark.parametrize("ring", SMALL_RINGS, ids=repr)
def test_crt_lift_round_trip_exhaustive(ring):
    for x in ring.elements():
        res = {q: ring.residue(x, q) for q in ring.max_ideals()}
        y = ring.crt_lift(res)
        assert {q: ring.residue(y, q) for q in ring.max_ideals()} == res


@given(st.integers(2, 10**6), st.data())
def test_crt_lift_round_trip_large_moduli(n, data):
    R = ZMod(n)
    res = {q: data.draw(st.integers(0, q.residue_char - 1)) for q in R.max_ideals()}
    y = R.crt_lift(res)
    assert {q: R.residue(y, q) for q in R.max_ideals()} == res


@given(zmod_rings(), st.data())
def test_gcdex_bezout(ring, data):
    n = ring.modulus
    a, b = data.draw(st.integers(0, n - 1)), data.draw(st.integers(0, n - 1))
    g, s, t, u, w = ring.gcdex(a, b)
    assert (s * a + t * b) % n == g
    assert (u * a + w * b) % n == 0
    assert ring.is_unit((s * w - t * u) % n)


@pytest.mark.parametrize(
    "obj",
    [
        {"type": "zmod", "modulus": "360"},
        {"type": "gf", "p": "7"},
        {"type": "gf", "p": "3", "poly": ["1", "0", "1"]},
        {"type": "fp_quotient", "p": "3", "poly": ["0", "0", "1"]},
        {"type": "product", "factors": [{"type": "gf", "p": "2"}, {"type": "zmod", "modulus": "9"}]},
        {"type": "local_int", "p": "5"},
        {"type": "quad_order", "d": "-5"},
    ],
)
def test_ring_json_round_trip(obj):
    ring = ring_from_json(obj)
    assert ring_from_json(ring.to_json()) == ring


@pytest.mark.parametrize("obj", [{}, {"type": "nope"}, {"type": "gf", "p": "6"}, {"type": "zmod"}])
def test_bad_ring_descriptors(obj):
    with pytest.raises(MalformedInput):
        ring_from_json(obj)


def test_quad_order_arithmetic():
    O = QuadOrder(-5)
    x = (1, 1)  # 1 + sqrt(-5)
    assert O.norm(x) == 6
    assert O.mul(x, O.conj(x)) == (6, 0)


@given(st.sampled_from([FpQuotient(2, (0, 0, 1)), FpQuotient(3, (1, 0, 1)), FpQuotient(2, (0, 1, 1, 1))]), st.data())
def test_gcdex_bezout_poly_quotients(ring, data):
    elems = list(ring.elements())
    a, b = data.draw(st.sampled_from(elems)), data.draw(st.sampled_from(elems))
    g, s, t, u, w = ring.gcdex(a, b)
    assert ring.add(ring.mul(s, a), ring.mul(t, b)) == g
    assert ring.is_zero(ring.add(ring.mul(u, a), ring.mul(w, b)))
    assert ring.is_unit(ring.sub(ring.mul(s, w), ring.mul(t, u)))
