import itertools
import random

import pytest
from hypothesis import given, strategies as st

from forster_forge.errors import NotUnimodular, PreconditionViolated, TooFewElements
from forster_forge.forster_swan import (
    extend_generator,
    ideal_two_generators,
    is_unimodular,
    lift_generators,
    minimal_generators,
    principal_generator,
    stable_range_reduce,
)
from forster_forge.linalg import ExactMatrix
from forster_forge.modules import ModulePresentation, fiber, generates, max_fiber_dim, span_dim_at
from forster_forge.quadratic import QuadIdeal
from forster_forge.rings import PrimeField, QuadOrder, ZMod
from forster_forge.sampling import random_extend_instance, random_quadratic_ideal

from conftest import modules_over_zmod


def test_extend_examples():
    R = ZMod(6)
    M = ModulePresentation.free(R, 1)
    (new,) = [extend_generator(M, R.max_ideals(), [])]
    assert all(R.residue(new[0], q) != 0 for q in R.max_ideals())
    assert extend_generator(M, [], []) == [0]
    F = PrimeField(5)
    M2 = ModulePresentation.free(F, 2)
    x, y = extend_generator(M2, F.max_ideals(), [[1, 0]])
    assert y != 0


def test_extend_rejects_saturated_ideal():
    R = ZMod(6)
    M = ModulePresentation.free(R, 1)
    with pytest.raises(PreconditionViolated):
        extend_generator(M, R.max_ideals(), [[1]])


def test_minimal_generators_examples():
    R = ZMod(12)
    M = ModulePresentation(R, 2, ExactMatrix(R, [[2, 0], [0, 3]]))
    gens = minimal_generators(M)
    assert len(gens) == 1 and generates(M, gens)
    free = ModulePresentation.free(R, 3)
    assert minimal_generators(free) == free.unit_vectors()
    zero = ModulePresentation(R, 2, ExactMatrix.identity(R, 2))
    assert minimal_generators(zero) == []


def test_lift_examples():
    R = ZMod(6)
    M = ModulePresentation.free(R, 1)
    (a,), cert = lift_generators(M, [2], [[3]])
    assert (a[0] - 3) % 2 == 0 and R.is_unit(a[0])
    assert cert.check(R, [a], [[3]])
    # unit ideal: anything generating M is allowed
    out, _ = lift_generators(M, [1], [[0]])
    assert generates(M, out)
    with pytest.raises(TooFewElements):
        lift_generators(ModulePresentation.free(R, 2), [2], [[1, 0]])


def test_stable_range_examples():
    R = ZMod(6)
    assert stable_range_reduce(R, [1, 0, 4]) == [0, 0]
    (alpha,) = stable_range_reduce(R, [2, 3])
    assert R.is_unit((2 + alpha * 3) % 6)
    with pytest.raises(NotUnimodular):
        stable_range_reduce(R, [2, 4])


@given(st.sampled_from([6, 30, 210, 360, 720]), st.integers(2, 5), st.data())
def test_stable_range_iterated_ends_in_unit(n, m, data):
    R = ZMod(n)
    row = data.draw(st.lists(st.integers(0, n - 1), min_size=m, max_size=m))
    if not is_unimodular(R, row):
        return
    while len(row) > 1:
        alphas = stable_range_reduce(R, row)
        row = [R.add(x, R.mul(a, row[-1])) for x, a in zip(row[:-1], alphas)]
        assert is_unimodular(R, row)
    assert R.is_unit(row[0])


@given(modules_over_zmod(max_ambient=5, moduli=[6, 12, 30, 60, 90, 180, 360]))
def test_extend_from_empty_takes_max_fiber_dim_steps(M):
    ring = M.ring
    gens, steps = [], 0
    while True:
        todo = [q for q in ring.max_ideals() if span_dim_at(M, gens, q) < fiber(M, q).dim]
        if not todo:
            break
        before = {q: span_dim_at(M, gens, q) for q in todo}
        gens.append(extend_generator(M, todo, gens))
        steps += 1
        assert all(span_dim_at(M, gens, q) == before[q] + 1 for q in todo)
    assert steps == max_fiber_dim(M)
    assert generates(M, gens)


@given(st.integers(0, 10**6))
def test_extend_random_instances(seed):
    rng = random.Random(seed)
    R = ZMod(rng.choice([6, 12, 30, 60, 360]))
    M, S, elems = random_extend_instance(R, rng)
    new = extend_generator(M, S, elems)
    for q in S:
        assert span_dim_at(M, elems + [new], q) == span_dim_at(M, elems, q) + 1


def _brute_force_min(M):
    """Smallest k such that some k-tuple of elements generates M."""
    ring = M.ring
    elems = [list(v) for v in itertools.product(range(ring.modulus), repeat=M.ambient)]
    for k in range(0, M.ambient + 1):
        for combo in itertools.combinations(elems, k):
            if generates(M, list(combo), cross_check=False):
                return k
    return M.ambient


@given(modules_over_zmod(max_ambient=2, max_relators=2, moduli=[2, 4, 6, 12]))
def test_minimal_generators_is_a_true_minimum(M):
    gens = minimal_generators(M)
    assert len(gens) == _brute_force_min(M)


@given(modules_over_zmod(max_ambient=3, moduli=[6, 12, 30, 60]), st.data())
def test_lift_generators_property(M, data):
    ring = M.ring
    g = data.draw(st.integers(0, ring.modulus - 1))
    quotient = M.with_extra_relations([[ring.mul(g, x) for x in e] for e in M.unit_vectors()])
    b = minimal_generators(quotient)
    need = max_fiber_dim(M)
    b += [[0] * M.ambient] * max(0, need - len(b))
    a, cert = lift_generators(M, [g], b)
    assert cert.check(ring, a, b)
    assert generates(M, a)
    # residues at primes containing I are untouched
    for q in ring.max_ideals():
        if q.field.is_zero(ring.residue(g, q)):
            for ai, bi in zip(a, b):
                assert [ring.residue(x, q) for x in ai] == [ring.residue(x, q) for x in bi]


def test_two_generators_examples():
    O = QuadOrder(-5)
    three = QuadIdeal.generated_by(O, [(3, 0)])
    x, y, _ = ideal_two_generators(three)
    assert QuadIdeal.generated_by(O, [x, y]) == three
    I = QuadIdeal.generated_by(O, [(2, 0), (1, 1)])
    x, y, cert = ideal_two_generators(I)
    assert cert.hnf_matches and QuadIdeal.generated_by(O, [x, y]) == I
    assert principal_generator(I) is None
    # brute force: nothing of norm 2
    assert not [(a, b) for a in range(-2, 3) for b in range(-1, 2) if a * a + 5 * b * b == 2]
    one = QuadIdeal.unit(O)
    x, y, _ = ideal_two_generators(one)
    assert x == y == (1, 0)


@given(st.sampled_from([-5, -1, -23, 5, 13]), st.integers(0, 10**6))
def test_two_generators_random(d, seed):
    order = QuadOrder(d)
    I = random_quadratic_ideal(order, random.Random(seed))
    x, y, cert = ideal_two_generators(I)
    assert QuadIdeal.generated_by(order, [x, y]) == I
    assert cert.hnf_matches
