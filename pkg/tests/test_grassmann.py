import random

import pytest
from hypothesis import given, strategies as st

from forster_forge.errors import NotAFrame, NotGenerating, NotIdempotent, OnMinorLocus
from forster_forge.grassmann import (
    classifying_surjection,
    diagonal_frame,
    idempotent_from_frame,
    is_section_surjection,
    specialize_universal_idempotent,
    truncate_surjection,
)
from forster_forge.linalg import ExactMatrix
from forster_forge.modules import ProjectiveIdempotent, generates_by_howell, idempotent_module
from forster_forge.rings import PrimeField, ZMod
from forster_forge.sampling import random_frame, random_invertible
from forster_forge.linalg import inverse_or_certificate


def test_frame_examples():
    R = ZMod(6)
    a = ExactMatrix(R, [[1, 0]])
    t = idempotent_from_frame(a, a.transpose())
    assert t.x == ExactMatrix(R, [[1, 0], [0, 0]])
    b = random_invertible(R, 3, random.Random(2))
    t = idempotent_from_frame(inverse_or_certificate(b).inverse, b)
    assert t.x == ExactMatrix.identity(R, 3)
    with pytest.raises(NotAFrame):
        idempotent_from_frame(ExactMatrix(R, [[2, 0]]), ExactMatrix(R, [[1], [0]]))


def test_classifying_examples():
    R = ZMod(6)
    free = ProjectiveIdempotent(ExactMatrix.identity(R, 2))
    data = classifying_surjection(free, [[1, 0], [0, 1]])
    assert data.matrix == ExactMatrix.identity(R, 2)
    P = ProjectiveIdempotent(ExactMatrix(R, [[1, 0], [0, 0]]))
    data = classifying_surjection(P, [[1, 0], [5, 0]])
    assert data.matrix == ExactMatrix(R, [[1, 5], [0, 0]])
    assert data.coordinates == ExactMatrix(R, [[1, 5]])
    assert data.coordinate_certificate
    assert data.generators() == [[1, 0], [5, 0]]
    with pytest.raises(NotGenerating) as info:
        classifying_surjection(P, [[2, 0]])
    assert info.value.ideal.residue_char == 2


def test_surjection_examples():
    R = ZMod(6)
    assert is_section_surjection(ExactMatrix(R, [[1, 0, 0], [0, 1, 0]]))
    cert = is_section_surjection(ExactMatrix.zeros(R, 1, 2))
    assert not cert and cert.failing_ideal is not None
    cert = is_section_surjection(ExactMatrix(R, [[2, 3]]))
    assert cert and set(cert.ranks.values()) == {1}


def test_truncate_examples():
    R = ZMod(6)
    a = ExactMatrix(R, [[1, 2], [0, 1]])
    assert truncate_surjection(a, 2)[0] == a
    assert truncate_surjection(ExactMatrix(R, [[1, 0, 0]]), 1)[0] == ExactMatrix(R, [[1]])
    with pytest.raises(OnMinorLocus):
        truncate_surjection(ExactMatrix(PrimeField(2), [[0, 1, 1]]), 1)


def test_universal_idempotent_examples():
    R = ZMod(6)
    P = ProjectiveIdempotent(ExactMatrix(R, [[1, 0, 0], [0, 1, 0], [0, 0, 0]]))
    out = specialize_universal_idempotent(P)
    assert out["n"] == 2 and out["charpoly"] == ["0", "1", "4", "1"]
    out = specialize_universal_idempotent(ProjectiveIdempotent(ExactMatrix(R, [[1, 1], [0, 0]])))
    assert out["n"] == 1 and out["charpoly"] == ["0", "5", "1"]
    with pytest.raises(NotIdempotent):
        ProjectiveIdempotent(ExactMatrix(R, [[1, 1], [1, 0]]))


@given(st.sampled_from([6, 12, 30, 60, 360]), st.integers(1, 4), st.integers(0, 10**6))
def test_random_frame_round_trip(n, size, seed):
    rng = random.Random(seed)
    R = ZMod(n)
    frame = random_frame(R, size, rng)
    assert frame.check()
    P = frame.idempotent
    # generators: the frame columns plus some random image vectors
    gens = [list(c) for c in frame.b.columns()]
    for _ in range(rng.randint(0, 2)):
        v = [rng.randrange(n) for _ in range(size)]
        gens.append(list(P.e.apply(v)))
    data = classifying_surjection(P, gens, frame)
    assert data.generators() == gens
    assert data.generators_from_coordinates() == gens
    assert data.coordinate_certificate
    assert specialize_universal_idempotent(P)["n"] == frame.rank


@given(st.sampled_from([6, 12, 30]), st.integers(1, 3), st.integers(1, 4), st.data())
def test_surjection_criteria_agree(n, rows, cols, data):
    R = ZMod(n)
    entries = data.draw(
        st.lists(st.lists(st.integers(0, n - 1), min_size=cols, max_size=cols), min_size=rows, max_size=rows)
    )
    a = ExactMatrix(R, entries)
    # the certificate itself raises if residue ranks and the minor ideal disagree
    cert = is_section_surjection(a)
    assert bool(cert) == cert.minor_ideal_is_unit


def test_diagonal_frame_only_for_diagonal():
    R = ZMod(6)
    assert diagonal_frame(ProjectiveIdempotent(ExactMatrix(R, [[1, 1], [0, 0]]))) is None
    t = diagonal_frame(ProjectiveIdempotent(ExactMatrix(R, [[0, 0], [0, 1]])))
    assert t.a == ExactMatrix(R, [[0, 1]])
