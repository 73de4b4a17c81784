"""Both kernel backends against each other and against naive formulas."""

import random

import pytest
from hypothesis import given, strategies as st

from forster_forge import _pykernels, kernels

BACKENDS = [_pykernels]
try:
    from forster_forge import _ckernels

    BACKENDS.append(_ckernels)
except ImportError:  # pure install
    _ckernels = None

PRIMES = [2, 3, 23, 65537, 2**31 - 1]


def _naive_det(a, p):
    from itertools import permutations

    n = len(a)
    total = 0
    for perm in permutations(range(n)):
        inv = sum(perm[i] > perm[j] for i in range(n) for j in range(i + 1, n))
        term = -1 if inv % 2 else 1
        for i, j in enumerate(perm):
            term *= a[i][j]
        total += term
    return total % p


@pytest.mark.parametrize("k", BACKENDS, ids=lambda m: m.__name__.rsplit(".", 1)[-1])
@given(st.sampled_from(PRIMES), st.integers(1, 5), st.data())
def test_det_against_permutation_expansion(k, p, n, data):
    a = data.draw(st.lists(st.lists(st.integers(-p, 2 * p), min_size=n, max_size=n), min_size=n, max_size=n))
    assert k.det_mod_p(a, p) == _naive_det(a, p)


@pytest.mark.parametrize("k", BACKENDS, ids=lambda m: m.__name__.rsplit(".", 1)[-1])
@given(st.integers(2, 2**31 - 1), st.integers(1, 5), st.integers(1, 5), st.integers(1, 5), st.data())
def test_matmul_against_naive(k, n, r, inner, c, data):
    ints = st.integers(-(2**40), 2**40)
    a = data.draw(st.lists(st.lists(ints, min_size=inner, max_size=inner), min_size=r, max_size=r))
    b = data.draw(st.lists(st.lists(ints, min_size=c, max_size=c), min_size=inner, max_size=inner))
    want = [[sum(a[i][t] * b[t][j] for t in range(inner)) % n for j in range(c)] for i in range(r)]
    assert k.matmul_mod(a, b, n) == want


@pytest.mark.skipif(_ckernels is None, reason="compiled kernels not built")
@pytest.mark.parametrize("p", PRIMES)
@pytest.mark.parametrize("n", [1, 5, 40])
def test_backends_agree(p, n):
    rng = random.Random(p * 100 + n)
    a = [[rng.randrange(p) for _ in range(n + 3)] for _ in range(n)]
    assert _ckernels.rref_mod_p(a, p) == _pykernels.rref_mod_p(a, p)
    assert _ckernels.rank_mod_p(a, p) == _pykernels.rank_mod_p(a, p)
    sq = [row[:n] for row in a]
    assert _ckernels.det_mod_p(sq, p) == _pykernels.det_mod_p(sq, p)


@pytest.mark.parametrize("k", BACKENDS, ids=lambda m: m.__name__.rsplit(".", 1)[-1])
def test_isotropic_small_cases(k):
    # x^2 + y^2 = z^2 always has primitive solutions; -1,-1 fails 2-adically
    assert k.isotropic_mod_pk(1, 1, 2, 5)
    assert not k.isotropic_mod_pk(-1, -1, 2, 5)
    assert not k.isotropic_mod_pk(3, 3, 3, 3)


def test_dispatch_large_modulus_uses_python():
    assert kernels._pick(2**61 - 1) is _pykernels


def test_pure_backend_forced(monkeypatch):
    import importlib

    monkeypatch.setenv("FORSTER_FORGE_PURE", "1")
    mod = importlib.reload(kernels)
    try:
        assert mod.BACKEND == "python"
    finally:
        monkeypatch.delenv("FORSTER_FORGE_PURE")
        importlib.reload(kernels)
