"""Seeded random instances shared by the self-test, the test suite and benchmarks."""

import random

from .grassmann import FrameTriple
from .linalg import ExactMatrix, inverse_or_certificate
from .modules import ModulePresentation, ProjectiveIdempotent, fiber, span_dim_at
from .quadratic import QuadIdeal, primes_over
from .rings import ZMod


def rng_for(seed):
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def random_element(ring, rng):
    return ring.from_int(rng.randrange(ring.order()))


def random_matrix(ring, rows, cols, rng):
    n = ring.order()
    return ExactMatrix(ring, [[ring.from_int(rng.randrange(n)) for _ in range(cols)] for _ in range(rows)], cols)


def random_sl(ring, m, rng, steps=20):
    """A product of random elementary matrices; exactly determinant 1."""
    rows = [[ring.one() if i == j else ring.zero() for j in range(m)] for i in range(m)]
    for _ in range(steps if m > 1 else 0):
        i, j = rng.sample(range(m), 2)
        c = random_element(ring, rng)
        for r in range(m):
            rows[i][r] = ring.add(rows[i][r], ring.mul(c, rows[j][r]))
    return ExactMatrix(ring, rows, m, coerce=False)


def random_invertible(ring, m, rng, steps=12):
    """Random SL matrix times a diagonal of units."""
    a = random_sl(ring, m, rng, steps)
    units = [x for x in ring.elements() if ring.is_unit(x)] if ring.order() <= 4096 else [ring.one()]
    d = ExactMatrix(
        ring,
        [[rng.choice(units) if i == j else ring.zero() for j in range(m)] for i in range(m)],
        m,
        coerce=False,
    )
    return a @ d


def random_module(ring, rng, max_ambient=4, max_relators=4):
    t = rng.randint(1, max_ambient)
    k = rng.randint(0, max_relators)
    if k == 0:
        return ModulePresentation(ring, t)
    return ModulePresentation(ring, t, random_matrix(ring, t, k, rng))


def random_frame(ring, size, rng, rank=None):
    """A frame ``(a, U D U^-1, b)``: a = first rows of U^-1, b = first columns of U."""
    u = random_invertible(ring, size, rng)
    inv = inverse_or_certificate(u).inverse
    rank = rng.randint(0, size) if rank is None else rank
    a = inv.submatrix(row_idx=list(range(rank)))
    b = u.submatrix(col_idx=list(range(rank)))
    return FrameTriple(a, b @ a, b)


def random_idempotent(ring, size, rng):
    """``U D U^-1`` with D diagonal 0/1."""
    return ProjectiveIdempotent(random_frame(ring, size, rng).x)


def random_extend_instance(ring, rng, max_ambient=4):
    """``(M, S, elems)`` with every ideal of S unsaturated by ``elems``."""
    while True:
        module = random_module(ring, rng, max_ambient)
        k = rng.randint(0, module.ambient)
        elems = [[random_element(ring, rng) for _ in range(module.ambient)] for _ in range(k)]
        open_ideals = [
            q for q in ring.max_ideals()
            if span_dim_at(module, elems, q) < fiber(module, q).dim
        ]
        if open_ideals:
            size = rng.randint(1, len(open_ideals))
            return module, rng.sample(open_ideals, size), elems


def random_quadratic_ideal(order, rng, max_norm=10**4, max_prime=100):
    """A product of random prime ideals with norm at most ``max_norm``."""
    primes = [p for p in range(2, max_prime) if all(p % q for q in range(2, p))]
    ideal = QuadIdeal.unit(order)
    target = rng.randint(1, max_norm)
    for _ in range(12):
        P = rng.choice(primes_over(order, rng.choice(primes)))
        if ideal.norm() * P.norm() > target:
            break
        ideal = ideal * P
    return ideal


def random_zmod(rng, choices=(6, 12, 30, 36, 60, 72, 90, 120, 180, 210, 360)):
    return ZMod(rng.choice(choices))
