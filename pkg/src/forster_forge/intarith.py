"""Integer helpers: bounded trial-division factorization and CRT."""

import math
import os

from .errors import ModulusTooLarge

DEFAULT_TRIAL_BOUND = 10**6


def trial_bound():
    """Current factorization bound (env ``FORSTER_FORGE_TRIAL_BOUND`` overrides)."""
    raw = os.environ.get("FORSTER_FORGE_TRIAL_BOUND")
    if raw:
        return int(raw)
    return DEFAULT_TRIAL_BOUND


def factorize(n, bound=None):
    """Return ``{prime: exponent}`` for ``|n| >= 1`` by trial division.

    The cofactor left after dividing out all primes ``<= bound`` is certified
    prime when it is below ``bound**2``; otherwise the input is rejected.
    """
    n = abs(int(n))
    if n == 0:
        raise ValueError("cannot factor 0")
    if bound is None:
        bound = trial_bound()
    factors = {}
    for p in (2, 3):
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
    d = 5
    step = 2
    while d * d <= n:
        if d > bound:
            raise ModulusTooLarge(
                f"cofactor {n} has no factor <= {bound}; primality undecided",
                bound=bound,
            )
        while n % d == 0:
            factors[d] = factors.get(d, 0) + 1
            n //= d
        d += step
        step = 6 - step
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    return factors


def is_prime(n, bound=None):
    if n < 2:
        return False
    f = factorize(n, bound)
    return f == {n: 1}


def prime_divisors(n, bound=None):
    return sorted(factorize(n, bound))


def crt_pair(r1, m1, r2, m2):
    """Combine ``x = r1 mod m1`` and ``x = r2 mod m2`` for coprime moduli."""
    g = math.gcd(m1, m2)
    if g != 1:
        raise ValueError("moduli must be coprime")
    inv = pow(m1, -1, m2)
    x = r1 + m1 * (((r2 - r1) * inv) % m2)
    return x % (m1 * m2), m1 * m2


def crt(residues, moduli):
    x, m = 0, 1
    for r, mod in zip(residues, moduli):
        x, m = crt_pair(x, m, r % mod, mod)
    return x


def xgcd(a, b):
    """Return ``(g, s, t)`` with ``s*a + t*b = g = gcd(a, b) >= 0``."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def squarefree(n):
    if n == 0:
        return False
    return all(e == 1 for e in factorize(n).values())


def legendre(a, p):
    """Legendre symbol for odd prime ``p``."""
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1
