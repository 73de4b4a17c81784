"""Dense univariate polynomials over a prime field GF(p).

A polynomial is a tuple of coefficients in ``range(p)``, lowest degree
first, with no trailing zeros; ``()`` is the zero polynomial.
"""

import random
from dataclasses import dataclass, field

from .intarith import factorize


def trim(coeffs, p):
    c = [x % p for x in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def degree(f):
    return len(f) - 1


def add(f, g, p):
    n = max(len(f), len(g))
    return trim([(f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0) for i in range(n)], p)


def sub(f, g, p):
    n = max(len(f), len(g))
    return trim([(f[i] if i < len(f) else 0) - (g[i] if i < len(g) else 0) for i in range(n)], p)


def neg(f, p):
    return trim([-x for x in f], p)


def scale(f, c, p):
    return trim([c * x for x in f], p)


def mul(f, g, p):
    if not f or not g:
        return ()
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return trim(out, p)


def divmod_(f, g, p):
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(f)
    dg = len(g) - 1
    inv_lead = pow(g[-1], -1, p)
    q = [0] * max(len(f) - dg, 0)
    for k in range(len(f) - 1, dg - 1, -1):
        c = r[k] % p
        if c == 0:
            continue
        c = c * inv_lead % p
        q[k - dg] = c
        for j in range(dg + 1):
            r[k - dg + j] -= c * g[j]
    return trim(q, p), trim(r[:dg] if dg > 0 else [], p)


def rem(f, g, p):
    return divmod_(f, g, p)[1]


def monic(f, p):
    if not f:
        return f
    return scale(f, pow(f[-1], -1, p), p)


def gcd(f, g, p):
    while g:
        f, g = g, rem(f, g, p)
    return monic(f, p)


def xgcd(f, g, p):
    """Return ``(d, s, t)`` with ``s*f + t*g = d`` and ``d`` monic (or zero)."""
    r0, r1 = f, g
    s0, s1 = (1,), ()
    t0, t1 = (), (1,)
    while r1:
        q, r = divmod_(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(q, s1, p), p)
        t0, t1 = t1, sub(t0, mul(q, t1, p), p)
    if not r0:
        return (), s0, t0
    inv = pow(r0[-1], -1, p)
    return scale(r0, inv, p), scale(s0, inv, p), scale(t0, inv, p)


def powmod(f, e, m, p):
    result = (1,) if len(m) > 1 else ()
    base = rem(f, m, p)
    while e:
        if e & 1:
            result = rem(mul(result, base, p), m, p)
        base = rem(mul(base, base, p), m, p)
        e >>= 1
    return result


def derivative(f, p):
    return trim([i * f[i] for i in range(1, len(f))], p)


def evaluate(f, x, p):
    acc = 0
    for c in reversed(f):
        acc = (acc * x + c) % p
    return acc


def pth_root(f, p):
    """Inverse Frobenius for a polynomial in ``x**p`` (coefficients fixed by Frobenius)."""
    return trim([f[i] for i in range(0, len(f), p)], p)


X = (0, 1)


def is_irreducible(f, p):
    """Rabin's test: ``x^(p^n) = x mod f`` and ``gcd(x^(p^(n/q)) - x, f) = 1``."""
    f = trim(f, p)
    n = degree(f)
    if n < 1:
        return False
    if n == 1:
        return True
    f = monic(f, p)
    for q in factorize(n):
        h = powmod(X, p ** (n // q), f, p)
        if gcd(sub(h, X, p), f, p) != (1,):
            return False
    return sub(powmod(X, p**n, f, p), X, p) == ()


def _squarefree_decomposition(f, p):
    """Return ``[(g, k), ...]`` with ``f = prod g^k``, each ``g`` squarefree, monic ``f``."""
    out = []
    i = 1
    df = derivative(f, p)
    if not df:
        if degree(f) == 0:
            return out
        return [(g, k * p) for g, k in _squarefree_decomposition(pth_root(f, p), p)]
    c = gcd(f, df, p)
    w = divmod_(f, c, p)[0]
    while degree(w) > 0:
        y = gcd(w, c, p)
        z = divmod_(w, y, p)[0]
        if degree(z) > 0:
            out.append((z, i))
        i += 1
        w = y
        c = divmod_(c, y, p)[0]
    if degree(c) > 0:
        out.extend((g, k * p) for g, k in _squarefree_decomposition(pth_root(c, p), p))
    return out


def _distinct_degree(f, p):
    out = []
    h = X
    d = 0
    g = f
    while degree(g) >= 2 * (d + 1):
        d += 1
        h = powmod(h, p, g, p)
        u = gcd(g, sub(h, X, p), p)
        if u != (1,):
            out.append((u, d))
            g = divmod_(g, u, p)[0]
            h = rem(h, g, p)
    if degree(g) > 0:
        out.append((g, degree(g)))
    return out


def _equal_degree(f, d, p, rng):
    n = degree(f)
    if n == d:
        return [f]
    while True:
        a = trim([rng.randrange(p) for _ in range(n)], p)
        if degree(a) < 1:
            continue
        if p == 2:
            # trace map a + a^2 + ... + a^(2^(d-1))
            t, s = a, a
            for _ in range(d - 1):
                s = rem(mul(s, s, p), f, p)
                t = add(t, s, p)
            b = t
        else:
            b = sub(powmod(a, (p**d - 1) // 2, f, p), (1,), p)
        g = gcd(f, b, p)
        if 0 < degree(g) < n:
            h = divmod_(f, g, p)[0]
            return _equal_degree(g, d, p, rng) + _equal_degree(h, d, p, rng)


@dataclass(frozen=True)
class PolyFactorization:
    """Monic irreducible factors with multiplicities; ``unit`` is the leading coefficient."""

    p: int
    unit: int
    factors: tuple
    seed: int = 0
    metadata: dict = field(default_factory=dict, compare=False)

    def __iter__(self):
        return iter(self.factors)

    def __len__(self):
        return len(self.factors)

    def __getitem__(self, i):
        return self.factors[i]

    def expand(self):
        out = (self.unit,)
        for g, k in self.factors:
            for _ in range(k):
                out = mul(out, g, self.p)
        return out


def factor_poly(f, p, seed=0):
    """Factor a nonzero polynomial over GF(p) (Cantor-Zassenhaus).

    Equal-degree splitting draws from ``random.Random(seed)``; the seed is
    kept on the result so a run can be replayed.
    """
    f = trim(f, p)
    if not f:
        raise ValueError("cannot factor the zero polynomial")
    unit = f[-1]
    g = monic(f, p)
    rng = random.Random(seed)
    found = {}
    for sqf, k in _squarefree_decomposition(g, p):
        for block, d in _distinct_degree(sqf, p):
            for irr in _equal_degree(block, d, p, rng):
                found[irr] = found.get(irr, 0) + k
    factors = tuple(sorted(found.items(), key=lambda item: (len(item[0]), item[0])))
    return PolyFactorization(p, unit, factors, seed, {"algorithm": "cantor-zassenhaus"})


def certify_irreducible(g, p):
    """Irreducibility certificate for a monic factor, as a plain dict."""
    n = degree(g)
    frob = rem(sub(powmod(X, p**n, g, p), X, p), g, p) == () if n >= 1 else False
    coprime = all(
        gcd(sub(powmod(X, p ** (n // q), g, p), X, p), g, p) == (1,) for q in factorize(n)
    ) if n > 1 else True
    return {"degree": n, "frobenius_fixes_x": frob, "no_smaller_degree_gcd": coprime}


def all_monic(deg, p):
    """Every monic polynomial of exact degree ``deg``."""
    for code in range(p**deg):
        coeffs = []
        for _ in range(deg):
            coeffs.append(code % p)
            code //= p
        yield tuple(coeffs) + (1,)
