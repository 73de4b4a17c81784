"""Concrete commutative rings with exact arithmetic.

Each ring descriptor is an immutable value that also carries the arithmetic
for its elements. Elements are plain hashable Python values in canonical
form, so ``==`` is ring equality:

=============  =====================================================
ZMod(N)        int in ``range(N)``
PrimeField(p)  int in ``range(p)``
ExtField(p,f)  tuple of ``deg f`` ints, coefficients of 1, t, t^2, ...
FpQuotient     same as ExtField, for GF(p)[t]/(f) with f arbitrary
Product        tuple of component elements
LocalInt(p)    ``fractions.Fraction`` with denominator prime to p
QuadOrder(d)   pair ``(a, b)`` meaning ``a + b*w``
=============  =====================================================

Semilocal-capable rings (everything except ``QuadOrder``) expose
``max_ideals``, ``residue`` and ``crt_lift``.
"""

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from . import polys
from .errors import (
    IncompleteTargets,
    MalformedInput,
    MismatchedRing,
    NotAUnit,
    UnsupportedRing,
)
from .intarith import crt, factorize, is_prime, squarefree, xgcd


@dataclass(frozen=True)
class MaxIdealHandle:
    """One maximal ideal of a semilocal ring (or a sampled prime of a quadratic order).

    ``key`` is ring-internal data locating the ideal; ``index`` is its stable
    position in ``ring.max_ideals()``.
    """

    ring: object
    index: int
    residue_char: int
    residue_degree: int
    key: object = None

    @property
    def field(self):
        return self.ring._residue_field(self.key)

    def describe(self):
        return self.ring._describe_ideal(self)

    def __repr__(self):
        return f"MaxIdeal({self.describe()})"


class Ring:
    """Shared element-level API; subclasses fill in the primitives."""

    semilocal = True
    is_field = False
    is_finite = True

    # -- primitives ------------------------------------------------------
    def zero(self):
        raise NotImplementedError

    def one(self):
        raise NotImplementedError

    def from_int(self, n):
        raise NotImplementedError

    def add(self, x, y):
        raise NotImplementedError

    def neg(self, x):
        raise NotImplementedError

    def mul(self, x, y):
        raise NotImplementedError

    def is_unit(self, x):
        raise NotImplementedError

    def inv(self, x):
        raise NotImplementedError

    def characteristic(self):
        raise NotImplementedError

    # -- derived ---------------------------------------------------------
    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def is_zero(self, x):
        return x == self.zero()

    def pow(self, x, e):
        if e < 0:
            return self.pow(self.inv(x), -e)
        result = self.one()
        while e:
            if e & 1:
                result = self.mul(result, x)
            x = self.mul(x, x)
            e >>= 1
        return result

    def sum(self, items):
        acc = self.zero()
        for it in items:
            acc = self.add(acc, it)
        return acc

    def dot(self, xs, ys):
        acc = self.zero()
        for x, y in zip(xs, ys):
            acc = self.add(acc, self.mul(x, y))
        return acc

    def coerce(self, x):
        """Bring an int or already-canonical value into canonical form."""
        if isinstance(x, int):
            return self.from_int(x)
        return self._canonical(x)

    def _canonical(self, x):
        return x

    def order(self):
        raise UnsupportedRing(f"{self!r} is infinite")

    def elements(self):
        raise UnsupportedRing(f"{self!r} is not enumerable")

    # -- local structure -------------------------------------------------
    def max_ideals(self):
        raise UnsupportedRing(f"{self!r} is not semilocal-capable")

    def residue(self, x, m):
        self._check_handle(m)
        return self._residue(x, m.key)

    def crt_lift(self, targets):
        """Element whose residue at each maximal ideal is ``targets[m]``."""
        ideals = self.max_ideals()
        missing = [m for m in ideals if m not in targets]
        extra = [m for m in targets if m.ring != self]
        if missing or extra or len(targets) != len(ideals):
            raise IncompleteTargets(
                f"targets must cover the {len(ideals)} maximal ideals of {self!r} exactly once"
            )
        return self._crt_lift({m.key: targets[m] for m in ideals})

    def _check_handle(self, m):
        if not isinstance(m, MaxIdealHandle) or m.ring != self:
            raise MismatchedRing(f"ideal {m!r} does not belong to {self!r}")

    def unit_by_residues(self, x):
        return all(not m.field.is_zero(self.residue(x, m)) for m in self.max_ideals())

    # -- Bezout-style helpers used by exact linear algebra ----------------
    def gcdex(self, a, b):
        """Return ``(g, s, t, u, v)`` with ``s*a + t*b = g``, ``u*a + v*b = 0``, ``s*v - t*u`` a unit."""
        raise UnsupportedRing(f"no Bezout step over {self!r}")

    def divide(self, r, d):
        """Some ``y`` with ``d*y = r``, or ``None`` when unsolvable."""
        raise UnsupportedRing(f"no division over {self!r}")

    def ideal_is_unit(self, gens):
        """Does the ideal generated by ``gens`` contain a unit?

        Decided without consulting maximal ideals, so callers can cross-check
        residue-based verdicts against it.
        """
        raise UnsupportedRing(f"no ideal test over {self!r}")

    # -- encoding --------------------------------------------------------
    def encode(self, x):
        return str(x)

    def decode(self, obj):
        try:
            return self.from_int(int(obj))
        except (TypeError, ValueError) as exc:
            raise MalformedInput(f"bad element {obj!r} for {self!r}") from exc

    def to_json(self):
        raise NotImplementedError

    def _describe_ideal(self, m):
        return f"({m.residue_char})"


# ---------------------------------------------------------------------------
# Z/N and prime fields


@dataclass(frozen=True)
class ZMod(Ring):
    modulus: int

    def __post_init__(self):
        if not isinstance(self.modulus, int) or self.modulus < 2:
            raise MalformedInput(f"ZMod modulus must be an integer >= 2, got {self.modulus!r}")

    def __repr__(self):
        return f"ZMod({self.modulus})"

    def zero(self):
        return 0

    def one(self):
        return 1

    def from_int(self, n):
        return n % self.modulus

    def _canonical(self, x):
        return int(x) % self.modulus

    def add(self, x, y):
        return (x + y) % self.modulus

    def sub(self, x, y):
        return (x - y) % self.modulus

    def neg(self, x):
        return -x % self.modulus

    def mul(self, x, y):
        return x * y % self.modulus

    def pow(self, x, e):
        return pow(x, e, self.modulus)

    def is_zero(self, x):
        return x == 0

    def is_unit(self, x):
        return math.gcd(x, self.modulus) == 1

    def inv(self, x):
        if math.gcd(x, self.modulus) != 1:
            raise NotAUnit(f"{x} is not a unit in {self!r}")
        return pow(x, -1, self.modulus)

    def characteristic(self):
        return self.modulus

    def order(self):
        return self.modulus

    def elements(self):
        return range(self.modulus)

    @cached_property
    def _factorization(self):
        return sorted(factorize(self.modulus).items())

    def max_ideals(self):
        return [
            MaxIdealHandle(self, i, p, 1, p) for i, (p, _) in enumerate(self._factorization)
        ]

    def _residue_field(self, key):
        return PrimeField(key)

    def _residue(self, x, p):
        return x % p

    def _crt_lift(self, targets):
        residues, moduli = [], []
        for p, e in self._factorization:
            residues.append(targets[p])
            moduli.append(p**e)
        return crt(residues, moduli) % self.modulus

    def gcdex(self, a, b):
        n = self.modulus
        if b % n == 0:
            return a, 1, 0, 0, 1
        if a % n == 0:
            return b, 0, 1, 1, 0
        if b % a == 0:
            # keep the pivot when it already divides: guarantees progress
            return a, 1, 0, (-(b // a)) % n, 1
        g, s, t = xgcd(a, b)
        return g % n, s % n, t % n, (-b // g) % n, (a // g) % n

    def divide(self, r, d):
        n = self.modulus
        g = math.gcd(d, n)
        if r % g:
            return None
        m = n // g
        if m == 1:
            return 0
        return (r // g) * pow(d // g, -1, m) % m

    def ideal_is_unit(self, gens):
        g = self.modulus
        for x in gens:
            g = math.gcd(g, x)
        return g == 1

    def to_json(self):
        return {"type": "zmod", "modulus": str(self.modulus)}


@dataclass(frozen=True)
class PrimeField(ZMod):
    """GF(p); arithmetic is that of Z/p."""

    def __post_init__(self):
        if not isinstance(self.modulus, int) or not is_prime(self.modulus):
            raise MalformedInput(f"PrimeField needs a prime, got {self.modulus!r}")

    is_field = True

    @property
    def p(self):
        return self.modulus

    def __repr__(self):
        return f"GF({self.modulus})"

    def max_ideals(self):
        return [MaxIdealHandle(self, 0, self.modulus, 1, None)]

    def _residue_field(self, key):
        return self

    def _residue(self, x, key):
        return x

    def _crt_lift(self, targets):
        return targets[None] % self.modulus

    def is_unit(self, x):
        return x != 0

    def inv(self, x):
        if x == 0:
            raise NotAUnit("0 is not invertible")
        return pow(x, self.modulus - 2, self.modulus)

    def gcdex(self, a, b):
        if a:
            return a, 1, 0, (-b * self.inv(a)) % self.modulus, 1
        if b:
            return b, 0, 1, 1, 0
        return 0, 1, 0, 0, 1

    def divide(self, r, d):
        if d == 0:
            return 0 if r == 0 else None
        return r * self.inv(d) % self.modulus

    def ideal_is_unit(self, gens):
        return any(x % self.modulus for x in gens)

    def to_json(self):
        return {"type": "gf", "p": str(self.modulus)}


# ---------------------------------------------------------------------------
# GF(p)[t]/(f): extension fields and general quotients


# products in small quotient rings are memoized per ring
MUL_CACHE_ORDER = 4096
MUL_CACHE_ENTRIES = 1 << 20


class _PolyRing(Ring):
    """Shared arithmetic for GF(p)[t]/(f); elements are fixed-length tuples."""

    @property
    def deg(self):
        return len(self.poly) - 1

    def _pad(self, c):
        c = tuple(c)
        return c + (0,) * (self.deg - len(c))

    def zero(self):
        return (0,) * self.deg

    def one(self):
        return self._pad((1,))

    def from_int(self, n):
        return self._pad((n % self.p,))

    def _canonical(self, x):
        if isinstance(x, int):
            return self.from_int(x)
        return self._pad(polys.rem(polys.trim(x, self.p), self.poly, self.p))

    def add(self, x, y):
        p = self.p
        return tuple((a + b) % p for a, b in zip(x, y))

    def sub(self, x, y):
        p = self.p
        return tuple((a - b) % p for a, b in zip(x, y))

    def neg(self, x):
        p = self.p
        return tuple(-a % p for a in x)

    def mul(self, x, y):
        cache = self.__dict__.get("_mul_cache")
        if cache is None:
            cache = {} if self.p**self.deg <= MUL_CACHE_ORDER else False
            object.__setattr__(self, "_mul_cache", cache)
        if cache is not False:
            key = (x, y)
            hit = cache.get(key)
            if hit is None:
                hit = self._mul(x, y)
                if len(cache) < MUL_CACHE_ENTRIES:
                    cache[key] = hit
            return hit
        return self._mul(x, y)

    def _mul(self, x, y):
        p = self.p
        prod = polys.mul(polys.trim(x, p), polys.trim(y, p), p)
        return self._pad(polys.rem(prod, self.poly, p))

    def is_zero(self, x):
        return not any(x)

    def characteristic(self):
        return self.p

    def order(self):
        return self.p**self.deg

    def elements(self):
        return (tuple(c) for c in itertools.product(range(self.p), repeat=self.deg))

    def as_poly(self, x):
        return polys.trim(x, self.p)

    def is_unit(self, x):
        return polys.gcd(self.as_poly(x), self.poly, self.p) == (1,)

    def inv(self, x):
        d, s, _ = polys.xgcd(self.as_poly(x), self.poly, self.p)
        if d != (1,):
            raise NotAUnit(f"{x} is not a unit in {self!r}")
        return self._pad(polys.rem(s, self.poly, self.p))

    def gcdex(self, a, b):
        p, f = self.p, self.poly
        pa, pb = self.as_poly(a), self.as_poly(b)
        if not pb:
            return a, self.one(), self.zero(), self.zero(), self.one()
        if not pa:
            return b, self.zero(), self.one(), self.one(), self.zero()
        q, r = polys.divmod_(pb, pa, p)
        if not r:
            return a, self.one(), self.zero(), self._pad(polys.neg(q, p)), self.one()
        g, s, t = polys.xgcd(pa, pb, p)
        u = polys.neg(polys.divmod_(pb, g, p)[0], p)
        v = polys.divmod_(pa, g, p)[0]
        red = lambda h: self._pad(polys.rem(h, f, p))  # noqa: E731
        return red(g), red(s), red(t), red(u), red(v)

    def divide(self, r, d):
        p, f = self.p, self.poly
        pr, pd = self.as_poly(r), self.as_poly(d)
        g = polys.gcd(pd, f, p) if pd else polys.monic(f, p)
        q, rr = polys.divmod_(pr, g, p)
        if rr:
            return None
        m = polys.divmod_(f, g, p)[0]
        if polys.degree(m) == 0:
            return self.zero()
        dd = polys.divmod_(pd, g, p)[0]
        _, s, _ = polys.xgcd(dd, m, p)
        return self._pad(polys.rem(polys.mul(q, s, p), m, p))

    def ideal_is_unit(self, gens):
        g = self.poly
        for x in gens:
            g = polys.gcd(g, self.as_poly(x), self.p)
        return g == (1,)

    def encode(self, x):
        return [str(c) for c in x]

    def decode(self, obj):
        if isinstance(obj, (int, str)):
            return self.from_int(int(obj))
        try:
            return self._canonical(tuple(int(c) for c in obj))
        except (TypeError, ValueError) as exc:
            raise MalformedInput(f"bad element {obj!r} for {self!r}") from exc


@dataclass(frozen=True)
class ExtField(_PolyRing):
    """GF(p^k) = GF(p)[t]/(f) for a monic irreducible ``f``."""

    p: int
    poly: tuple

    is_field = True

    def __post_init__(self):
        if not is_prime(self.p):
            raise MalformedInput(f"ExtField characteristic must be prime, got {self.p}")
        f = polys.trim(self.poly, self.p)
        if len(f) < 2 or f[-1] != 1:
            raise MalformedInput(f"ExtField needs a monic polynomial of degree >= 1, got {self.poly}")
        if not polys.is_irreducible(f, self.p):
            raise MalformedInput(f"{self.poly} is reducible over GF({self.p})")
        object.__setattr__(self, "poly", f)

    def __repr__(self):
        return f"GF({self.p}^{self.deg}; {list(self.poly)})"

    def is_unit(self, x):
        return any(x)

    def max_ideals(self):
        return [MaxIdealHandle(self, 0, self.p, self.deg, None)]

    def _residue_field(self, key):
        return self

    def _residue(self, x, key):
        return x

    def _crt_lift(self, targets):
        return targets[None]

    def ideal_is_unit(self, gens):
        return any(any(x) for x in gens)

    def gcdex(self, a, b):
        if any(a):
            return a, self.one(), self.zero(), self.neg(self.mul(b, self.inv(a))), self.one()
        if any(b):
            return b, self.zero(), self.one(), self.one(), self.zero()
        return a, self.one(), self.zero(), self.zero(), self.one()

    def divide(self, r, d):
        if not any(d):
            return self.zero() if not any(r) else None
        return self.mul(r, self.inv(d))

    def to_json(self):
        return {"type": "gf", "p": str(self.p), "poly": [str(c) for c in self.poly]}


@dataclass(frozen=True)
class FpQuotient(_PolyRing):
    """GF(p)[t]/(f) for any monic ``f`` of degree >= 1; finite, hence semilocal."""

    p: int
    poly: tuple

    def __post_init__(self):
        if not is_prime(self.p):
            raise MalformedInput(f"FpQuotient characteristic must be prime, got {self.p}")
        f = polys.trim(self.poly, self.p)
        if len(f) < 2 or f[-1] != 1:
            raise MalformedInput(f"FpQuotient needs a monic polynomial of degree >= 1, got {self.poly}")
        object.__setattr__(self, "poly", f)

    def __repr__(self):
        return f"GF({self.p})[t]/({list(self.poly)})"

    @cached_property
    def _factorization(self):
        return list(polys.factor_poly(self.poly, self.p).factors)

    def max_ideals(self):
        return [
            MaxIdealHandle(self, i, self.p, polys.degree(g), g)
            for i, (g, _) in enumerate(self._factorization)
        ]

    def _residue_field(self, g):
        if polys.degree(g) == 1:
            return PrimeField(self.p)
        return ExtField(self.p, g)

    def _residue(self, x, g):
        r = polys.rem(self.as_poly(x), g, self.p)
        if polys.degree(g) == 1:
            return r[0] if r else 0
        return self._residue_field(g)._pad(r)

    def _crt_lift(self, targets):
        p, f = self.p, self.poly
        acc = ()
        for g, k in self._factorization:
            t = targets[g]
            t = polys.trim((t,) if isinstance(t, int) else t, p)
            q = polys.trim((1,), p)
            for _ in range(k):
                q = polys.mul(q, g, p)
            cof = polys.divmod_(f, q, p)[0]
            # idempotent-style basis element: cof * (cof^{-1} mod q)
            _, s, _ = polys.xgcd(cof, q, p)
            basis = polys.mul(cof, polys.rem(s, q, p), p)
            acc = polys.add(acc, polys.mul(t, basis, p), p)
        return self._pad(polys.rem(acc, f, p))

    def _describe_ideal(self, m):
        return f"({m.residue_char}, {list(m.key)})"

    def to_json(self):
        return {"type": "fp_quotient", "p": str(self.p), "poly": [str(c) for c in self.poly]}


# ---------------------------------------------------------------------------
# finite products


@dataclass(frozen=True)
class Product(Ring):
    factors: tuple

    def __post_init__(self):
        fs = tuple(self.factors)
        if not fs:
            raise MalformedInput("Product needs at least one factor")
        for f in fs:
            if not isinstance(f, Ring) or not f.semilocal:
                raise UnsupportedRing(f"Product factor {f!r} is not semilocal-capable")
        object.__setattr__(self, "factors", fs)

    def __repr__(self):
        return "Product(" + ", ".join(repr(f) for f in self.factors) + ")"

    @property
    def is_finite(self):
        return all(f.is_finite for f in self.factors)

    def zero(self):
        return tuple(f.zero() for f in self.factors)

    def one(self):
        return tuple(f.one() for f in self.factors)

    def from_int(self, n):
        return tuple(f.from_int(n) for f in self.factors)

    def _canonical(self, x):
        return tuple(f.coerce(c) for f, c in zip(self.factors, x))

    def add(self, x, y):
        return tuple(f.add(a, b) for f, a, b in zip(self.factors, x, y))

    def sub(self, x, y):
        return tuple(f.sub(a, b) for f, a, b in zip(self.factors, x, y))

    def neg(self, x):
        return tuple(f.neg(a) for f, a in zip(self.factors, x))

    def mul(self, x, y):
        return tuple(f.mul(a, b) for f, a, b in zip(self.factors, x, y))

    def is_zero(self, x):
        return all(f.is_zero(a) for f, a in zip(self.factors, x))

    def is_unit(self, x):
        return all(f.is_unit(a) for f, a in zip(self.factors, x))

    def inv(self, x):
        return tuple(f.inv(a) for f, a in zip(self.factors, x))

    def characteristic(self):
        chars = [f.characteristic() for f in self.factors]
        if 0 in chars:
            return 0
        return math.lcm(*chars)

    def order(self):
        return math.prod(f.order() for f in self.factors)

    def elements(self):
        return itertools.product(*(f.elements() for f in self.factors))

    def max_ideals(self):
        out = []
        for c, f in enumerate(self.factors):
            for m in f.max_ideals():
                out.append(MaxIdealHandle(self, len(out), m.residue_char, m.residue_degree, (c, m)))
        return out

    def _residue_field(self, key):
        return key[1].field

    def _residue(self, x, key):
        c, m = key
        return self.factors[c].residue(x[c], m)

    def _crt_lift(self, targets):
        per = [dict() for _ in self.factors]
        for (c, m), t in targets.items():
            per[c][m] = t
        return tuple(f.crt_lift(tg) for f, tg in zip(self.factors, per))

    def gcdex(self, a, b):
        parts = [f.gcdex(x, y) for f, x, y in zip(self.factors, a, b)]
        return tuple(tuple(p[i] for p in parts) for i in range(5))

    def divide(self, r, d):
        out = []
        for f, x, y in zip(self.factors, r, d):
            q = f.divide(x, y)
            if q is None:
                return None
            out.append(q)
        return tuple(out)

    def ideal_is_unit(self, gens):
        gens = list(gens)
        return all(f.ideal_is_unit([g[c] for g in gens]) for c, f in enumerate(self.factors))

    def encode(self, x):
        return [f.encode(c) for f, c in zip(self.factors, x)]

    def decode(self, obj):
        if isinstance(obj, (int, str)):
            return self.from_int(int(obj))
        if len(obj) != len(self.factors):
            raise MalformedInput(f"product element needs {len(self.factors)} components")
        return tuple(f.decode(c) for f, c in zip(self.factors, obj))

    def _describe_ideal(self, m):
        c, inner = m.key
        return f"component {c}: {inner.describe()}"

    def to_json(self):
        return {"type": "product", "factors": [f.to_json() for f in self.factors]}


# ---------------------------------------------------------------------------
# Z localized at a prime


@dataclass(frozen=True)
class LocalInt(Ring):
    """Z_(p): fractions a/s in lowest terms with p not dividing s."""

    p: int

    is_finite = False

    def __post_init__(self):
        if not is_prime(self.p):
            raise MalformedInput(f"LocalInt needs a prime, got {self.p}")

    def __repr__(self):
        return f"Z_({self.p})"

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def from_int(self, n):
        return Fraction(n)

    def _canonical(self, x):
        x = Fraction(x)
        if x.denominator % self.p == 0:
            raise MalformedInput(f"{x} is not in {self!r}")
        return x

    def add(self, x, y):
        return x + y

    def sub(self, x, y):
        return x - y

    def neg(self, x):
        return -x

    def mul(self, x, y):
        return x * y

    def is_zero(self, x):
        return x == 0

    def valuation(self, x):
        if x == 0:
            return math.inf
        n, v = x.numerator, 0
        while n % self.p == 0:
            n //= self.p
            v += 1
        return v

    def is_unit(self, x):
        return x.numerator % self.p != 0

    def inv(self, x):
        if not self.is_unit(x):
            raise NotAUnit(f"{x} is not a unit in {self!r}")
        return 1 / x

    def characteristic(self):
        return 0

    def max_ideals(self):
        return [MaxIdealHandle(self, 0, self.p, 1, None)]

    def _residue_field(self, key):
        return PrimeField(self.p)

    def _residue(self, x, key):
        return x.numerator * pow(x.denominator, -1, self.p) % self.p

    def _crt_lift(self, targets):
        return Fraction(targets[None] % self.p)

    def gcdex(self, a, b):
        one, zero = Fraction(1), Fraction(0)
        if b == 0:
            return a, one, zero, zero, one
        if self.valuation(a) <= self.valuation(b):
            return a, one, zero, -b / a, one
        return b, zero, one, one, -a / b

    def divide(self, r, d):
        if d == 0:
            return Fraction(0) if r == 0 else None
        if self.valuation(d) > self.valuation(r):
            return None
        return r / d

    def ideal_is_unit(self, gens):
        return any(self.is_unit(x) for x in gens)

    def encode(self, x):
        return str(x)

    def decode(self, obj):
        try:
            return self._canonical(Fraction(str(obj)))
        except (TypeError, ValueError, ZeroDivisionError) as exc:
            raise MalformedInput(f"bad element {obj!r} for {self!r}") from exc

    def to_json(self):
        return {"type": "local_int", "p": str(self.p)}


# ---------------------------------------------------------------------------
# maximal orders of quadratic fields


@dataclass(frozen=True)
class QuadOrder(Ring):
    """Z[w] with w = sqrt(d) (d = 2, 3 mod 4) or (1 + sqrt(d))/2 (d = 1 mod 4).

    ``w`` satisfies ``w^2 = trace*w + const``.
    """

    d: int

    semilocal = False
    is_finite = False

    def __post_init__(self):
        if self.d in (0, 1) or not squarefree(self.d):
            raise MalformedInput(f"QuadOrder needs squarefree d != 0, 1; got {self.d}")

    def __repr__(self):
        return f"QuadOrder({self.d})"

    @property
    def trace(self):
        return 1 if self.d % 4 == 1 else 0

    @property
    def const(self):
        return (self.d - 1) // 4 if self.d % 4 == 1 else self.d

    @property
    def discriminant(self):
        return self.trace**2 + 4 * self.const

    def zero(self):
        return (0, 0)

    def one(self):
        return (1, 0)

    def from_int(self, n):
        return (n, 0)

    def _canonical(self, x):
        a, b = x
        return (int(a), int(b))

    def add(self, x, y):
        return (x[0] + y[0], x[1] + y[1])

    def sub(self, x, y):
        return (x[0] - y[0], x[1] - y[1])

    def neg(self, x):
        return (-x[0], -x[1])

    def mul(self, x, y):
        a, b = x
        c, e = y
        be = b * e
        return (a * c + be * self.const, a * e + b * c + be * self.trace)

    def conj(self, x):
        a, b = x
        return (a + b * self.trace, -b)

    def norm(self, x):
        a, b = x
        return a * a + a * b * self.trace - self.const * b * b

    def is_zero(self, x):
        return x == (0, 0)

    def is_unit(self, x):
        return abs(self.norm(x)) == 1

    def inv(self, x):
        n = self.norm(x)
        if abs(n) != 1:
            raise NotAUnit(f"{x} is not a unit in {self!r}")
        c = self.conj(x)
        return (c[0] * n, c[1] * n)

    def exact_div(self, x, y):
        """``x / y`` when it lies in the order, else ``None``."""
        n = self.norm(y)
        if n == 0:
            raise ZeroDivisionError("division by zero in QuadOrder")
        num = self.mul(x, self.conj(y))
        if num[0] % n or num[1] % n:
            return None
        return (num[0] // n, num[1] // n)

    def divide(self, r, d):
        if d == (0, 0):
            return (0, 0) if r == (0, 0) else None
        return self.exact_div(r, d)

    def characteristic(self):
        return 0

    def max_ideals(self):
        raise UnsupportedRing("QuadOrder has infinitely many maximal ideals")

    def primes_above(self, p):
        """Handles for the maximal ideals over the rational prime ``p``.

        Key ``(p, r)`` is the ideal (p, w - r); ``(p, None)`` is the inert (p).
        """
        if not is_prime(p):
            raise MalformedInput(f"{p} is not prime")
        fac = polys.factor_poly((-self.const, -self.trace, 1), p)
        out = []
        for g, _ in fac.factors:
            if polys.degree(g) == 1:
                r = -g[0] % p
                out.append(MaxIdealHandle(self, len(out), p, 1, (p, r)))
            else:
                out.append(MaxIdealHandle(self, len(out), p, 2, (p, None)))
        return out

    def _residue_field(self, key):
        p, r = key
        if r is None:
            return ExtField(p, ((-self.const) % p, (-self.trace) % p, 1))
        return PrimeField(p)

    def _residue(self, x, key):
        p, r = key
        a, b = x
        if r is None:
            return (a % p, b % p)
        return (a + b * r) % p

    def encode(self, x):
        return [str(x[0]), str(x[1])]

    def decode(self, obj):
        if isinstance(obj, (int, str)):
            return (int(obj), 0)
        try:
            a, b = obj
            return (int(a), int(b))
        except (TypeError, ValueError) as exc:
            raise MalformedInput(f"bad element {obj!r} for {self!r}") from exc

    def _describe_ideal(self, m):
        p, r = m.key
        if r is None:
            return f"({p})"
        return f"({p}, w - {r})"

    def to_json(self):
        return {"type": "quad_order", "d": str(self.d)}


def ring_from_json(obj):
    if not isinstance(obj, dict) or "type" not in obj:
        raise MalformedInput(f"ring descriptor must be an object with 'type', got {obj!r}")
    kind = obj["type"]
    try:
        if kind == "zmod":
            return ZMod(int(obj["modulus"]))
        if kind == "gf":
            if "poly" in obj:
                return ExtField(int(obj["p"]), tuple(int(c) for c in obj["poly"]))
            return PrimeField(int(obj["p"]))
        if kind == "fp_quotient":
            return FpQuotient(int(obj["p"]), tuple(int(c) for c in obj["poly"]))
        if kind == "product":
            return Product(tuple(ring_from_json(f) for f in obj["factors"]))
        if kind == "local_int":
            return LocalInt(int(obj["p"]))
        if kind == "quad_order":
            return QuadOrder(int(obj["d"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedInput(f"malformed ring descriptor {obj!r}") from exc
    raise MalformedInput(f"unknown ring type {kind!r}")


def residue_vector(ring, vec, m):
    return [ring.residue(x, m) for x in vec]
