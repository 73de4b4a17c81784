"""Ideals of maximal quadratic orders Z[w] via 2x2 integer Hermite forms.

An element ``a + b*w`` has coordinates ``(a, b)``. A nonzero ideal is the
Z-lattice with basis rows ``[[A, 0], [B, C]]``, ``A, C > 0``, ``0 <= B < A``:
``A`` is the least positive integer in the ideal and the norm is ``A*C``.
"""

import math

from .errors import MalformedInput, NormTooLarge
from .intarith import factorize, trial_bound, xgcd
from .rings import QuadOrder


def lattice_hnf(vectors):
    """HNF ``((A, 0), (B, C))`` of the Z-span of 2-vectors (must have rank 2)."""
    vecs = [(int(x), int(y)) for x, y in vectors if (x, y) != (0, 0)]
    # gcd-combine the second coordinates into one vector
    pivot = None
    rest = []
    for v in vecs:
        if pivot is None:
            if v[1] != 0:
                pivot = v
            else:
                rest.append(v[0])
            continue
        if v[1] == 0:
            rest.append(v[0])
            continue
        g, s, t = xgcd(pivot[1], v[1])
        new_pivot = (s * pivot[0] + t * v[0], g)
        # the complementary combination has zero second coordinate
        other = (v[1] // g) * pivot[0] - (pivot[1] // g) * v[0]
        rest.append(other)
        pivot = new_pivot
    if pivot is None:
        raise MalformedInput("lattice has rank < 2")
    a = 0
    for x in rest:
        a = math.gcd(a, x)
    if a == 0:
        raise MalformedInput("lattice has rank < 2")
    b, c = pivot
    if c < 0:
        b, c = -b, -c
    return ((a, 0), (b % a, c))


class QuadIdeal:
    """Nonzero ideal of a maximal quadratic order, in canonical HNF."""

    __slots__ = ("order", "basis")

    def __init__(self, order, basis):
        if not isinstance(order, QuadOrder):
            raise MalformedInput("QuadIdeal needs a QuadOrder")
        hnf = lattice_hnf(basis)
        self.order = order
        self.basis = hnf
        if not self._closed_under_w():
            raise MalformedInput(f"lattice {hnf} is not an ideal of {order!r}")

    # -- construction ----------------------------------------------------
    @classmethod
    def generated_by(cls, order, gens):
        """Ideal generated by ring elements: Z-span of ``g`` and ``g*w``."""
        w = (0, 1)
        vecs = []
        for g in gens:
            g = order.coerce(g)
            vecs.append(g)
            vecs.append(order.mul(g, w))
        return cls(order, vecs)

    @classmethod
    def unit(cls, order):
        return cls(order, [(1, 0), (0, 1)])

    @classmethod
    def from_json(cls, order, obj):
        try:
            flat = [int(x) for x in obj]
        except (TypeError, ValueError) as exc:
            raise MalformedInput(f"bad ideal {obj!r}") from exc
        if len(flat) != 4:
            raise MalformedInput("ideal must be a row-major 2x2 integer matrix")
        return cls(order, [(flat[0], flat[1]), (flat[2], flat[3])])

    def to_json(self):
        (a, z), (b, c) = self.basis
        return [str(a), str(z), str(b), str(c)]

    # -- basic protocol --------------------------------------------------
    def __eq__(self, other):
        return isinstance(other, QuadIdeal) and self.order == other.order and self.basis == other.basis

    def __hash__(self):
        return hash((self.order, self.basis))

    def __repr__(self):
        return f"QuadIdeal({self.order.d}, {self.basis})"

    def norm(self):
        return self.basis[0][0] * self.basis[1][1]

    def basis_elements(self):
        return [tuple(self.basis[0]), tuple(self.basis[1])]

    def contains(self, x):
        (a, _), (b, c) = self.basis
        x0, x1 = x
        if x1 % c:
            return False
        return (x0 - (x1 // c) * b) % a == 0

    def _closed_under_w(self):
        w = (0, 1)
        return all(self.contains(self.order.mul(v, w)) for v in self.basis_elements())

    def is_unit(self):
        return self.norm() == 1

    def contained_in(self, other):
        return all(other.contains(v) for v in self.basis_elements())

    def __mul__(self, other):
        o = self.order
        prods = [o.mul(x, y) for x in self.basis_elements() for y in other.basis_elements()]
        return QuadIdeal(o, prods)

    def __pow__(self, k):
        out = QuadIdeal.unit(self.order)
        for _ in range(k):
            out = out * self
        return out

    def conjugate(self):
        return QuadIdeal(self.order, [self.order.conj(v) for v in self.basis_elements()])

    def is_principal_generator(self, x):
        return QuadIdeal.generated_by(self.order, [x]) == self

    def small_elements(self, radius):
        """Elements ``u*v1 + v*v2`` with ``|u|, |v| <= radius``, by increasing box size."""
        v1, v2 = self.basis_elements()
        out = []
        for r in range(radius + 1):
            for u in range(-r, r + 1):
                for v in range(-r, r + 1):
                    if max(abs(u), abs(v)) != r:
                        continue
                    out.append((u * v1[0] + v * v2[0], u * v1[1] + v * v2[1]))
        return out

    # -- factorization ---------------------------------------------------
    def prime_factorization(self, bound=None):
        """``[(P, e), ...]`` with the product of ``P**e`` equal to this ideal.

        Primes come from factoring the minimal polynomial of ``w`` modulo
        each rational prime dividing the norm; exponents from containment
        ``I <= P^k``, valid because the order is Dedekind.
        """
        n = self.norm()
        if bound is None:
            bound = trial_bound()
        if n > bound * bound:
            raise NormTooLarge(f"norm {n} beyond trial-division bound {bound}")
        out = []
        for p in sorted(factorize(n, bound)):
            for prime in primes_over(self.order, p):
                k = 0
                power = prime
                while self.contained_in(power):
                    k += 1
                    power = power * prime
                if k:
                    out.append((prime, k))
        return out


def primes_over(order, p):
    """Prime ideals of the order lying over the rational prime ``p``."""
    out = []
    for h in order.primes_above(p):
        _, r = h.key
        if r is None:
            out.append(QuadIdeal.generated_by(order, [(p, 0)]))
        else:
            out.append(QuadIdeal.generated_by(order, [(p, 0), (-r, 1)]))
    return out


def prime_handle(order, prime):
    """The residue-map handle for a prime ideal returned by :func:`primes_over`."""
    p = prime.basis[0][0]
    for h in order.primes_above(p):
        _, r = h.key
        gen = (p, 0) if r is None else (-r, 1)
        if prime.contains(gen) and prime.contains((p, 0)):
            if r is None or QuadIdeal.generated_by(order, [(p, 0), gen]) == prime:
                return h
    raise MalformedInput(f"{prime!r} is not a prime over {p}")


def recompose(factors, order):
    out = QuadIdeal.unit(order)
    for prime, e in factors:
        out = out * prime**e
    return out
