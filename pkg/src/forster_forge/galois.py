"""Cyclic Galois extensions of finite rings; Artin-Schreier construction and descent.

The group is cyclic, presented as ``<sigma | sigma^order = 1>`` with
``sigma`` an R-linear automorphism matrix of the algebra S.
"""

import itertools
from dataclasses import dataclass, field
from math import comb

from .algebras import StructureConstantAlgebra, split_algebra
from .errors import (
    InvariantBreach,
    MalformedInput,
    NoSolution,
    NotCharP,
    NotCyclicP,
    RankMismatch,
)
from . import polys
from .intarith import is_prime
from .linalg import ExactMatrix, determinant, solve
from .rings import ExtField, FpQuotient, PrimeField, Product


@dataclass
class GaloisExtensionData:
    base: object
    algebra: StructureConstantAlgebra
    sigma: ExactMatrix
    order: int
    elements: list = field(init=False, repr=False)
    certificate: object = field(init=False, default=None, repr=False)

    def __post_init__(self):
        A, R = self.algebra, self.base
        if A.ring != R or self.sigma.ring != R:
            raise MalformedInput("algebra and automorphism must live over the base ring")
        if self.sigma.shape != (A.dim, A.dim):
            raise MalformedInput("automorphism matrix has the wrong size")
        if self.order < 1:
            raise MalformedInput("group order must be positive")
        s = self.sigma
        if s.apply(list(A.unit)) != list(A.unit):
            raise MalformedInput("sigma does not fix 1")
        # sigma(e_i x) = sigma(e_i) sigma(x) for all x  <=>  s L_i = L_{s e_i} s
        d = A.dim
        wide = ExactMatrix(
            R, [[x for L in A.left_basis_matrices() for x in L.rows[k]] for k in range(d)],
            d * d, coerce=False,
        )
        images = A.left_matrices_of(s.columns())
        tall = ExactMatrix(R, [row for L in images for row in L.rows], d, coerce=False)
        lhs, rhs = (s @ wide).rows, (tall @ s).rows
        for i in range(d):
            if any(lhs[k][i * d:(i + 1) * d] != rhs[i * d + k] for k in range(d)):
                raise MalformedInput(f"sigma is not multiplicative on basis element {i}")
        elems = [ExactMatrix.identity(R, A.dim)]
        for _ in range(self.order - 1):
            elems.append(s @ elems[-1])
        if s @ elems[-1] != elems[0]:
            raise MalformedInput(f"sigma^{self.order} != 1")
        self.elements = elems

    def apply(self, k, vec):
        return tuple(self.elements[k % self.order].apply(list(vec)))

    def to_json(self):
        return {
            "algebra": self.algebra.to_json(),
            "sigma": self.sigma.to_json(),
            "order": self.order,
        }

    @classmethod
    def from_json(cls, obj):
        try:
            A = StructureConstantAlgebra.from_json(obj["algebra"])
            sigma = ExactMatrix.from_json(obj["sigma"], A.ring)
            order = int(obj["order"])
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedInput(f"malformed extension {obj!r}") from exc
        return cls(A.ring, A, sigma, order)


def char_p(ring):
    p = ring.characteristic()
    if not is_prime(p):
        raise NotCharP(f"{ring!r} has characteristic {p}, not a prime")
    return p


def artin_schreier(ring, a):
    """``R[x]/(x^p - x - a)`` with basis ``1, x, .., x^(p-1)`` and ``sigma(x) = x + 1``."""
    p = char_p(ring)
    A = _artin_schreier_algebra(ring, ring.coerce(a), p)
    z = ring.zero()
    # sigma(x^j) = (x + 1)^j
    cols = [[ring.from_int(comb(j, k)) if k <= j else z for k in range(p)] for j in range(p)]
    sigma = ExactMatrix.from_columns(ring, cols, p)
    return GaloisExtensionData(ring, A, sigma, p)


def _artin_schreier_algebra(ring, a, p):
    z, o = ring.zero(), ring.one()

    def mono(k):
        return [o if t == k else z for t in range(p)]

    table = []
    for i in range(p):
        row = []
        for j in range(p):
            k = i + j
            if k < p:
                row.append(mono(k))
            else:
                # x^k = x^(k-p) * (x + a)
                vec = [z] * p
                vec[k - p + 1] = o
                vec[k - p] = ring.add(vec[k - p], a)
                row.append(vec)
        table.append(row)
    return StructureConstantAlgebra._trusted(ring, table, mono(0))


def split_extension(ring, n):
    """``R^n`` with ``sigma`` the cyclic coordinate shift."""
    A = split_algebra(ring, n)
    z, o = ring.zero(), ring.one()
    cols = [[o if t == (j + 1) % n else z for t in range(n)] for j in range(n)]
    return GaloisExtensionData(ring, A, ExactMatrix.from_columns(ring, cols, n), n)


def trivial_action(algebra, n):
    """``algebra`` with the identity acting as a generator of order n."""
    return GaloisExtensionData(
        algebra.ring, algebra, ExactMatrix.identity(algebra.ring, algebra.dim), n
    )


# ---------------------------------------------------------------------------
# Galois test


@dataclass
class GaloisCertificate:
    galois: bool
    det: object
    size: int
    witness: object = None

    def __bool__(self):
        return self.galois

    def to_json(self, ring):
        out = {"galois": self.galois, "comparison_size": self.size, "det": ring.encode(self.det)}
        if self.witness is not None:
            out["witness_ideal"] = self.witness.describe()
        return out


def comparison_matrix(E):
    """``S (x) S -> prod_gamma S``, ``e_i (x) e_j -> (e_i * gamma(e_j))_gamma``.

    Row ``g*d + k``, column ``i*d + j``: entry ``(L_i G_g)[k][j]``.
    """
    A = E.algebra
    d = A.dim
    # all L_i stacked vertically, so each group element costs one product
    lefts = A.left_basis_matrices()
    tall = ExactMatrix(A.ring, [L.rows[k] for k in range(d) for L in lefts], d, coerce=False)
    chain = itertools.chain.from_iterable
    rows = []
    for G in E.elements:
        block = (tall @ G).rows
        for k in range(d):
            rows.append(tuple(chain(block[k * d:(k + 1) * d])))
    return ExactMatrix(A.ring, rows, d * d, coerce=False)


def is_galois(E):
    """The comparison map is bijective iff its determinant is a unit."""
    if E.algebra.dim != E.order:
        raise RankMismatch(f"rank {E.algebra.dim} differs from group order {E.order}")
    m = comparison_matrix(E)
    det = determinant(m)
    R = E.base
    ok = R.is_unit(det)
    witness = None
    if not ok and R.semilocal:
        witness = next(q for q in R.max_ideals() if q.field.is_zero(R.residue(det, q)))
    E.certificate = GaloisCertificate(ok, det, m.nrows, witness)
    return E.certificate


# ---------------------------------------------------------------------------
# descent


def wp_preimage(ring, target):
    """Some ``c`` with ``c^p - c = target``, or ``None`` (exhausts R)."""
    p = char_p(ring)
    target = ring.coerce(target)
    for c in ring.elements():
        if ring.sub(ring.pow(c, p), c) == target:
            return c
    return None


@dataclass
class DescentResult:
    a: object
    x: tuple
    isomorphism: ExactMatrix
    iso_det: object

    def to_json(self, ring):
        return {
            "a": ring.encode(self.a),
            "x": [ring.encode(c) for c in self.x],
            "isomorphism": self.isomorphism.to_json(),
            "isomorphism_det": ring.encode(self.iso_det),
        }


def artin_schreier_descent(E):
    """``a`` with ``E`` isomorphic to ``artin_schreier(R, a)``.

    Solves ``(sigma - 1) x = 1`` in S; then ``a = x^p - x`` is sigma-fixed
    and lands in R. The isomorphism sends the abstract generator to ``x``.
    """
    R = E.base
    p = char_p(R)
    A = E.algebra
    if E.order != p:
        raise NotCyclicP(f"group order {E.order} is not the characteristic {p}")
    d = A.dim
    if d != p:
        raise RankMismatch(f"rank {d} differs from {p}")
    cert = E.certificate if E.certificate is not None else is_galois(E)
    if not cert:
        raise NoSolution("extension is not Galois")
    lhs = E.sigma - ExactMatrix.identity(R, d)
    x = solve(lhs, list(A.unit))
    if x is None:
        raise NoSolution("(sigma - 1) x = 1 has no solution")
    x = tuple(x)
    cols = A.powers(x, p + 1)
    wp = A.sub(cols[p], x)
    cols = cols[:p]
    a = wp[0] if A.unit == A.basis(0) else None
    if a is None or wp != A.scale(a, A.unit):
        # general unit vector: a must be a multiple of 1
        a = _scalar_of(A, wp)
    iso = ExactMatrix.from_columns(R, cols, d, coerce=False)
    checks = check_descent(E, a, x, iso)
    if not all(checks.values()):
        failed = ", ".join(k for k, v in checks.items() if not v)
        raise InvariantBreach(f"descent map fails: {failed}")
    return DescentResult(a, x, iso, determinant(iso))


def check_descent(E, a, x, iso=None):
    """Re-derive the claims behind a descent: which of them hold.

    The target is generated by its x, so a linear map sending ``x^k`` to
    ``x^k`` that commutes with multiplication by x is an algebra map.
    """
    R, A = E.base, E.algebra
    p = char_p(R)
    x = tuple(x)
    if iso is None:
        iso = ExactMatrix.from_columns(R, A.powers(x, p), A.dim, coerce=False)
    target = _artin_schreier_algebra(R, R.coerce(a), p)
    (lx,) = A.left_matrices_of([x])
    tx = target.left_basis_matrices()[1]
    return {
        "multiplicative": iso @ tx == lx @ iso,
        "bijective": R.is_unit(determinant(iso)),
        "sigma_x_is_x_plus_1": E.apply(1, x) == A.add(x, A.unit),
    }


def _scalar_of(A, v):
    R = A.ring
    for i, u in enumerate(A.unit):
        if R.is_unit(u):
            c = R.mul(v[i], R.inv(u))
            if A.scale(c, A.unit) == tuple(v):
                return c
            break
    raise InvariantBreach("x^p - x does not lie in the base ring")


# ---------------------------------------------------------------------------
# the small characteristic-p part of the ring menu


def _first_irreducible(p, d):
    return next(f for f in polys.all_monic(d, p) if polys.is_irreducible(f, p))


def _local_blocks(p, max_size):
    out = []
    k = 1
    while p**k <= max_size:
        out.append(PrimeField(p) if k == 1 else ExtField(p, _first_irreducible(p, k)))
        for dg in range(1, k):
            if k % dg == 0:
                g = _first_irreducible(p, dg)
                f = (1,)
                for _ in range(k // dg):
                    f = polys.mul(f, g, p)
                out.append(FpQuotient(p, f))
        k += 1
    return out


def small_char_p_rings(max_size=27):
    """Representatives of the char-p rings of the menu with at most ``max_size`` elements.

    Fields, local quotients ``GF(p)[t]/(g^e)``, one non-local quotient per
    factorization type, and products of at least two local pieces.
    """
    out = []
    p = 2
    while p <= max_size:
        if is_prime(p):
            blocks = _local_blocks(p, max_size)
            out += blocks
            seen = set()
            k = 2
            while p**k <= max_size:
                for f in polys.all_monic(k, p):
                    fac = polys.factor_poly(f, p).factors
                    if len(fac) < 2:
                        continue
                    key = tuple(sorted((polys.degree(g), e) for g, e in fac))
                    if key not in seen:
                        seen.add(key)
                        out.append(FpQuotient(p, f))
                k += 1
            for r in range(2, max_size.bit_length() + 1):
                for combo in itertools.combinations_with_replacement(range(len(blocks)), r):
                    size = 1
                    for i in combo:
                        size *= blocks[i].order()
                    if size <= max_size:
                        out.append(Product(tuple(blocks[i] for i in combo)))
        p += 1
    return out
