"""Finite free algebras given by structure constants; symbol algebras.

Elements are coordinate vectors in the basis ``e_0 .. e_{d-1}``;
``table[i][j]`` holds the coordinates of ``e_i * e_j``. Linear maps are
``ExactMatrix`` objects acting on column vectors.
"""

import itertools
import math
import random
from dataclasses import dataclass, field

from .errors import (
    BadRoot,
    DimensionTooLarge,
    MalformedInput,
    NotAField,
    NotAUnit,
    SearchExhausted,
)
from .linalg import (
    ExactMatrix,
    MAX_DIM,
    inverse_or_certificate,
    is_ext_or_prime_field,
    rank_of_vectors,
    rref_over_field,
)
from .rings import ring_from_json

# deterministic element scan length before switching to seeded sampling
SPLIT_SCAN_CAP = 2000
SPLIT_RANDOM_TRIES = 20000


class StructureConstantAlgebra:
    __slots__ = ("ring", "dim", "table", "unit", "_left", "_right")

    def __init__(self, ring, table, unit, check=True):
        dim = len(table)
        if dim == 0:
            raise MalformedInput("algebra must have positive dimension")
        if dim * dim > MAX_DIM:
            raise DimensionTooLarge(f"dimension {dim} too large for sandwich checks")
        tab = []
        for row in table:
            if len(row) != dim:
                raise MalformedInput("multiplication table must be square")
            out = []
            for vec in row:
                if len(vec) != dim:
                    raise MalformedInput(f"table entries must have {dim} coordinates")
                out.append(tuple(ring.coerce(x) for x in vec))
            tab.append(tuple(out))
        self.ring = ring
        self.dim = dim
        self.table = tuple(tab)
        self.unit = tuple(ring.coerce(x) for x in unit)
        if len(self.unit) != dim:
            raise MalformedInput("unit has the wrong length")
        self._left = None
        self._right = None
        if check:
            self._verify()

    @classmethod
    def _trusted(cls, ring, table, unit):
        """Skip coercion and checks for tables built from ring elements internally."""
        obj = cls.__new__(cls)
        obj.ring = ring
        obj.dim = len(table)
        obj.table = tuple(tuple(tuple(v) for v in row) for row in table)
        obj.unit = tuple(unit)
        obj._left = None
        obj._right = None
        return obj

    def __repr__(self):
        return f"StructureConstantAlgebra({self.ring!r}, dim={self.dim})"

    def __eq__(self, other):
        return (
            isinstance(other, StructureConstantAlgebra)
            and self.ring == other.ring
            and self.table == other.table
            and self.unit == other.unit
        )

    def __hash__(self):
        return hash((self.ring, self.table, self.unit))

    # -- element arithmetic ----------------------------------------------
    def basis(self, i):
        r = self.ring
        return tuple(r.one() if k == i else r.zero() for k in range(self.dim))

    def zero(self):
        return tuple(self.ring.zero() for _ in range(self.dim))

    def one(self):
        return self.unit

    def add(self, u, v):
        return tuple(self.ring.add(x, y) for x, y in zip(u, v))

    def sub(self, u, v):
        return tuple(self.ring.sub(x, y) for x, y in zip(u, v))

    def scale(self, c, u):
        return tuple(self.ring.mul(c, x) for x in u)

    def mul(self, u, v):
        r = self.ring
        acc = [r.zero()] * self.dim
        for i, ui in enumerate(u):
            if r.is_zero(ui):
                continue
            row = self.table[i]
            for j, vj in enumerate(v):
                if r.is_zero(vj):
                    continue
                c = r.mul(ui, vj)
                for k, t in enumerate(row[j]):
                    if not r.is_zero(t):
                        acc[k] = r.add(acc[k], r.mul(c, t))
        return tuple(acc)

    def pow(self, u, e):
        out = self.unit
        for _ in range(e):
            out = self.mul(out, u)
        return out

    def left_matrix(self, u):
        """Matrix of ``x -> u*x``."""
        cols = [self.mul(u, self.basis(j)) for j in range(self.dim)]
        return ExactMatrix.from_columns(self.ring, cols, self.dim)

    def right_matrix(self, u):
        """Matrix of ``x -> x*u``."""
        cols = [self.mul(self.basis(j), u) for j in range(self.dim)]
        return ExactMatrix.from_columns(self.ring, cols, self.dim)

    def left_basis_matrices(self):
        """``L_i``: column j is ``e_i * e_j``, read off the table."""
        if self._left is None:
            d = self.dim
            self._left = [
                ExactMatrix.from_columns(self.ring, self.table[i], d, coerce=False) for i in range(d)
            ]
        return self._left

    def right_basis_matrices(self):
        """``R_i``: column j is ``e_j * e_i``."""
        if self._right is None:
            d = self.dim
            self._right = [
                ExactMatrix.from_columns(self.ring, [self.table[j][i] for j in range(d)], d, coerce=False)
                for i in range(d)
            ]
        return self._right

    def left_stack(self):
        """The d x d^2 matrix whose row i is ``L_i`` flattened row-major."""
        return ExactMatrix(
            self.ring,
            [[x for row in L.rows for x in row] for L in self.left_basis_matrices()],
            self.dim * self.dim,
            coerce=False,
        )

    def left_matrices_of(self, vectors):
        """``L_v`` for each coordinate vector, as one kernel product."""
        d = self.dim
        coeffs = ExactMatrix(self.ring, [list(v) for v in vectors], d, coerce=False)
        flat = coeffs @ self.left_stack()
        return [
            ExactMatrix(self.ring, [row[r * d:(r + 1) * d] for r in range(d)], d, coerce=False)
            for row in flat.rows
        ]

    def powers(self, u, count):
        """``[1, u, u^2, .., u^(count-1)]`` via the left matrix of u."""
        (lu,) = self.left_matrices_of([u])
        out = [self.unit]
        for _ in range(count - 1):
            out.append(tuple(lu.apply(list(out[-1]))))
        return out

    # -- invariants --------------------------------------------------------
    def _verify(self):
        d = self.dim
        for i in range(d):
            ei = self.basis(i)
            if self.mul(self.unit, ei) != ei or self.mul(ei, self.unit) != ei:
                raise MalformedInput(f"unit is not two-sided on basis element {i}")
        for i, j, k in itertools.product(range(d), repeat=3):
            lhs = self.mul(self.table[i][j], self.basis(k))
            rhs = self.mul(self.basis(i), self.table[j][k])
            if lhs != rhs:
                raise MalformedInput(f"not associative on basis triple {(i, j, k)}")

    # -- constructions -----------------------------------------------------
    def opposite(self):
        d = self.dim
        table = [[self.table[j][i] for j in range(d)] for i in range(d)]
        return StructureConstantAlgebra(self.ring, table, self.unit, check=False)

    def tensor(self, other):
        """``A (x) B`` with basis ``e_i (x) f_j`` at index ``i*dim(B) + j``."""
        if self.ring != other.ring:
            raise MalformedInput("tensor factors over different rings")
        r = self.ring
        da, db = self.dim, other.dim

        def kron(u, v):
            return tuple(r.mul(x, y) for x in u for y in v)

        table = [
            [kron(self.table[i][k], other.table[j][l]) for k in range(da) for l in range(db)]
            for i in range(da)
            for j in range(db)
        ]
        return StructureConstantAlgebra(r, table, kron(self.unit, other.unit), check=False)

    # -- serialization -----------------------------------------------------
    def to_json(self):
        enc = self.ring.encode
        return {
            "ring": self.ring.to_json(),
            "dim": self.dim,
            "table": [[[enc(x) for x in vec] for vec in row] for row in self.table],
            "unit": [enc(x) for x in self.unit],
        }

    @classmethod
    def from_json(cls, obj, ring=None):
        try:
            if ring is None:
                ring = ring_from_json(obj["ring"])
            dim = int(obj["dim"])
            table = [[[ring.decode(x) for x in vec] for vec in row] for row in obj["table"]]
            unit = [ring.decode(x) for x in obj["unit"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedInput(f"malformed algebra {obj!r}") from exc
        if len(table) != dim:
            raise MalformedInput("dim does not match the table")
        return cls(ring, table, unit)


# ---------------------------------------------------------------------------
# standard algebras


def matrix_algebra(ring, n):
    """``M_n(R)`` with basis ``E_ij`` at index ``i*n + j``."""
    d = n * n
    z, o = ring.zero(), ring.one()

    def vec(k):
        return [o if t == k else z for t in range(d)]

    table = []
    for i, j in itertools.product(range(n), repeat=2):
        row = []
        for k, l in itertools.product(range(n), repeat=2):
            row.append(vec(i * n + l) if j == k else [z] * d)
        table.append(row)
    unit = [o if i == j else z for i, j in itertools.product(range(n), repeat=2)]
    return StructureConstantAlgebra(ring, table, unit)


def dual_numbers(ring):
    """``R[eps]/(eps^2)``."""
    z, o = ring.zero(), ring.one()
    return StructureConstantAlgebra(ring, [[[o, z], [z, o]], [[z, o], [z, z]]], [o, z])


def split_algebra(ring, k):
    """``R^k`` with coordinatewise product."""
    z, o = ring.zero(), ring.one()
    table = [[[o if t == i == j else z for t in range(k)] for j in range(k)] for i in range(k)]
    return StructureConstantAlgebra(ring, table, [o] * k)


@dataclass(frozen=True)
class RootOfUnity:
    ring: object
    rho: object
    n: int

    def __post_init__(self):
        r = self.ring
        if self.n < 1:
            raise BadRoot("order must be positive")
        if not r.is_unit(r.from_int(self.n)):
            raise BadRoot(f"{self.n} is not a unit in {r!r}")
        if r.pow(self.rho, self.n) != r.one():
            raise BadRoot(f"rho^{self.n} != 1")
        for k in range(1, self.n):
            if not r.is_unit(r.sub(r.pow(self.rho, k), r.one())):
                raise BadRoot(f"rho^{k} - 1 is not a unit")


def find_root_of_unity(ring, n):
    """First element (in enumeration order) that is a primitive n-th root."""
    for x in ring.elements():
        try:
            return RootOfUnity(ring, x, n)
        except BadRoot:
            continue
    raise BadRoot(f"no primitive {n}-th root of unity in {ring!r}")


def symbol_algebra(a, b, rho):
    """``(a, b)_{n,R}``: ``x^n = a``, ``y^n = b``, ``x*y = rho*y*x``.

    Basis ``x^i y^j`` at index ``i*n + j``. Moving ``y^j`` past ``x^k``
    costs ``rho^(-j*k)``.
    """
    r, n = rho.ring, rho.n
    a, b = r.coerce(a), r.coerce(b)
    for name, v in (("a", a), ("b", b)):
        if not r.is_unit(v):
            raise NotAUnit(f"{name} = {v} is not a unit")
    d = n * n
    rinv = r.inv(rho.rho)
    rho_pows = [r.pow(rinv, k) for k in range(n)]
    z = r.zero()
    table = []
    for i, j in itertools.product(range(n), repeat=2):
        row = []
        for k, l in itertools.product(range(n), repeat=2):
            c = rho_pows[(j * k) % n]
            xi, yj = i + k, j + l
            if xi >= n:
                xi -= n
                c = r.mul(c, a)
            if yj >= n:
                yj -= n
                c = r.mul(c, b)
            vec = [z] * d
            vec[xi * n + yj] = c
            row.append(vec)
        table.append(row)
    unit = [r.one()] + [z] * (d - 1)
    return StructureConstantAlgebra(r, table, unit)


# ---------------------------------------------------------------------------
# Azumaya test


@dataclass
class AzumayaCertificate:
    azumaya: bool
    det: object
    witness: object = None
    size: int = 0

    def __bool__(self):
        return self.azumaya

    def to_json(self, ring):
        out = {"azumaya": self.azumaya, "sandwich_size": self.size, "det": ring.encode(self.det)}
        if self.witness is not None:
            out["witness_ideal"] = self.witness.describe()
        return out


def sandwich_matrix(A):
    """Matrix of ``A (x) A^op -> End(A)``, ``e_i (x) e_j -> (x -> e_i x e_j)``.

    Column ``(i, j)`` is the flattened matrix ``L_i R_j``.
    """
    d = A.dim
    lefts, rights = A.left_basis_matrices(), A.right_basis_matrices()
    cols = []
    for i in range(d):
        for j in range(d):
            m = lefts[i] @ rights[j]
            cols.append([x for row in m.rows for x in row])
    return ExactMatrix.from_columns(A.ring, cols, d * d, coerce=False)


def is_azumaya(A):
    s = sandwich_matrix(A)
    res = inverse_or_certificate(s)
    return AzumayaCertificate(res.ok, res.det, res.witness, s.nrows)


# ---------------------------------------------------------------------------
# splitting over a finite field


def _coordinate_solver(field, basis_cols, dim):
    """Left inverse ``C`` (n x dim) of the dim x n matrix with the given columns."""
    n = len(basis_cols)
    bmat = ExactMatrix.from_columns(field, basis_cols, dim)
    # pick n independent rows of B
    _, pivots, rank = rref_over_field(bmat.transpose())
    if rank != n:
        raise MalformedInput("basis columns are dependent")
    sub = bmat.submatrix(row_idx=list(pivots))
    inv = inverse_or_certificate(sub).inverse
    rows = []
    for r in range(n):
        row = [field.zero()] * dim
        for t, p in enumerate(pivots):
            row[p] = inv.rows[r][t]
        rows.append(row)
    return ExactMatrix(field, rows, dim, coerce=False), bmat


@dataclass
class SplitData:
    """``rho: A -> M_n(F)`` from the action of A on the left ideal ``A*e``."""

    element: tuple
    eigenvalues: list
    idempotent: tuple
    ideal_basis: list
    images: list
    seed: int
    tries: int = 0
    checks: dict = field(default_factory=dict)

    def to_json(self, ring):
        enc = ring.encode
        return {
            "element": [enc(x) for x in self.element],
            "eigenvalues": [enc(x) for x in self.eigenvalues],
            "idempotent": [enc(x) for x in self.idempotent],
            "left_ideal_basis": [[enc(x) for x in v] for v in self.ideal_basis],
            "images": [[[enc(x) for x in row] for row in m.rows] for m in self.images],
            "seed": self.seed,
            "tries": self.tries,
            "checks": self.checks,
        }


def _candidates(A, seed):
    F = A.ring
    elems = list(F.elements())
    for n, v in enumerate(itertools.product(elems, repeat=A.dim)):
        if n >= SPLIT_SCAN_CAP:
            break
        yield tuple(v)
    rng = random.Random(seed)
    for _ in range(SPLIT_RANDOM_TRIES):
        yield tuple(rng.choice(elems) for _ in range(A.dim))


def _min_poly_roots(A, u, n):
    """Distinct roots of the minimal polynomial of ``u`` when it has degree n and splits."""
    F = A.ring
    powers = [A.pow(u, k) for k in range(n + 1)]
    if rank_of_vectors(F, powers[:n], A.dim) < n:
        return None
    if rank_of_vectors(F, powers, A.dim) > n:
        return None
    roots = []
    for lam in F.elements():
        # lam is a root iff u - lam is a zero divisor
        shifted = A.sub(u, A.scale(lam, A.unit))
        if rank_over_left(A, shifted) < A.dim:
            roots.append(lam)
    return roots if len(roots) == n else None


def rank_over_left(A, u):
    return rank_of_vectors(A.ring, [tuple(r) for r in A.left_matrix(u).transpose().rows], A.dim)


def split_over_finite_field(A, seed=0):
    F = A.ring
    if not is_ext_or_prime_field(F):
        raise NotAField(f"{F!r} is not a finite field")
    n = math.isqrt(A.dim)
    if n * n != A.dim:
        raise MalformedInput(f"dimension {A.dim} is not a square")
    q = F.order()
    if (q - 1) % n:
        raise MalformedInput(f"{n} does not divide q - 1 = {q - 1}")
    if n == 1:
        one = F.one()
        return SplitData(A.unit, [], A.unit, [A.unit], [ExactMatrix(F, [[one]], 1)], seed, 0,
                         {"homomorphism": True, "bijective": True})
    for tries, u in enumerate(_candidates(A, seed), start=1):
        roots = _min_poly_roots(A, u, n)
        if roots is None:
            continue
        e = A.unit
        lam0 = roots[0]
        for lam in roots[1:]:
            factor = A.scale(F.inv(F.sub(lam0, lam)), A.sub(u, A.scale(lam, A.unit)))
            e = A.mul(e, factor)
        if A.mul(e, e) != e:
            continue
        span = [A.mul(A.basis(i), e) for i in range(A.dim)]
        if rank_of_vectors(F, span, A.dim) != n:
            continue
        basis = []
        for v in span:
            if rank_of_vectors(F, basis + [v], A.dim) > len(basis):
                basis.append(v)
            if len(basis) == n:
                break
        data = _representation(A, u, roots, e, basis, seed, tries)
        if data is not None:
            return data
    raise SearchExhausted(f"no splitting idempotent found (seed {seed})", seed=seed)


def _representation(A, u, roots, e, basis, seed, tries):
    F = A.ring
    solver, bmat = _coordinate_solver(F, basis, A.dim)
    images = [solver @ L @ bmat for L in A.left_basis_matrices()]
    data = SplitData(u, roots, e, basis, images, seed, tries)
    if not verify_split(A, data):
        return None
    return data


def verify_split(A, data):
    """Re-check that the stored images define an algebra isomorphism onto M_n."""
    F = A.ring
    images = data.images
    n = images[0].nrows
    d = A.dim

    def rho(vec):
        acc = ExactMatrix.zeros(F, n, n)
        for c, m in zip(vec, images):
            if not F.is_zero(c):
                acc = acc + m.scale(c)
        return acc

    hom = rho(A.unit) == ExactMatrix.identity(F, n) and all(
        rho(A.table[i][j]) == images[i] @ images[j] for i in range(d) for j in range(d)
    )
    flat = [[x for row in m.rows for x in row] for m in images]
    bij = n * n == d and rank_of_vectors(F, flat, n * n) == d
    e = data.idempotent
    idem = A.mul(e, e) == tuple(e)
    data.checks = {"homomorphism": hom, "bijective": bij, "idempotent": idem}
    return hom and bij and idem
