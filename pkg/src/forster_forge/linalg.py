"""Exact dense linear algebra over the ring kernel.

Over prime fields and Z/N the heavy loops go through
:mod:`forster_forge.kernels`; everything else is generic code written against
the ``Ring`` element API.
"""

import operator
from dataclasses import dataclass
from itertools import permutations

from . import kernels
from .errors import DimensionTooLarge, MalformedInput, MismatchedRing, NotAField, NotZMod
from .rings import ExtField, LocalInt, PrimeField, Product, QuadOrder, ZMod, _PolyRing, ring_from_json

# user-supplied matrices; certificate matrices built internally (sandwich and
# Galois comparison maps) may be larger, up to MAX_DIM
MAX_INPUT_DIM = 64
MAX_DIM = 1024


def _is_zmod(ring):
    return isinstance(ring, ZMod)


class ExactMatrix:
    """Immutable dense matrix of ring elements, stored as a tuple of row tuples."""

    __slots__ = ("ring", "nrows", "ncols", "rows")

    def __init__(self, ring, rows, ncols=None, coerce=True):
        if coerce:
            c = ring.coerce
            rows = tuple(tuple(map(c, r)) for r in rows)
        else:
            rows = tuple(map(tuple, rows))
        nrows = len(rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise MalformedInput("ragged matrix rows")
        if nrows > MAX_DIM or ncols > MAX_DIM:
            raise DimensionTooLarge(f"{nrows}x{ncols} exceeds the {MAX_DIM} guard")
        self.ring = ring
        self.nrows = nrows
        self.ncols = ncols
        self.rows = rows

    # -- constructors ----------------------------------------------------
    @classmethod
    def zeros(cls, ring, nrows, ncols):
        z = ring.zero()
        return cls(ring, [[z] * ncols for _ in range(nrows)], ncols, coerce=False)

    @classmethod
    def identity(cls, ring, n):
        z, o = ring.zero(), ring.one()
        return cls(ring, [[o if i == j else z for j in range(n)] for i in range(n)], n, coerce=False)

    @classmethod
    def elementary(cls, ring, n, i, j, a):
        """``e_ij(a)``: identity plus ``a`` at (i, j), zero-based indices."""
        if i == j:
            raise ValueError("elementary matrices need i != j")
        rows = [list(r) for r in cls.identity(ring, n).rows]
        rows[i][j] = ring.coerce(a)
        return cls(ring, rows, n, coerce=False)

    @classmethod
    def from_columns(cls, ring, columns, nrows=None, coerce=True):
        columns = [list(c) for c in columns]
        if nrows is None:
            nrows = len(columns[0]) if columns else 0
        return cls(ring, [[c[i] for c in columns] for i in range(nrows)], len(columns), coerce=coerce)

    # -- basic protocol --------------------------------------------------
    def __repr__(self):
        return f"ExactMatrix({self.ring!r}, {[list(r) for r in self.rows]})"

    def __eq__(self, other):
        return (
            isinstance(other, ExactMatrix)
            and self.ring == other.ring
            and self.nrows == other.nrows
            and self.ncols == other.ncols
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.ring, self.nrows, self.ncols, self.rows))

    def __getitem__(self, idx):
        i, j = idx
        return self.rows[i][j]

    @property
    def shape(self):
        return self.nrows, self.ncols

    @property
    def is_square(self):
        return self.nrows == self.ncols

    def column(self, j):
        return [r[j] for r in self.rows]

    def columns(self):
        return [self.column(j) for j in range(self.ncols)]

    def tolist(self):
        return [list(r) for r in self.rows]

    def transpose(self):
        return ExactMatrix(self.ring, [self.column(j) for j in range(self.ncols)], self.nrows, coerce=False)

    T = property(transpose)

    def submatrix(self, row_idx=None, col_idx=None):
        ri = range(self.nrows) if row_idx is None else row_idx
        ci = range(self.ncols) if col_idx is None else list(col_idx)
        return ExactMatrix(self.ring, [[self.rows[i][j] for j in ci] for i in ri], len(ci), coerce=False)

    def hstack(self, other):
        self._same_ring(other)
        return ExactMatrix(self.ring, [a + b for a, b in zip(self.rows, other.rows)],
                           self.ncols + other.ncols, coerce=False)

    def vstack(self, other):
        self._same_ring(other)
        return ExactMatrix(self.ring, self.rows + other.rows, self.ncols, coerce=False)

    def map(self, fn, ring):
        return ExactMatrix(ring, [[fn(x) for x in r] for r in self.rows], self.ncols, coerce=False)

    def residue(self, m):
        """Entrywise image in the residue field at ``m``."""
        ring = self.ring
        return self.map(lambda x: ring.residue(x, m), m.field)

    # -- arithmetic ------------------------------------------------------
    def _same_ring(self, other):
        if self.ring != other.ring:
            raise MismatchedRing(f"{self.ring!r} vs {other.ring!r}")

    def __add__(self, other):
        self._same_ring(other)
        add = self.ring.add
        return ExactMatrix(self.ring, [[add(x, y) for x, y in zip(a, b)] for a, b in zip(self.rows, other.rows)],
                           self.ncols, coerce=False)

    def __sub__(self, other):
        self._same_ring(other)
        sub = self.ring.sub
        return ExactMatrix(self.ring, [[sub(x, y) for x, y in zip(a, b)] for a, b in zip(self.rows, other.rows)],
                           self.ncols, coerce=False)

    def __neg__(self):
        return self.map(self.ring.neg, self.ring)

    def scale(self, c):
        mul = self.ring.mul
        return self.map(lambda x: mul(c, x), self.ring)

    def __matmul__(self, other):
        if isinstance(other, ExactMatrix):
            self._same_ring(other)
            if self.ncols != other.nrows:
                raise MalformedInput(f"shape mismatch {self.shape} @ {other.shape}")
            ring = self.ring
            if self.ncols == 0:
                return ExactMatrix.zeros(ring, self.nrows, other.ncols)
            if _is_zmod(ring):
                rows = kernels.matmul_mod(self.tolist(), other.tolist(), ring.modulus)
                return ExactMatrix(ring, rows, other.ncols, coerce=False)
            if isinstance(ring, Product):
                return _matmul_product(self, other)
            if isinstance(ring, _PolyRing):
                return _matmul_poly(self, other)
            cols = other.columns()
            dot = ring.dot
            return ExactMatrix(ring, [[dot(r, c) for c in cols] for r in self.rows], other.ncols, coerce=False)
        return self.apply(other)

    __mul__ = __matmul__

    def apply(self, vec):
        """Matrix times a coordinate vector."""
        ring = self.ring
        if _is_zmod(ring) and self.nrows:
            n = ring.modulus
            return [sum(map(operator.mul, r, vec)) % n for r in self.rows]
        dot = ring.dot
        return [dot(r, vec) for r in self.rows]

    def __pow__(self, e):
        result = ExactMatrix.identity(self.ring, self.nrows)
        base = self
        while e:
            if e & 1:
                result = result @ base
            base = base @ base
            e >>= 1
        return result

    def is_zero(self):
        z = self.ring.is_zero
        return all(z(x) for r in self.rows for x in r)

    def is_identity(self):
        return self.is_square and self == ExactMatrix.identity(self.ring, self.nrows)

    # -- JSON ------------------------------------------------------------
    def to_json(self):
        enc = self.ring.encode
        return {
            "ring": self.ring.to_json(),
            "rows": self.nrows,
            "cols": self.ncols,
            "data": [enc(x) for r in self.rows for x in r],
        }

    @classmethod
    def from_json(cls, obj, ring=None, max_dim=MAX_INPUT_DIM):
        if isinstance(obj, list) and ring is not None:
            # bare row list; the ring comes from the caller
            ncols = len(obj[0]) if obj else 0
            if any(not isinstance(r, list) or len(r) != ncols for r in obj):
                raise MalformedInput("matrix rows must be lists of equal length")
            obj = {"rows": len(obj), "cols": ncols, "data": [x for r in obj for x in r]}
        try:
            ring = ring if ring is not None else ring_from_json(obj["ring"])
            nrows, ncols = int(obj["rows"]), int(obj["cols"])
            data = obj["data"]
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedInput(f"malformed matrix {obj!r}") from exc
        if nrows > max_dim or ncols > max_dim:
            raise DimensionTooLarge(f"{nrows}x{ncols} exceeds the {max_dim} input guard")
        if len(data) != nrows * ncols:
            raise MalformedInput("matrix data length does not match rows*cols")
        dec = ring.decode
        rows = [[dec(data[i * ncols + j]) for j in range(ncols)] for i in range(nrows)]
        return cls(ring, rows, ncols, coerce=False)


def _component(m, idx):
    f = m.ring.factors[idx]
    return ExactMatrix(f, [[x[idx] for x in r] for r in m.rows], m.ncols, coerce=False)


def _matmul_product(a, b):
    """Componentwise over a product ring, so each factor can use its fast path."""
    ring = a.ring
    parts = [(_component(a, k) @ _component(b, k)).rows for k in range(len(ring.factors))]
    rows = [
        [tuple(part[i][j] for part in parts) for j in range(b.ncols)] for i in range(a.nrows)
    ]
    return ExactMatrix(ring, rows, b.ncols, coerce=False)


def _matmul_poly(a, b):
    """Over GF(p)[t]/(f): multiply coefficient matrices with the kernel, then reduce."""
    ring = a.ring
    p, k = ring.p, ring.deg
    ca = [[[x[t] for x in r] for r in a.rows] for t in range(k)]
    cb = [[[x[t] for x in r] for r in b.rows] for t in range(k)]
    nr, nc = a.nrows, b.ncols
    acc = [[[0] * nc for _ in range(nr)] for _ in range(2 * k - 1)]
    for s in range(k):
        for t in range(k):
            prod = kernels.matmul_mod(ca[s], cb[t], p)
            target = acc[s + t]
            for i in range(nr):
                ti, pi = target[i], prod[i]
                for j in range(nc):
                    ti[j] += pi[j]
    # t^e mod f for the overflow degrees
    reductions = [ring.as_poly(ring.coerce(tuple([0] * e + [1]))) for e in range(k, 2 * k - 1)]
    rows = []
    for i in range(nr):
        row = []
        for j in range(nc):
            coeffs = [acc[e][i][j] for e in range(k)]
            for e, red in enumerate(reductions, start=k):
                c = acc[e][i][j]
                if c:
                    for d, r in enumerate(red):
                        coeffs[d] += c * r
            row.append(tuple(c % p for c in coeffs))
        rows.append(row)
    return ExactMatrix(ring, rows, nc, coerce=False)


def vector_to_json(ring, vec):
    return [ring.encode(x) for x in vec]


def vector_from_json(ring, obj):
    return [ring.decode(x) for x in obj]


# ---------------------------------------------------------------------------
# fields


def _require_field(ring):
    if not ring.is_field:
        raise NotAField(f"{ring!r} is not a field")


def rref_over_field(m):
    """Reduced row echelon form; returns ``(matrix, pivot_columns, rank)``."""
    ring = m.ring
    _require_field(ring)
    if isinstance(ring, PrimeField):
        rows, pivots = kernels.rref_mod_p(m.tolist(), ring.modulus)
        return ExactMatrix(ring, rows, m.ncols, coerce=False), pivots, len(pivots)
    rows = m.tolist()
    pivots = []
    r = 0
    for c in range(m.ncols):
        if r == m.nrows:
            break
        piv = next((i for i in range(r, m.nrows) if not ring.is_zero(rows[i][c])), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = ring.inv(rows[r][c])
        rows[r] = [ring.mul(inv, x) for x in rows[r]]
        for i in range(m.nrows):
            if i != r and not ring.is_zero(rows[i][c]):
                f = rows[i][c]
                rows[i] = [ring.sub(x, ring.mul(f, y)) for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return ExactMatrix(ring, rows, m.ncols, coerce=False), pivots, len(pivots)


def rank_over_field(m):
    if m.nrows == 0 or m.ncols == 0:
        return 0
    ring = m.ring
    _require_field(ring)
    if isinstance(ring, PrimeField):
        return kernels.rank_mod_p(m.tolist(), ring.modulus)
    return rref_over_field(m)[2]


def rank_of_vectors(field, vectors, length):
    """Rank of a list of field vectors (each of the given length)."""
    if not vectors or length == 0:
        return 0
    return rank_over_field(ExactMatrix(field, vectors, length, coerce=False))


def in_span_over_field(field, vectors, v, length):
    base = rank_of_vectors(field, vectors, length)
    return rank_of_vectors(field, list(vectors) + [v], length) == base


# ---------------------------------------------------------------------------
# Howell form over Z/N


def _normalizing_unit(a, n):
    """A unit ``u`` of Z/N with ``u*a = gcd(a, N)``."""
    from math import gcd

    g = gcd(a, n)
    m = n // g
    if m == 1:
        return 1
    u0 = pow(a // g, -1, m)
    for k in range(g):
        u = u0 + k * m
        if gcd(u, n) == 1:
            return u
    raise AssertionError("no normalizing unit")  # unreachable


def howell_form(m):
    """Howell normal form: canonical generators of the row span over Z/N.

    Echelon, every pivot divides N, entries above a pivot are reduced into
    ``range(pivot)``, and for each pivot row ``(N/pivot)*row`` has been fed
    back into the elimination so the row span is described exactly.
    """
    ring = m.ring
    if not _is_zmod(ring):
        raise NotZMod(f"Howell form needs Z/N, got {ring!r}")
    n = ring.modulus
    cols = m.ncols
    a = [list(r) for r in m.rows]
    r = 0
    for c in range(cols):
        if r >= len(a):
            break
        for i in range(r + 1, len(a)):
            if a[i][c] % n:
                _, s, t, u, v = ring.gcdex(a[r][c], a[i][c])
                rr, ri = a[r], a[i]
                a[r] = [(s * x + t * y) % n for x, y in zip(rr, ri)]
                a[i] = [(u * x + v * y) % n for x, y in zip(rr, ri)]
        if a[r][c] % n == 0:
            continue
        unit = _normalizing_unit(a[r][c], n)
        if unit != 1:
            a[r] = [x * unit % n for x in a[r]]
        piv = a[r][c]
        for i in range(r):
            q = a[i][c] // piv
            if q:
                a[i] = [(x - q * y) % n for x, y in zip(a[i], a[r])]
        extra = [(n // piv) * x % n for x in a[r]]
        if any(extra):
            a.append(extra)
        r += 1
    out = [row for row in a[:r] if any(row)]
    return ExactMatrix(ring, out, cols, coerce=False)


def howell_contains(h, vec):
    """Membership of ``vec`` in the row span described by a Howell form ``h``."""
    n = h.ring.modulus
    v = [x % n for x in vec]
    for row in h.rows:
        c = next(j for j, x in enumerate(row) if x)
        piv = row[c]
        if v[c] % piv:
            return False
        q = v[c] // piv
        if q:
            v = [(x - q * y) % n for x, y in zip(v, row)]
    return not any(v)


# ---------------------------------------------------------------------------
# determinants, characteristic polynomials, inverses


def _triangularize(m, track_u=True):
    """Row-reduce a square matrix with Bezout steps.

    Returns ``(U, T, det_u)`` with ``T = U*m`` upper triangular and ``det_u``
    the (unit) determinant of ``U``. ``U`` is only tracked as a list of rows,
    and only when ``track_u`` is set.
    """
    ring = m.ring
    n = m.nrows
    t = m.tolist()
    u = ExactMatrix.identity(ring, n).tolist() if track_u else None
    det_u = ring.one()
    mul, add, sub, is_zero = ring.mul, ring.add, ring.sub, ring.is_zero
    mats = (t, u) if track_u else (t,)
    for c in range(n):
        # a unit pivot allows plain elimination; otherwise fall back to Bezout
        piv = next((i for i in range(c, n) if ring.is_unit(t[i][c])), None)
        if piv is not None:
            if piv != c:
                for mat in mats:
                    mat[c], mat[piv] = mat[piv], mat[c]
                det_u = ring.neg(det_u)
            inv = ring.inv(t[c][c])
            for i in range(c + 1, n):
                if is_zero(t[i][c]):
                    continue
                f = mul(t[i][c], inv)
                rc, ri = t[c], t[i]
                t[i] = ri[:c] + [sub(y, mul(f, x)) for x, y in zip(rc[c:], ri[c:])]
                if track_u:
                    u[i] = [sub(y, mul(f, x)) for x, y in zip(u[c], u[i])]
            continue
        for i in range(c + 1, n):
            if is_zero(t[i][c]):
                continue
            _, s, tt, uu, vv = ring.gcdex(t[c][c], t[i][c])
            det_u = mul(det_u, sub(mul(s, vv), mul(tt, uu)))
            for mat in mats:
                lo = c if mat is t else 0
                rc, ri = mat[c], mat[i]
                mat[c] = rc[:lo] + [add(mul(s, x), mul(tt, y)) for x, y in zip(rc[lo:], ri[lo:])]
                mat[i] = ri[:lo] + [add(mul(uu, x), mul(vv, y)) for x, y in zip(rc[lo:], ri[lo:])]
    return u, t, det_u


def _det_cofactor(rows, ring):
    n = len(rows)
    if n == 0:
        return ring.one()
    total = ring.zero()
    for perm in permutations(range(n)):
        sign = _perm_sign(perm)
        term = ring.one()
        for i, j in enumerate(perm):
            term = ring.mul(term, rows[i][j])
        total = ring.add(total, term) if sign > 0 else ring.sub(total, term)
    return total


def _perm_sign(perm):
    sign, seen = 1, set()
    for i in range(len(perm)):
        if i in seen:
            continue
        j, length = i, 0
        while j not in seen:
            seen.add(j)
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def _det_bareiss(rows, ring):
    """Fraction-free elimination; exact divisions are valid in a domain."""
    a = [list(r) for r in rows]
    n = len(a)
    if n == 0:
        return ring.one()
    sign = 1
    prev = ring.one()
    for k in range(n - 1):
        if ring.is_zero(a[k][k]):
            swap = next((i for i in range(k + 1, n) if not ring.is_zero(a[i][k])), None)
            if swap is None:
                return ring.zero()
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = ring.sub(ring.mul(a[i][j], a[k][k]), ring.mul(a[i][k], a[k][j]))
                a[i][j] = ring.divide(num, prev)
        prev = a[k][k]
    d = a[n - 1][n - 1]
    return d if sign > 0 else ring.neg(d)


def determinant(m):
    if not m.is_square:
        raise MalformedInput("determinant of a non-square matrix")
    ring = m.ring
    n = m.nrows
    if n == 0:
        return ring.one()
    if isinstance(ring, PrimeField):
        return kernels.det_mod_p(m.tolist(), ring.modulus)
    if isinstance(ring, (QuadOrder, LocalInt)):
        return _det_bareiss(m.rows, ring)
    if _is_zmod(ring) and n <= 4:
        return _det_cofactor(m.rows, ring)
    if isinstance(ring, ExtField):
        return _det_field(m.tolist(), ring)
    if isinstance(ring, Product):
        return tuple(determinant(_component(m, k)) for k in range(len(ring.factors)))
    _, t, det_u = _triangularize(m, track_u=False)
    d = ring.one()
    for i in range(n):
        d = ring.mul(d, t[i][i])
    return ring.mul(d, ring.inv(det_u))


def _det_field(a, field):
    """Gaussian elimination over a field."""
    n = len(a)
    d = field.one()
    for c in range(n):
        piv = next((r for r in range(c, n) if not field.is_zero(a[r][c])), None)
        if piv is None:
            return field.zero()
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            d = field.neg(d)
        pc = a[c][c]
        d = field.mul(d, pc)
        inv = field.inv(pc)
        for r in range(c + 1, n):
            if field.is_zero(a[r][c]):
                continue
            f = field.mul(a[r][c], inv)
            a[r] = [field.sub(x, field.mul(f, y)) for x, y in zip(a[r], a[c])]
    return d


def charpoly(m):
    """Coefficients of ``det(t*I - m)``, lowest degree first (Berkowitz, division free)."""
    ring = m.ring
    vec = _berkowitz(m.tolist(), ring)
    return list(reversed(vec))


def _berkowitz(a, ring):
    n = len(a)
    if n == 0:
        return [ring.one()]
    if n == 1:
        return [ring.one(), ring.neg(a[0][0])]
    sub = [row[1:] for row in a[1:]]
    a00 = a[0][0]
    b = a[0][1:]
    c = [row[0] for row in a[1:]]
    diags = [c]
    for i in range(n - 2):
        prev = diags[i]
        diags.append([ring.dot(row, prev) for row in sub])
    coeffs = [ring.one(), ring.neg(a00)] + [ring.neg(ring.dot(b, d)) for d in diags]
    inner = _berkowitz(sub, ring)
    out = []
    for i in range(n + 1):
        acc = ring.zero()
        for j in range(min(i + 1, n)):
            acc = ring.add(acc, ring.mul(coeffs[i - j], inner[j]))
        out.append(acc)
    return out


@dataclass(frozen=True)
class InverseResult:
    """Outcome of :func:`inverse_or_certificate`.

    Exactly one of ``inverse`` or ``witness``/``nonunit_det`` is informative.
    """

    det: object
    inverse: ExactMatrix = None
    witness: object = None

    @property
    def ok(self):
        return self.inverse is not None

    def to_json(self, ring):
        out = {"invertible": self.ok, "det": ring.encode(self.det)}
        if self.witness is not None:
            out["witness_ideal"] = self.witness.describe()
        return out


def _inverse_via_cayley_hamilton(m, det):
    ring = m.ring
    n = m.nrows
    cp = charpoly(m)  # lowest first; cp[n] = 1
    acc = ExactMatrix.identity(ring, n)
    # Horner: A^{n-1} + c1 A^{n-2} + ... + c_{n-1} I, where c_k = cp[n-k]
    for k in range(1, n):
        acc = (m @ acc) + ExactMatrix.identity(ring, n).scale(cp[n - k])
    factor = ring.inv(det)
    if (n - 1) % 2:
        factor = ring.neg(factor)
    return acc.scale(factor)


def _inverse_triangular(m):
    ring = m.ring
    n = m.nrows
    u, t, _ = _triangularize(m)
    inv_diag = [ring.inv(t[i][i]) for i in range(n)]
    x = [[None] * n for _ in range(n)]
    for col in range(n):
        for i in range(n - 1, -1, -1):
            acc = u[i][col]
            for k in range(i + 1, n):
                acc = ring.sub(acc, ring.mul(t[i][k], x[k][col]))
            x[i][col] = ring.mul(acc, inv_diag[i])
    return ExactMatrix(ring, x, n, coerce=False)


def _inverse_mod_p(m):
    p = m.ring.modulus
    n = m.nrows
    aug = [list(r) + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(m.rows)]
    rows, _ = kernels.rref_mod_p(aug, p)
    return ExactMatrix(m.ring, [r[n:] for r in rows], n, coerce=False)


def inverse_or_certificate(m):
    """Exact inverse when ``det`` is a unit, otherwise a singularity witness.

    The witness is a maximal ideal where the determinant vanishes (semilocal
    rings) or just the non-unit determinant (quadratic orders).
    """
    if not m.is_square:
        raise MalformedInput("inverse of a non-square matrix")
    ring = m.ring
    det = determinant(m)
    if not ring.is_unit(det):
        witness = None
        if ring.semilocal:
            witness = next(
                (q for q in ring.max_ideals() if q.field.is_zero(ring.residue(det, q))), None
            )
        return InverseResult(det, None, witness)
    if m.nrows == 0:
        inv = m
    elif isinstance(ring, PrimeField):
        inv = _inverse_mod_p(m)
    elif isinstance(ring, QuadOrder):
        inv = _inverse_via_cayley_hamilton(m, det)
    else:
        inv = _inverse_triangular(m)
    return InverseResult(det, inv, None)


# ---------------------------------------------------------------------------
# linear systems over Bezout-style rings


def _solve_mod_p(m, rhs):
    p, nc = m.ring.p, m.ncols
    aug = [list(row) + [b] for row, b in zip(m.tolist(), rhs)]
    red, pivots = kernels.rref_mod_p(aug, p)
    if pivots and pivots[-1] == nc:
        return None
    x = [0] * nc
    for r, c in enumerate(pivots):
        x[c] = red[r][nc]
    return x


def solve(m, rhs):
    """Some ``x`` with ``m @ x = rhs``, or ``None`` if no solution exists.

    Diagonalizes with unimodular row and column Bezout steps, then divides
    entrywise.
    """
    ring = m.ring
    nr, nc = m.nrows, m.ncols
    if isinstance(ring, PrimeField) and nr:
        return _solve_mod_p(m, rhs)
    d = m.tolist()
    b = list(rhs)
    v = ExactMatrix.identity(ring, nc).tolist()
    mul, add, zero = ring.mul, ring.add, ring.is_zero

    def row_step(k, i):
        _, s, t, u, w = ring.gcdex(d[k][k], d[i][k])
        rk, ri = d[k], d[i]
        d[k] = [add(mul(s, x), mul(t, y)) for x, y in zip(rk, ri)]
        d[i] = [add(mul(u, x), mul(w, y)) for x, y in zip(rk, ri)]
        bk, bi = b[k], b[i]
        b[k] = add(mul(s, bk), mul(t, bi))
        b[i] = add(mul(u, bk), mul(w, bi))

    def col_step(k, j):
        _, s, t, u, w = ring.gcdex(d[k][k], d[k][j])
        for mat in (d, v):
            for row in mat:
                xk, xj = row[k], row[j]
                row[k] = add(mul(s, xk), mul(t, xj))
                row[j] = add(mul(u, xk), mul(w, xj))

    for k in range(min(nr, nc)):
        # bring some nonzero entry of the trailing block to (k, k)
        spot = next(((i, j) for i in range(k, nr) for j in range(k, nc) if not zero(d[i][j])), None)
        if spot is None:
            break
        i0, j0 = spot
        if i0 != k:
            d[k], d[i0] = d[i0], d[k]
            b[k], b[i0] = b[i0], b[k]
        if j0 != k:
            for mat in (d, v):
                for row in mat:
                    row[k], row[j0] = row[j0], row[k]
        while True:
            for i in range(k + 1, nr):
                if not zero(d[i][k]):
                    row_step(k, i)
            dirty = False
            for j in range(k + 1, nc):
                if not zero(d[k][j]):
                    col_step(k, j)
                    dirty = True
            if not dirty or all(zero(d[i][k]) for i in range(k + 1, nr)):
                break
    y = [ring.zero()] * nc
    for i in range(nr):
        if i < nc:
            q = ring.divide(b[i], d[i][i])
            if q is None:
                return None
            y[i] = q
        elif not zero(b[i]):
            return None
    x = [ring.dot(row, y) for row in v]
    if m.apply(x) != [ring.coerce(c) for c in rhs]:
        return None
    return x


def is_ext_or_prime_field(ring):
    return isinstance(ring, (PrimeField, ExtField))
