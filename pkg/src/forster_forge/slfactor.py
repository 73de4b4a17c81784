"""Elementary factorization of special linear matrices over semilocal rings.

The position word depends only on ``m``. For ``m >= 2`` it reads

* rounds ``j = 1..m-1``: positions ``(i, m-j+1)`` for ``i = 1..m-j``,
* the pivot ``(m, 1)``,
* the clearing block ``(1, m) .. (m-1, m)``,
* the row block ``(m, m-1) .. (m, 1)``,
* then the word for ``m - 1``,

so ``r(m) = r(m-1) + m(m-1)/2 + 2m - 1``: ``r(1..5) = 0, 4, 12, 25, 44``.
Round ``j`` is a stable-range step on the last column restricted to its
first ``m-j+1`` entries; after all rounds the top entry is a unit.
Indices are 1-based throughout, as in ``e_ij(c)``.
"""

from dataclasses import dataclass

from .errors import MalformedInput, NotSL, UnsupportedRing
from .forster_swan import stable_range_reduce
from .linalg import ExactMatrix, determinant, inverse_or_certificate


def word_length(m):
    """``r(m)``, the length of :func:`position_sequence`."""
    r = 0
    for k in range(2, m + 1):
        r += k * (k - 1) // 2 + 2 * k - 1
    return r


@dataclass(frozen=True)
class ElementaryWord:
    m: int
    positions: tuple
    coefficients: tuple = None

    def __post_init__(self):
        for i, j in self.positions:
            if i == j or not (1 <= i <= self.m and 1 <= j <= self.m):
                raise MalformedInput(f"bad elementary position {(i, j)} for m={self.m}")
        if self.coefficients is not None and len(self.coefficients) != len(self.positions):
            raise MalformedInput("positions and coefficients differ in length")

    def __len__(self):
        return len(self.positions)

    def evaluate(self, ring):
        """The product ``e_{i1 j1}(c1) ... e_{ir jr}(cr)`` as an ExactMatrix."""
        if self.coefficients is None:
            raise MalformedInput("word has no coefficients")
        m = self.m
        rows = [[ring.one() if r == c else ring.zero() for c in range(m)] for r in range(m)]
        for (i, j), c in zip(self.positions, self.coefficients):
            # right multiplication by e_ij(c): column j += c * column i
            i0, j0 = i - 1, j - 1
            for row in rows:
                row[j0] = ring.add(row[j0], ring.mul(c, row[i0]))
        return ExactMatrix(ring, rows, m, coerce=False)

    def to_json(self, ring=None):
        out = {"m": self.m, "positions": [list(p) for p in self.positions]}
        if self.coefficients is not None:
            out["coeffs"] = [ring.encode(c) for c in self.coefficients]
        return out

    @classmethod
    def from_json(cls, obj, ring=None):
        try:
            m = int(obj["m"])
            pos = tuple((int(i), int(j)) for i, j in obj["positions"])
            coeffs = obj.get("coeffs")
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedInput(f"malformed word {obj!r}") from exc
        if coeffs is not None:
            if ring is None:
                raise MalformedInput("decoding coefficients needs a ring")
            coeffs = tuple(ring.decode(c) for c in coeffs)
        return cls(m, pos, coeffs)


def _positions(m):
    if m <= 1:
        return ()
    pos = []
    for j in range(1, m):
        piv = m - j + 1
        pos += [(i, piv) for i in range(1, piv)]
    pos.append((m, 1))
    pos += [(i, m) for i in range(1, m)]
    pos += [(m, j) for j in range(m - 1, 0, -1)]
    return tuple(pos) + _positions(m - 1)


def position_sequence(m):
    if m < 1:
        raise MalformedInput("matrix size must be >= 1")
    return ElementaryWord(m, _positions(m))


def _add_row(ring, rows, dst, src, c):
    if ring.is_zero(c):
        return
    rows[dst] = [ring.add(x, ring.mul(c, y)) for x, y in zip(rows[dst], rows[src])]


def _factor_coeffs(ring, rows):
    m = len(rows)
    if m == 1:
        return []
    if all(rows[i][j] == (ring.one() if i == j else ring.zero()) for i in range(m) for j in range(m)):
        # the all-zero word already evaluates to the identity
        return [ring.zero()] * len(_positions(m))
    rows = [list(r) for r in rows]
    col = m - 1
    coeffs = []
    for j in range(1, m):
        piv = m - j  # 0-based pivot row
        alphas = stable_range_reduce(ring, [rows[i][col] for i in range(piv + 1)])
        for i, a in enumerate(alphas):
            _add_row(ring, rows, i, piv, a)
            coeffs.append(ring.neg(a))
    c1 = rows[0][col]
    gamma = ring.mul(ring.inv(c1), ring.sub(ring.one(), rows[col][col]))
    _add_row(ring, rows, col, 0, gamma)
    coeffs.append(ring.neg(gamma))
    clears = [rows[i][col] for i in range(m - 1)]
    for i, c in enumerate(clears):
        _add_row(ring, rows, i, col, ring.neg(c))
        coeffs.append(c)
    # rows = [[a', 0], [r, 1]]; r = s a'
    sub = ExactMatrix(ring, [r[:col] for r in rows[:col]], col, coerce=False)
    inv = inverse_or_certificate(sub)
    if not inv.ok:
        raise NotSL("leading block is not invertible", ideal=inv.witness)
    r = rows[col][:col]
    s = [ring.dot(r, [inv.inverse.rows[k][t] for k in range(col)]) for t in range(col)]
    for t in range(col - 1, -1, -1):
        coeffs.append(s[t])
    return coeffs + _factor_coeffs(ring, [row[:col] for row in rows[:col]])


def factor_sl(a):
    """Coefficients for :func:`position_sequence` whose product is exactly ``a``."""
    ring = a.ring
    if not ring.semilocal:
        raise UnsupportedRing(f"{ring!r} is not semilocal-capable")
    if not a.is_square:
        raise MalformedInput("matrix must be square")
    if determinant(a) != ring.one():
        raise NotSL("determinant is not 1")
    m = a.nrows
    word = position_sequence(m)
    coeffs = tuple(_factor_coeffs(ring, a.tolist()))
    out = ElementaryWord(m, word.positions, coeffs)
    return out
