"""Idempotents, frames and classifying surjections.

A rank-n projective summand of ``R^m`` is ``im(e)`` for an idempotent ``e``.
A frame ``(a, b)`` with ``a*b = 1_n`` exhibits ``im(b*a)`` as free of rank n.
A tuple of k generators of ``im(e)`` is the same thing as an epimorphism
``R^k -> im(e)``; its matrix has the generators as columns.
"""

import itertools
from dataclasses import dataclass, field
from math import comb

from .errors import (
    InvariantBreach,
    MalformedInput,
    NonConstantRank,
    NotAFrame,
    NotGenerating,
    NotInImage,
    OnMinorLocus,
    UnsupportedRing,
    WrongCharPoly,
)
from .linalg import ExactMatrix, charpoly, determinant, rank_of_vectors
from .modules import ProjectiveIdempotent, generates, idempotent_module

# refuse minor-ideal tests with more minors than this
MAX_MINORS = 20_000


@dataclass
class FrameTriple:
    """``(a, x, b)`` with ``a*b = 1`` and ``x = b*a``."""

    a: ExactMatrix
    x: ExactMatrix
    b: ExactMatrix

    @property
    def rank(self):
        return self.a.nrows

    @property
    def idempotent(self):
        return ProjectiveIdempotent(self.x)

    def check(self):
        n = self.a.nrows
        return (
            self.a @ self.b == ExactMatrix.identity(self.a.ring, n)
            and self.b @ self.a == self.x
            and self.a @ self.x == self.a
            and self.x @ self.b == self.b
        )

    def to_json(self):
        return {"a": self.a.to_json(), "x": self.x.to_json(), "b": self.b.to_json()}


def idempotent_from_frame(a, b):
    if a.ring != b.ring:
        raise MalformedInput("frame matrices over different rings")
    n, m = a.shape
    if b.shape != (m, n):
        raise NotAFrame(f"shapes {a.shape} and {b.shape} do not form a frame")
    if a @ b != ExactMatrix.identity(a.ring, n):
        raise NotAFrame("a*b is not the identity")
    triple = FrameTriple(a, b @ a, b)
    if not triple.check():
        raise InvariantBreach("frame identities failed")
    return triple


def diagonal_frame(P):
    """The obvious frame when ``e`` is a 0/1 diagonal matrix, else ``None``."""
    e, ring = P.e, P.ring
    ones = []
    for i in range(P.size):
        for j in range(P.size):
            x = e.rows[i][j]
            if i != j and not ring.is_zero(x):
                return None
        d = e.rows[i][i]
        if d == ring.one():
            ones.append(i)
        elif not ring.is_zero(d):
            return None
    a = ExactMatrix(
        ring,
        [[ring.one() if j == i else ring.zero() for j in range(P.size)] for i in ones],
        P.size,
        coerce=False,
    )
    return idempotent_from_frame(a, a.transpose())


# ---------------------------------------------------------------------------
# surjection criterion


@dataclass
class SurjectionCertificate:
    surjective: bool
    ranks: dict = field(default_factory=dict)
    failing_ideal: object = None
    minors_checked: int = 0
    minor_ideal_is_unit: bool = None

    def __bool__(self):
        return self.surjective

    def to_json(self):
        out = {
            "surjective": self.surjective,
            "residue_ranks": {q.describe(): r for q, r in self.ranks.items()},
            "minors_checked": self.minors_checked,
            "minor_ideal_is_unit": self.minor_ideal_is_unit,
        }
        if self.failing_ideal is not None:
            out["failing_ideal"] = self.failing_ideal.describe()
        return out


def is_section_surjection(a):
    """Is ``a: R^m -> R^n`` onto? Residue ranks and the minor ideal must agree."""
    ring = a.ring
    if not ring.semilocal:
        raise UnsupportedRing(f"{ring!r} is not semilocal-capable")
    n, m = a.shape
    cert = SurjectionCertificate(True)
    for q in ring.max_ideals():
        r = rank_of_vectors(q.field, list(a.residue(q).rows), m)
        cert.ranks[q] = r
        if r < n and cert.surjective:
            cert.surjective = False
            cert.failing_ideal = q
    if n == 0:
        cert.minor_ideal_is_unit = True
    elif n > m:
        cert.minor_ideal_is_unit = False
    else:
        if comb(m, n) > MAX_MINORS:
            raise MalformedInput(f"{comb(m, n)} minors exceed the cap of {MAX_MINORS}")
        minors = [
            determinant(a.submatrix(col_idx=list(cols)))
            for cols in itertools.combinations(range(m), n)
        ]
        cert.minors_checked = len(minors)
        cert.minor_ideal_is_unit = ring.ideal_is_unit(minors)
    if cert.minor_ideal_is_unit != cert.surjective:
        raise InvariantBreach("residue-rank and minor-ideal criteria disagree")
    return cert


def truncate_surjection(a, m):
    """The first ``m`` columns, provided they are still onto."""
    n, r = a.shape
    if not n <= m <= r:
        raise MalformedInput(f"need {n} <= m <= {r}, got m = {m}")
    sub = a.submatrix(col_idx=list(range(m)))
    cert = is_section_surjection(sub)
    if not cert:
        raise OnMinorLocus(
            "all maximal minors of the truncation vanish at an ideal", ideal=cert.failing_ideal
        )
    return sub, cert


# ---------------------------------------------------------------------------
# generators <-> surjections


@dataclass
class ClassifyingData:
    """An epimorphism onto ``im(e)`` given by generators.

    ``matrix`` has the generators as columns (size m x k). When a frame is
    known, ``coordinates = a * matrix`` is the n x k form and is itself onto.
    """

    idempotent: ProjectiveIdempotent
    matrix: ExactMatrix
    generation: object
    frame: FrameTriple = None
    coordinates: ExactMatrix = None
    coordinate_certificate: SurjectionCertificate = None

    def generators(self):
        """Inverse direction: evaluate the surjection on unit vectors."""
        return [list(c) for c in self.matrix.columns()]

    def generators_from_coordinates(self):
        if self.coordinates is None:
            raise MalformedInput("no frame coordinates available")
        return [list(c) for c in (self.frame.b @ self.coordinates).columns()]

    def to_json(self):
        out = {
            "surjection": self.matrix.to_json(),
            "certificate": {"generation": self.generation.to_json()},
        }
        if self.coordinates is not None:
            out["n_row_form"] = self.coordinates.to_json()
            out["certificate"]["frame"] = self.frame.to_json()
            out["certificate"]["n_row_surjective"] = self.coordinate_certificate.to_json()
        return out


def classifying_surjection(P, gens, frame=None):
    ring = P.ring
    gens = [[ring.coerce(x) for x in g] for g in gens]
    for g in gens:
        if len(g) != P.size:
            raise MalformedInput(f"generators must have {P.size} coordinates")
        if not P.contains(g):
            raise NotInImage(f"{g} is not fixed by e")
    cert = generates(idempotent_module(P), gens)
    if not cert:
        raise NotGenerating("generators miss a fiber", ideal=cert.failing_ideal)
    matrix = ExactMatrix.from_columns(ring, gens, P.size) if gens else ExactMatrix(
        ring, [[] for _ in range(P.size)], 0
    )
    data = ClassifyingData(P, matrix, cert)
    if frame is None:
        frame = diagonal_frame(P)
    if frame is not None:
        if frame.x != P.e:
            raise NotAFrame("frame does not reproduce the idempotent")
        data.frame = frame
        data.coordinates = frame.a @ matrix
        data.coordinate_certificate = is_section_surjection(data.coordinates)
        if not data.coordinate_certificate:
            raise InvariantBreach("frame coordinates of generators are not onto")
        if data.generators_from_coordinates() != gens:
            raise InvariantBreach("frame round trip lost the generators")
    return data


# ---------------------------------------------------------------------------
# the universal idempotent


def _expected_charpoly(ring, m, n):
    """Coefficients of ``t^(m-n) * (t-1)^n``, lowest first."""
    out = [ring.zero()] * (m + 1)
    for k in range(n + 1):
        c = comb(n, k) * (-1) ** (n - k)
        out[m - n + k] = ring.from_int(c)
    return out


def specialize_universal_idempotent(P):
    """Verify the defining equations of the point ``e`` of ``X_{n,m}``."""
    ranks = P.ranks()
    values = set(ranks.values())
    if len(values) != 1:
        raise NonConstantRank(
            "residue ranks differ", ranks={q.describe(): r for q, r in ranks.items()}
        )
    n = values.pop()
    m = P.size
    cp = charpoly(P.e)
    expected = _expected_charpoly(P.ring, m, n)
    if cp != expected:
        raise WrongCharPoly(f"char poly {cp} differs from t^{m - n}(t-1)^{n}")
    ring = P.ring
    return {
        "n": n,
        "m": m,
        "e": P.e.to_json(),
        "e_squared_equals_e": P.e @ P.e == P.e,
        "charpoly": [ring.encode(c) for c in cp],
        "residue_ranks": {q.describe(): r for q, r in ranks.items()},
    }
