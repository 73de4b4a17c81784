"""Finitely generated modules as cokernels, projective modules as idempotents.

A module element is an ambient coordinate vector of length ``t``; equality in
the module is never decided directly. Everything here is answered fiber by
fiber (Nakayama), with a Howell-form cross-check over Z/N.
"""

from dataclasses import dataclass, field

from .errors import InvariantBreach, MalformedInput, NotIdempotent, UnsupportedRing
from .linalg import (
    ExactMatrix,
    howell_contains,
    howell_form,
    rank_of_vectors,
)
from .rings import QuadOrder, ZMod, ring_from_json


class ModulePresentation:
    """``M = R^t / column-span(relations)``."""

    __slots__ = ("ring", "ambient", "relations")

    def __init__(self, ring, ambient, relations=None):
        if relations is None:
            relations = ExactMatrix(ring, [[] for _ in range(ambient)], 0)
        if relations.ring != ring:
            raise MalformedInput("relation matrix is over a different ring")
        if relations.nrows != ambient:
            raise MalformedInput(f"relations must have {ambient} rows, got {relations.nrows}")
        self.ring = ring
        self.ambient = ambient
        self.relations = relations

    def __repr__(self):
        return f"ModulePresentation({self.ring!r}, t={self.ambient}, relators={self.relations.ncols})"

    @classmethod
    def free(cls, ring, rank):
        return cls(ring, rank)

    @property
    def relators(self):
        return self.relations.columns()

    def element(self, coords):
        if len(coords) != self.ambient:
            raise MalformedInput(f"module elements have {self.ambient} coordinates")
        return [self.ring.coerce(x) for x in coords]

    def unit_vectors(self):
        z, o = self.ring.zero(), self.ring.one()
        return [[o if i == j else z for i in range(self.ambient)] for j in range(self.ambient)]

    def with_extra_relations(self, columns):
        """Quotient by additional relators."""
        cols = self.relators + [list(c) for c in columns]
        rel = ExactMatrix.from_columns(self.ring, cols, self.ambient) if cols else None
        return ModulePresentation(self.ring, self.ambient, rel)

    def to_json(self):
        return {"ring": self.ring.to_json(), "ambient": self.ambient, "relations": self.relations.to_json()}

    @classmethod
    def from_json(cls, obj):
        try:
            ring = ring_from_json(obj["ring"])
            t = int(obj["ambient"])
            rel = obj.get("relations")
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedInput(f"malformed module {obj!r}") from exc
        relations = ExactMatrix.from_json(rel, ring) if rel is not None else None
        if relations is not None and relations.nrows == 0 and t > 0:
            relations = None
        return cls(ring, t, relations)


def _require_semilocal(ring):
    if not ring.semilocal:
        raise UnsupportedRing(f"{ring!r} is not semilocal-capable")


@dataclass(frozen=True)
class Fiber:
    """The residue fiber ``M(p)``: its dimension and the relator residues."""

    ideal: object
    dim: int
    relator_residues: tuple = field(repr=False)

    def reduce(self, module, elem):
        """Residue vector of an element (a FiberVector, modulo relators implicitly)."""
        ring = module.ring
        return tuple(ring.residue(x, self.ideal) for x in elem)


def fiber(module, p):
    """Dimension of ``M(p)`` together with the reduction data."""
    _require_semilocal(module.ring)
    ring = module.ring
    k = p.field
    rel = [tuple(ring.residue(x, p) for x in col) for col in module.relators]
    rank = rank_of_vectors(k, rel, module.ambient)
    return Fiber(p, module.ambient - rank, tuple(rel))


def span_dim_at(module, elems, p, _fiber=None):
    """Dimension of the span of the elements' images inside ``M(p)``."""
    _require_semilocal(module.ring)
    if not elems:
        return 0
    fb = _fiber or fiber(module, p)
    t = module.ambient
    k = p.field
    rel = list(fb.relator_residues)
    reds = [fb.reduce(module, e) for e in elems]
    return rank_of_vectors(k, rel + reds, t) - (t - fb.dim)


@dataclass
class GenerationCertificate:
    generates: bool
    failing_ideal: object = None
    fibers: list = field(default_factory=list)  # (ideal, fiber dim, span dim)
    howell_agrees: object = None  # None when no Z/N cross-check applies

    def __bool__(self):
        return self.generates

    def to_json(self):
        out = {
            "generates": self.generates,
            "fibers": [
                {"ideal": q.describe(), "fiber_dim": fd, "span_dim": sd} for q, fd, sd in self.fibers
            ],
        }
        if self.failing_ideal is not None:
            out["failing_ideal"] = self.failing_ideal.describe()
        if self.howell_agrees is not None:
            out["howell_cross_check"] = self.howell_agrees
        return out


def generates_by_howell(module, elems):
    """Independent Z/N verdict: do elems plus relators span every unit vector?"""
    ring = module.ring
    if not isinstance(ring, ZMod):
        raise UnsupportedRing("Howell cross-check needs Z/N")
    t = module.ambient
    if t == 0:
        return True
    rows = [list(c) for c in module.relators] + [list(e) for e in elems]
    if not rows:
        return False
    h = howell_form(ExactMatrix(ring, rows, t, coerce=False))
    return all(howell_contains(h, e) for e in module.unit_vectors())


def generates(module, elems, cross_check=True):
    """Nakayama test: the elements generate iff they span every fiber."""
    _require_semilocal(module.ring)
    cert = GenerationCertificate(True)
    for q in module.ring.max_ideals():
        fb = fiber(module, q)
        sd = span_dim_at(module, elems, q, fb)
        cert.fibers.append((q, fb.dim, sd))
        if sd != fb.dim and cert.generates:
            cert.generates = False
            cert.failing_ideal = q
    if cross_check and isinstance(module.ring, ZMod):
        other = generates_by_howell(module, elems)
        cert.howell_agrees = other == cert.generates
        if not cert.howell_agrees:
            raise InvariantBreach(
                f"Nakayama verdict {cert.generates} disagrees with Howell membership {other}"
            )
    return cert


def max_fiber_dim(module):
    _require_semilocal(module.ring)
    return max((fiber(module, q).dim for q in module.ring.max_ideals()), default=0)


# ---------------------------------------------------------------------------
# projective modules as idempotents


class ProjectiveIdempotent:
    """``im(e)`` for an idempotent square matrix ``e``."""

    __slots__ = ("ring", "size", "e")

    def __init__(self, e):
        if not e.is_square:
            raise MalformedInput("idempotent must be square")
        if e @ e != e:
            raise NotIdempotent("e*e != e")
        self.ring = e.ring
        self.size = e.nrows
        self.e = e

    def __repr__(self):
        return f"ProjectiveIdempotent({self.e!r})"

    def complement(self):
        return ProjectiveIdempotent(ExactMatrix.identity(self.ring, self.size) - self.e)

    def rank_at(self, p):
        """Rank of the residue of ``e`` at a maximal ideal (or sampled prime)."""
        return rank_of_vectors(p.field, list(self.e.residue(p).rows), self.size)

    def ranks(self):
        _require_semilocal(self.ring)
        return {q: self.rank_at(q) for q in self.ring.max_ideals()}

    def sampled_ranks(self, primes):
        """Residue ranks at the primes above each rational prime (quadratic orders)."""
        if not isinstance(self.ring, QuadOrder):
            raise UnsupportedRing("sampled ranks are for quadratic orders")
        return {q: self.rank_at(q) for p in primes for q in self.ring.primes_above(p)}

    def contains(self, vec):
        return self.e.apply(vec) == [self.ring.coerce(x) for x in vec]

    def to_json(self):
        return {"ring": self.ring.to_json(), "e": self.e.to_json()}

    @classmethod
    def from_json(cls, obj):
        try:
            ring = ring_from_json(obj["ring"])
            e = ExactMatrix.from_json(obj["e"], ring)
        except (KeyError, TypeError) as exc:
            raise MalformedInput(f"malformed idempotent {obj!r}") from exc
        return cls(e)


def idempotent_module(P):
    """``im(e)`` presented as ``coker(1 - e)``."""
    _require_semilocal(P.ring)
    one_minus_e = ExactMatrix.identity(P.ring, P.size) - P.e
    return ModulePresentation(P.ring, P.size, one_minus_e)


def rank_one_idempotent(ideal, radius=6):
    """A 2x2 idempotent over a quadratic order whose image is isomorphic to ``ideal``.

    With ``a, b`` the Z-basis of I, searches ``c, d`` in the conjugate ideal
    with ``a*c + b*d = N(I)``; then ``e = (a, b)^T (c, d) / N(I)`` is idempotent
    because ``I * conj(I) = (N(I))``. Returns ``(P, (a, b, c, d))``.
    """
    order = ideal.order
    n = ideal.norm()
    a, b = ideal.basis_elements()
    g1, g2 = ideal.conjugate().basis_elements()
    rng = range(-radius, radius + 1)
    combos = [order.add(order.mul((x, 0), g1), order.mul((y, 0), g2)) for x in rng for y in rng]
    a_terms = {}
    for c in combos:
        a_terms.setdefault(order.mul(a, c), c)
    for d in combos:
        rest = order.sub((n, 0), order.mul(b, d))
        c = a_terms.get(rest)
        if c is None:
            continue
        entries = [[order.mul(a, c), order.mul(a, d)], [order.mul(b, c), order.mul(b, d)]]
        rows = [[order.exact_div(x, (n, 0)) for x in r] for r in entries]
        if any(x is None for r in rows for x in r):
            continue
        return ProjectiveIdempotent(ExactMatrix(order, rows, 2)), (a, b, c, d)
    raise MalformedInput(f"no idempotent witnesses found within radius {radius}")
