"""Constructive generator algorithms over semilocal rings and quadratic orders.

Over the semilocal rings of the ring menu every prime in play is maximal,
so the minimal-prime induction used for general rings collapses to a single
Chinese-remainder step: residues are chosen independently at each maximal
ideal and lifted together.
"""

import itertools
import math
from dataclasses import dataclass, field

from .errors import (
    InvariantBreach,
    MalformedInput,
    NormTooLarge,
    NotGeneratingModI,
    NotUnimodular,
    PreconditionViolated,
    TooFewElements,
    UnsupportedRing,
)
from .intarith import factorize, trial_bound
from .linalg import in_span_over_field, rank_of_vectors
from .modules import fiber, generates, max_fiber_dim, span_dim_at
from .quadratic import QuadIdeal, primes_over
from .rings import QuadOrder

# cap on residue-field vectors tried when hunting a new direction
DIRECTION_SEARCH_CAP = 100_000


def _require_semilocal(ring):
    if not ring.semilocal:
        raise UnsupportedRing(f"{ring!r} is not semilocal-capable")


def _field_vectors(k, t):
    """Unit vectors first, then every vector of k^t in coordinate order."""
    z, o = k.zero(), k.one()
    for i in range(t):
        yield tuple(o if j == i else z for j in range(t))
    if k.is_finite:
        for n, v in enumerate(itertools.product(list(k.elements()), repeat=t)):
            if n >= DIRECTION_SEARCH_CAP:
                break
            yield tuple(v)


def _new_direction(k, spanned, t, prefer=()):
    """First vector (``prefer`` first, then the standard order) outside ``spanned``."""
    for v in itertools.chain(prefer, _field_vectors(k, t)):
        if not in_span_over_field(k, spanned, v, t):
            return v
    raise InvariantBreach("no vector outside a proper subspace was found")


def _lift_vectors(ring, targets, t):
    """Coordinatewise CRT: residue ``targets[q]`` at listed ideals, 0 elsewhere."""
    ideals = ring.max_ideals()
    out = []
    for i in range(t):
        tg = {q: (targets[q][i] if q in targets else q.field.zero()) for q in ideals}
        out.append(ring.crt_lift(tg))
    return out


def extend_generator(module, ideals, elems):
    """A new element raising the fiber span dimension by one at each ideal in ``ideals``.

    Every listed ideal must be unsaturated: the current elements do not span
    ``M(p)`` there. Ideals outside the list get residue 0.
    """
    ring = module.ring
    _require_semilocal(ring)
    t = module.ambient
    ideals = list(dict.fromkeys(ideals))
    targets, before = {}, {}
    for p in ideals:
        ring._check_handle(p)
        fb = fiber(module, p)
        sd = span_dim_at(module, elems, p, fb)
        if sd >= fb.dim:
            raise PreconditionViolated(
                f"elements already span the fiber at {p.describe()}", ideal=p
            )
        spanned = list(fb.relator_residues) + [fb.reduce(module, e) for e in elems]
        targets[p] = _new_direction(p.field, spanned, t)
        before[p] = sd
    new = _lift_vectors(ring, targets, t)
    for p in ideals:
        if span_dim_at(module, list(elems) + [new], p) != before[p] + 1:
            raise InvariantBreach(f"span did not grow at {p.describe()}")
    return new


def minimal_generators(module):
    """Exactly ``max fiber dimension`` many generators, built one CRT step at a time."""
    ring = module.ring
    _require_semilocal(ring)
    fibers = {q: fiber(module, q) for q in ring.max_ideals()}
    n = max((fb.dim for fb in fibers.values()), default=0)
    gens = []
    for _ in range(n):
        todo = [q for q, fb in fibers.items() if span_dim_at(module, gens, q, fb) < fb.dim]
        gens.append(extend_generator(module, todo, gens))
    cert = generates(module, gens)
    if not cert:
        raise InvariantBreach("minimal generator construction failed to generate")
    return gens


# ---------------------------------------------------------------------------
# lifting generators modulo an ideal


@dataclass
class LiftCertificate:
    """``a[i] - b[i] = sum_j ideal_gens[j] * combination[i][j]`` exactly in R^t."""

    ideal_gens: list
    combination: list
    generation: object = None
    ideals_containing_I: list = field(default_factory=list)

    def check(self, ring, a, b):
        for ai, bi, combo in zip(a, b, self.combination):
            rhs = [ring.zero()] * len(ai)
            for g, w in zip(self.ideal_gens, combo):
                rhs = [ring.add(x, ring.mul(g, y)) for x, y in zip(rhs, w)]
            if [ring.sub(x, y) for x, y in zip(ai, bi)] != rhs:
                return False
        return True


def lift_generators(module, ideal_gens, b):
    """Generators ``a`` of M with ``a[i] = b[i]`` modulo ``I*M``.

    At maximal ideals containing I the residues of ``b`` are kept; at the
    others ``I*M(p) = M(p)``, so corrections in ``I*M`` can steer the
    residues freely. Corrections are ``r * v_i`` with ``r`` in I having
    residue 1 exactly where I is not contained.
    """
    ring = module.ring
    _require_semilocal(ring)
    t = module.ambient
    ideal_gens = [ring.coerce(g) for g in ideal_gens]
    b = [module.element(v) for v in b]
    need = max_fiber_dim(module)
    if len(b) < need:
        raise TooFewElements(f"need at least {need} elements, got {len(b)}")
    units = module.unit_vectors()
    quotient = module.with_extra_relations(
        [[ring.mul(g, x) for x in e] for g in ideal_gens for e in units]
    )
    qcert = generates(quotient, b)
    if not qcert:
        raise NotGeneratingModI("b does not generate M/IM", ideal=qcert.failing_ideal)

    ideals = ring.max_ideals()
    contains = {
        q: all(q.field.is_zero(ring.residue(g, q)) for g in ideal_gens) for q in ideals
    }
    corrections = {}
    for q in ideals:
        if contains[q]:
            continue
        fb = fiber(module, q)
        k = q.field
        rel = list(fb.relator_residues)
        chosen = []
        deltas = []
        for bi in b:
            bres = fb.reduce(module, bi)
            current = rank_of_vectors(k, rel + chosen, t) - (t - fb.dim)
            if current == fb.dim or not in_span_over_field(k, rel + chosen, bres, t):
                target = bres
            else:
                target = _new_direction(k, rel + chosen, t)
            chosen.append(target)
            deltas.append(tuple(k.sub(x, y) for x, y in zip(target, bres)))
        corrections[q] = deltas

    # lambda_j with r = sum lambda_j g_j having residue 1 off V(I), 0 on V(I)
    lam_targets = [dict() for _ in ideal_gens]
    for q in ideals:
        k = q.field
        j0 = None
        if not contains[q]:
            j0 = next(j for j, g in enumerate(ideal_gens) if not k.is_zero(ring.residue(g, q)))
        for j, g in enumerate(ideal_gens):
            lam_targets[j][q] = k.inv(ring.residue(g, q)) if j == j0 else k.zero()
    lam = [ring.crt_lift(tg) for tg in lam_targets]

    a, combos = [], []
    for i, bi in enumerate(b):
        targets = {q: corrections[q][i] for q in corrections}
        v = _lift_vectors(ring, targets, t)
        combo = [[ring.mul(lj, x) for x in v] for lj in lam]
        delta = [ring.zero()] * t
        for g, w in zip(ideal_gens, combo):
            delta = [ring.add(x, ring.mul(g, y)) for x, y in zip(delta, w)]
        a.append([ring.add(x, y) for x, y in zip(bi, delta)])
        combos.append(combo)
    cert = LiftCertificate(ideal_gens, combos, None, [q for q in ideals if contains[q]])
    if not cert.check(ring, a, b):
        raise InvariantBreach("lift certificate does not reproduce a - b")
    cert.generation = generates(module, a)
    if not cert.generation:
        raise InvariantBreach("lifted elements fail to generate M")
    return a, cert


# ---------------------------------------------------------------------------
# stable range one


def is_unimodular(ring, entries):
    return all(
        any(not q.field.is_zero(ring.residue(x, q)) for x in entries) for q in ring.max_ideals()
    )


def stable_range_reduce(ring, entries):
    """Coefficients ``alpha`` with ``(entries[i] + alpha[i]*entries[-1])_{i<m-1}`` unimodular.

    Per maximal ideal: if the last entry is the only one surviving there,
    ``alpha[0]`` pushes the first entry to residue 1; elsewhere it is 0.
    Only ``alpha[0]`` can be nonzero.
    """
    _require_semilocal(ring)
    entries = [ring.coerce(x) for x in entries]
    m = len(entries)
    if m < 2:
        raise MalformedInput("stable range reduction needs a row of length >= 2")
    for q in ring.max_ideals():
        if all(q.field.is_zero(ring.residue(x, q)) for x in entries):
            raise NotUnimodular(f"row vanishes at {q.describe()}", ideal=q)
    last = entries[-1]
    first_targets = {}
    for q in ring.max_ideals():
        k = q.field
        res = [ring.residue(x, q) for x in entries]
        if k.is_zero(res[-1]) or any(not k.is_zero(x) for x in res[:-1]):
            first_targets[q] = k.zero()
        else:
            # make the first entry congruent to 1
            first_targets[q] = k.mul(k.sub(k.one(), res[0]), k.inv(res[-1]))
    alphas = [ring.crt_lift(first_targets)] + [ring.zero()] * (m - 2)
    reduced = [ring.add(x, ring.mul(a, last)) for x, a in zip(entries[:-1], alphas)]
    if not is_unimodular(ring, reduced):
        raise InvariantBreach("stable range step lost unimodularity")
    return alphas


# ---------------------------------------------------------------------------
# two generators for ideals of quadratic orders


def _norm_form(order, x0, x1):
    return x0 * x0 + order.trace * x0 * x1 - order.const * x1 * x1


def elements_of_norm_at_most(ideal, bound, box=64):
    """Nonzero ideal elements with ``|N(x)| <= bound``.

    Exhaustive for imaginary orders (the norm form is positive definite);
    for real orders it scans a coefficient box and is not exhaustive.
    """
    order = ideal.order
    (a, _), (b, c) = ideal.basis
    disc = order.discriminant
    out = []
    if disc < 0:
        vmax = math.isqrt(4 * bound // (-disc)) // c + 1
        for v in range(-vmax, vmax + 1):
            x1 = v * c
            slack = bound - (-disc) * x1 * x1 / 4
            if slack < 0:
                continue
            centre = -order.trace * x1 / 2
            lo = math.floor(centre - math.sqrt(slack)) - 1
            hi = math.ceil(centre + math.sqrt(slack)) + 1
            # x0 = u*a + v*b
            ulo = (lo - v * b) // a
            uhi = (hi - v * b) // a + 1
            for u in range(ulo, uhi + 1):
                x0 = u * a + v * b
                if (x0, x1) == (0, 0):
                    continue
                n = _norm_form(order, x0, x1)
                if n <= bound:
                    out.append((x0, x1))
    else:
        for u in range(-box, box + 1):
            for v in range(-box, box + 1):
                x0, x1 = u * a + v * b, v * c
                if (x0, x1) == (0, 0):
                    continue
                if abs(_norm_form(order, x0, x1)) <= bound:
                    out.append((x0, x1))
    return out


def minimal_norm_element(ideal, bound=None):
    """A nonzero element of least ``|norm|`` (deterministic tie-break)."""
    if bound is None:
        bound = 16 * ideal.norm()
    cands = elements_of_norm_at_most(ideal, bound)
    if not cands:
        raise NormTooLarge(f"no nonzero element of norm <= {bound}")
    order = ideal.order
    return min(cands, key=lambda x: (abs(order.norm(x)), abs(x[0]) + abs(x[1]), -x[0], -x[1]))


def principal_generator(ideal):
    """A generator of the ideal, or ``None`` after an exhaustive norm search.

    Only imaginary orders admit the exhaustive search.
    """
    order = ideal.order
    if order.discriminant > 0:
        raise UnsupportedRing("exhaustive principality search needs an imaginary order")
    n = ideal.norm()
    for x in elements_of_norm_at_most(ideal, n):
        if order.norm(x) == n:
            return x
    return None


def _valuation(ideal, prime):
    k, power = 0, prime
    while ideal.contained_in(power):
        k += 1
        power = power * prime
    return k


@dataclass
class TwoGeneratorCertificate:
    x: tuple
    y: tuple
    cofactor_primes: list
    hnf_matches: bool

    def to_json(self, order):
        return {
            "x": order.encode(self.x),
            "y": order.encode(self.y),
            "norm_x": str(order.norm(self.x)),
            "cofactor_primes": [P.to_json() for P in self.cofactor_primes],
            "hnf_matches": self.hnf_matches,
        }


def ideal_two_generators(ideal, bound=None):
    """``(x, y)`` generating the ideal, with x of minimal norm.

    ``(x) = I*J``; for each prime ``P`` of ``J`` pick ``y_P`` in ``I`` but
    not in ``I*P`` and ``z_P`` in the other primes of ``J`` but not in
    ``P``. Then ``y = sum y_P z_P`` avoids every ``I*P`` and ``(x, y) = I``.
    """
    order = ideal.order
    if not isinstance(order, QuadOrder):
        raise MalformedInput("two-generator search needs a quadratic order ideal")
    n = ideal.norm()
    if n == 1:
        one = order.one()
        return one, one, TwoGeneratorCertificate(one, one, [], True)
    x = minimal_norm_element(ideal, 16 * n if bound is None else bound)
    nx = abs(order.norm(x))
    if nx == n:
        return x, x, TwoGeneratorCertificate(x, x, [], QuadIdeal.generated_by(order, [x]) == ideal)
    principal_x = QuadIdeal.generated_by(order, [x])
    cof_norm = nx // n
    tb = trial_bound()
    if cof_norm > tb * tb:
        raise NormTooLarge(f"cofactor norm {cof_norm} beyond the trial-division bound")
    bad = []
    for p in sorted(factorize(cof_norm, tb)):
        for P in primes_over(order, p):
            if _valuation(principal_x, P) > _valuation(ideal, P):
                bad.append(P)
    y = order.zero()
    for j, P in enumerate(bad):
        IP = ideal * P
        v1, v2 = ideal.basis_elements()
        yj = next(e for e in (v1, v2, order.add(v1, v2)) if not IP.contains(e))
        others = QuadIdeal.unit(order)
        for i, Q in enumerate(bad):
            if i != j:
                others = others * Q
        u1, u2 = others.basis_elements()
        zj = next(e for e in (u1, u2, order.add(u1, u2)) if not P.contains(e))
        y = order.add(y, order.mul(yj, zj))
    ok = QuadIdeal.generated_by(order, [x, y]) == ideal
    if not ok:
        raise InvariantBreach(f"(x, y) != I for {ideal!r}")
    return x, y, TwoGeneratorCertificate(x, y, bad, ok)
