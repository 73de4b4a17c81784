"""Acceptance criteria, one test each, with the stated time limits.

Each test records a ``PASS``/``FAIL`` line; ``conftest.py`` prints them
together at the end of the session. Running this file directly prints
the same lines without pytest.
"""

import itertools
import random
import time

import pytest

from forster_forge.algebras import (
    dual_numbers,
    find_root_of_unity,
    is_azumaya,
    split_over_finite_field,
    symbol_algebra,
    verify_split,
)
from forster_forge.forster_swan import (
    elements_of_norm_at_most,
    extend_generator,
    ideal_two_generators,
    lift_generators,
    minimal_generators,
    principal_generator,
)
from forster_forge.galois import artin_schreier, artin_schreier_descent, is_galois, small_char_p_rings, wp_preimage
from forster_forge.grassmann import classifying_surjection
from forster_forge.hilbert import hilbert_symbol, hilbert_symbol_oracle, product_over_places
from forster_forge.modules import fiber, generates, max_fiber_dim, span_dim_at
from forster_forge.quadratic import QuadIdeal
from forster_forge.rings import PrimeField, QuadOrder, ZMod
from forster_forge.sampling import (
    random_element,
    random_extend_instance,
    random_frame,
    random_module,
    random_quadratic_ideal,
    random_sl,
)
from forster_forge.slfactor import factor_sl, position_sequence

RESULTS = []
SEED = 20240601


def _report(name, ok, elapsed, limit, detail=""):
    within = limit is None or elapsed < limit
    status = "PASS" if ok and within else "FAIL"
    budget = f" / {limit:.0f}s" if limit is not None else ""
    line = f"{status}  {name}: {elapsed:.2f}s{budget}"
    if detail:
        line += f"  ({detail})"
    RESULTS.append(line)
    return ok and within


def _run(name, limit, body):
    start = time.perf_counter()
    ok, detail = body(random.Random(f"{SEED}:{name}"))
    elapsed = time.perf_counter() - start
    assert _report(name, ok, elapsed, limit, detail), RESULTS[-1]


# ---------------------------------------------------------------------------


def _sl(rng):
    bad = 0
    positions = {m: position_sequence(m).positions for m in (2, 3, 4)}
    for _ in range(500):
        R = ZMod(rng.choice([6, 720, 30030]))
        m = rng.choice([2, 3, 4])
        a = random_sl(R, m, rng)
        word = factor_sl(a)
        if word.evaluate(R) != a or word.positions != positions[m]:
            bad += 1
    return bad == 0, f"500 matrices, {bad} mismatches"


def _brute_force_shorter(module, k):
    """``(found, tried)``: does any k-tuple of elements of R^t generate the module?"""
    if k < 0:
        return False, 0
    n, t = module.ring.modulus, module.ambient
    tried = 0
    for c in itertools.combinations_with_replacement(itertools.product(range(n), repeat=t), k):
        tried += 1
        if generates(module, [list(v) for v in c], cross_check=False):
            return True, tried
    return False, tried


# half the moduli come from here so that small multi-generator modules occur
SMALL_MODULI = [2, 3, 4, 6, 8, 9, 12, 18, 30, 36]


def _forster(rng):
    bad, modules = 0, []
    for i in range(200):
        R = ZMod(rng.choice(SMALL_MODULI) if i % 2 else rng.randint(2, 360))
        M = random_module(R, rng, max_ambient=4)
        gens = minimal_generators(M)
        d = max_fiber_dim(M)
        if len(gens) != d or not generates(M, gens):
            bad += 1
        modules.append((M, d))
    # smallest = fewest elements
    modules.sort(key=lambda md: md[0].ring.modulus ** md[0].ambient)
    shorter = tried = 0
    for M, d in modules[:50]:
        found, n = _brute_force_shorter(M, d - 1)
        shorter += found
        tried += n
    return bad == 0 and shorter == 0, (
        f"{bad} wrong counts, {shorter} shorter sets among 50 smallest, {tried} tuples tried"
    )


def _extend(rng):
    bad = 0
    for _ in range(1000):
        R = ZMod(rng.randint(2, 360))
        M, S, elems = random_extend_instance(R, rng)
        new = extend_generator(M, S, elems)
        for q in S:
            fb = fiber(M, q)
            if span_dim_at(M, elems + [new], q, fb) != span_dim_at(M, elems, q, fb) + 1:
                bad += 1
                break
    return bad == 0, f"1000 instances, {bad} failures"


def _lift(rng):
    bad = 0
    for _ in range(200):
        R = ZMod(rng.randint(2, 360))
        M = random_module(R, rng, max_ambient=3)
        ideal = [random_element(R, rng) for _ in range(rng.randint(1, 2))]
        extra = [[R.mul(g, x) for x in e] for g in ideal for e in M.unit_vectors()]
        quotient = M.with_extra_relations(extra)
        b = minimal_generators(quotient)
        b += [[random_element(R, rng) for _ in range(M.ambient)] for _ in range(rng.randint(0, 1))]
        b += [[R.zero()] * M.ambient] * max(0, max_fiber_dim(M) - len(b))
        a, cert = lift_generators(M, ideal, b)
        if not (cert.check(R, a, b) and generates(M, a)):
            bad += 1
    return bad == 0, f"200 instances, {bad} failures"


def _dedekind(rng):
    order = QuadOrder(-5)
    bad = 0
    for _ in range(100):
        I = random_quadratic_ideal(order, rng, max_norm=10**4)
        x, y, cert = ideal_two_generators(I)
        if QuadIdeal.generated_by(order, [x, y]) != I or not cert.hnf_matches:
            bad += 1
    J = QuadIdeal.generated_by(order, [(2, 0), (1, 1)])
    norm_two = [(a, b) for a in range(-2, 3) for b in range(-1, 2) if a * a + 5 * b * b == 2]
    in_ideal = [x for x in elements_of_norm_at_most(J, 2) if order.norm(x) == 2]
    non_principal = principal_generator(J) is None and not norm_two and not in_ideal
    return bad == 0 and non_principal, f"100 ideals, {bad} HNF mismatches, (2,1+w) non-principal: {non_principal}"


def _correspondence(rng):
    bad = 0
    for _ in range(200):
        R = ZMod(rng.choice([6, 12, 30, 36, 60, 90, 180, 210, 360]))
        size = rng.randint(1, 4)
        frame = random_frame(R, size, rng)
        a, x, b = frame.a, frame.x, frame.b
        gens = [list(c) for c in b.columns()]
        for _ in range(rng.randint(0, 2)):
            gens.insert(rng.randint(0, len(gens)), list(x.apply([random_element(R, rng) for _ in range(size)])))
        data = classifying_surjection(frame.idempotent, gens, frame)
        ok = (
            data.generators() == gens
            and data.generators_from_coordinates() == gens
            and a @ x == a
            and x @ b == b
            and bool(data.coordinate_certificate)
        )
        bad += not ok
    return bad == 0, f"200 pairs, {bad} failures"


def _azumaya(rng):
    bad, count = 0, 0
    for q, n in [(5, 2), (7, 2), (7, 3), (13, 2), (13, 3)]:
        F = PrimeField(q)
        rho = find_root_of_unity(F, n)
        for a, b in itertools.product(range(1, q), repeat=2):
            A = symbol_algebra(a, b, rho)
            count += 1
            if not is_azumaya(A):
                bad += 1
                continue
            data = split_over_finite_field(A, seed=rng.randrange(2**31))
            bad += not verify_split(A, data)
    dual_fails = not is_azumaya(dual_numbers(PrimeField(5)))
    return bad == 0 and dual_fails, f"{count} symbol algebras, {bad} failures, dual numbers rejected: {dual_fails}"


def _hilbert(rng):
    values = [v for v in range(-50, 51) if v]
    bad = 0
    for place in (2, 3, 5, 7, 13, "inf"):
        for a in values:
            for b in values:
                if hilbert_symbol(a, b, place) != hilbert_symbol_oracle(a, b, place):
                    bad += 1
    prod_bad = 0
    for _ in range(100):
        a = rng.choice([-1, 1]) * rng.randint(1, 10**6)
        b = rng.choice([-1, 1]) * rng.randint(1, 10**6)
        prod_bad += product_over_places(a, b)[0] != 1
    return bad == 0 and prod_bad == 0, f"{6 * len(values) ** 2} symbols, {bad} oracle mismatches, {prod_bad} product failures"


def _artin_schreier(rng):
    bad, count = 0, 0
    rings = small_char_p_rings(27)
    for R in rings:
        for a in R.elements():
            count += 1
            E = artin_schreier(R, a)
            if not is_galois(E):
                bad += 1
                continue
            res = artin_schreier_descent(E)
            bad += wp_preimage(R, R.sub(res.a, a)) is None
    return bad == 0, f"{len(rings)} rings, {count} values of a, {bad} failures"


CRITERIA = [
    ("SL factorization", 30, _sl),
    ("Forster bound", 60, _forster),
    ("extend_generator contract", 10, _extend),
    ("generator lifting", 30, _lift),
    ("Dedekind two-generation", 20, _dedekind),
    ("correspondence round trip", None, _correspondence),
    ("Azumaya/symbol suite", 60, _azumaya),
    ("Hilbert symbol", 60, _hilbert),
    ("Artin-Schreier round trip", 10, _artin_schreier),
]


@pytest.mark.acceptance
@pytest.mark.parametrize("name,limit,body", CRITERIA, ids=[c[0] for c in CRITERIA])
def test_criterion(name, limit, body):
    _run(name, limit, body)


if __name__ == "__main__":
    for name, limit, body in CRITERIA:
        try:
            _run(name, limit, body)
        except AssertionError:
            pass
        print(RESULTS[-1], flush=True)
