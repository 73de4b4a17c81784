"""Command-line interface: JSON in, JSON out, certificates under ``"certificate"``.

Exit status: 0 success, 2 precondition violation, 3 internal invariant
breach, 64 usage error. Every subcommand accepts ``--verify PATH`` to
re-check a previously emitted result instead of computing a new one.
"""

import argparse
import json
import os
import random
import sys
from fractions import Fraction

from . import algebras, galois, grassmann, hilbert, kernels, sampling
from .errors import ForgeError, InvariantBreach, MalformedInput
from .forster_swan import (
    LiftCertificate,
    elements_of_norm_at_most,
    extend_generator,
    ideal_two_generators,
    lift_generators,
    minimal_generators,
    principal_generator,
)
from .linalg import ExactMatrix
from .modules import ModulePresentation, ProjectiveIdempotent, generates, max_fiber_dim, span_dim_at
from .quadratic import QuadIdeal
from .rings import QuadOrder, ZMod, ring_from_json
from .slfactor import ElementaryWord, factor_sl, position_sequence

EXIT_OK = 0
EXIT_USAGE = 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


# ---------------------------------------------------------------------------
# JSON helpers


def load_json(arg, what):
    """A JSON literal, or ``@path`` / an existing file path holding JSON."""
    if arg is None:
        raise UsageError(f"missing --{what}")
    text = arg
    if arg.startswith("@"):
        text = _read(arg[1:])
    elif not arg.lstrip().startswith(("{", "[", '"')) and os.path.isfile(arg):
        text = _read(arg)
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"--{what} is not valid JSON: {exc}") from exc


def _read(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


def dumps(obj):
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _ring_arg(args):
    return ring_from_json(load_json(args.ring, "ring"))


def _matrix(obj, ring):
    """A matrix object, or a bare list of rows over ``ring``."""
    if isinstance(obj, list):
        if ring is None:
            raise UsageError("a bare row list needs --ring")
        ncols = len(obj[0]) if obj else 0
        return ExactMatrix(ring, [[ring.decode(x) for x in r] for r in obj], ncols)
    return ExactMatrix.from_json(obj, ring)


def _vectors(obj, ring):
    if not isinstance(obj, list):
        raise MalformedInput("expected a list of vectors")
    return [[ring.decode(x) for x in v] for v in obj]


def _enc_vectors(ring, vecs):
    return [[ring.encode(x) for x in v] for v in vecs]


# ---------------------------------------------------------------------------
# factor-sl


def cmd_factor_sl(args):
    ring = _ring_arg(args) if args.ring else None
    a = _matrix(load_json(args.matrix, "matrix"), ring)
    word = factor_sl(a)
    return {
        "input": {"matrix": a.to_json()},
        "word": word.to_json(a.ring),
        "certificate": {"length": len(word), "multiplies_back": word.evaluate(a.ring) == a},
    }


def verify_factor_sl(out):
    a = ExactMatrix.from_json(out["input"]["matrix"])
    word = ElementaryWord.from_json(out["word"], a.ring)
    return {
        "multiplies_back": word.evaluate(a.ring) == a,
        "standard_positions": word.positions == position_sequence(a.nrows).positions,
    }


# ---------------------------------------------------------------------------
# min-gens / lift-gens / two-gen-ideal


def cmd_min_gens(args):
    module = ModulePresentation.from_json(load_json(args.module, "module"))
    gens = minimal_generators(module)
    ring = module.ring
    return {
        "input": {"module": module.to_json()},
        "generators": _enc_vectors(ring, gens),
        "count": len(gens),
        "certificate": {
            "max_fiber_dim": max_fiber_dim(module),
            "generation": generates(module, gens).to_json(),
        },
    }


def verify_min_gens(out):
    module = ModulePresentation.from_json(out["input"]["module"])
    gens = _vectors(out["generators"], module.ring)
    return {
        "generates": bool(generates(module, gens)),
        "count_is_max_fiber_dim": len(gens) == max_fiber_dim(module),
    }


def cmd_lift_gens(args):
    module = ModulePresentation.from_json(load_json(args.module, "module"))
    ring = module.ring
    ideal = [ring.decode(x) for x in load_json(args.ideal, "ideal")]
    b = _vectors(load_json(args.b, "b"), ring)
    a, cert = lift_generators(module, ideal, b)
    return {
        "input": {
            "module": module.to_json(),
            "ideal": [ring.encode(x) for x in ideal],
            "b": _enc_vectors(ring, b),
        },
        "generators": _enc_vectors(ring, a),
        "certificate": {
            "ideal_gens": [ring.encode(x) for x in cert.ideal_gens],
            "combination": [_enc_vectors(ring, row) for row in cert.combination],
            "generation": cert.generation.to_json() if cert.generation is not None else None,
        },
    }


def verify_lift_gens(out):
    module = ModulePresentation.from_json(out["input"]["module"])
    ring = module.ring
    b = _vectors(out["input"]["b"], ring)
    a = _vectors(out["generators"], ring)
    c = out["certificate"]
    cert = LiftCertificate(
        [ring.decode(x) for x in c["ideal_gens"]],
        [_vectors(row, ring) for row in c["combination"]],
    )
    same_ideal = cert.ideal_gens == [ring.decode(x) for x in out["input"]["ideal"]]
    return {
        "congruent_mod_IM": same_ideal and cert.check(ring, a, b),
        "generates": bool(generates(module, a)),
    }


def _order_and_ideal(args):
    if args.ring:
        order = _ring_arg(args)
    elif args.d is not None:
        order = QuadOrder(args.d)
    else:
        raise UsageError("two-gen-ideal needs --ring or --d")
    if not isinstance(order, QuadOrder):
        raise MalformedInput("two-gen-ideal needs a quadratic order")
    return order, QuadIdeal.from_json(order, load_json(args.ideal, "ideal"))


def _principality(order, ideal):
    if order.discriminant > 0:
        return None
    g = principal_generator(ideal)
    n = ideal.norm()
    return {
        "principal": g is not None,
        "generator": order.encode(g) if g is not None else None,
        "searched_norm": str(n),
        "elements_with_norm_at_most": len(elements_of_norm_at_most(ideal, n)),
    }


def cmd_two_gen_ideal(args):
    order, ideal = _order_and_ideal(args)
    x, y, cert = ideal_two_generators(ideal, args.bound)
    out = {
        "input": {"order": order.to_json(), "ideal": ideal.to_json()},
        "x": order.encode(x),
        "y": order.encode(y),
        "certificate": cert.to_json(order),
    }
    prin = _principality(order, ideal)
    if prin is not None:
        out["certificate"]["principality"] = prin
    return out


def verify_two_gen_ideal(out):
    order = ring_from_json(out["input"]["order"])
    ideal = QuadIdeal.from_json(order, out["input"]["ideal"])
    x, y = order.decode(out["x"]), order.decode(out["y"])
    checks = {"hnf_matches": QuadIdeal.generated_by(order, [x, y]) == ideal}
    claimed = out["certificate"].get("principality")
    if claimed is not None:
        g = principal_generator(ideal)
        if claimed["principal"]:
            gen = order.decode(claimed["generator"])
            checks["principality"] = QuadIdeal.generated_by(order, [gen]) == ideal
        else:
            checks["principality"] = g is None
    return checks


# ---------------------------------------------------------------------------
# classify


def cmd_classify(args):
    P = ProjectiveIdempotent.from_json(load_json(args.idempotent, "idempotent"))
    gens = _vectors(load_json(args.gens, "gens"), P.ring)
    data = grassmann.classifying_surjection(P, gens)
    out = {"input": {"idempotent": P.to_json(), "gens": _enc_vectors(P.ring, gens)}}
    out.update(data.to_json())
    out["certificate"]["round_trip"] = data.generators() == gens
    return out


def verify_classify(out):
    P = ProjectiveIdempotent.from_json(out["input"]["idempotent"])
    ring = P.ring
    gens = _vectors(out["input"]["gens"], ring)
    surj = ExactMatrix.from_json(out["surjection"], ring)
    checks = {
        "columns_are_generators": [list(c) for c in surj.columns()] == gens,
        "image_in_e": P.e @ surj == surj,
        "generates": bool(generates(ModulePresentation(ring, P.size, ExactMatrix.identity(ring, P.size) - P.e), gens)),
    }
    frame = out["certificate"].get("frame")
    if frame is not None:
        a = ExactMatrix.from_json(frame["a"], ring)
        b = ExactMatrix.from_json(frame["b"], ring)
        x = ExactMatrix.from_json(frame["x"], ring)
        coords = ExactMatrix.from_json(out["n_row_form"], ring)
        checks["frame"] = grassmann.FrameTriple(a, x, b).check() and x == P.e
        checks["n_row_form"] = coords == a @ surj and b @ coords == surj
        checks["n_row_surjective"] = bool(grassmann.is_section_surjection(coords))
    return checks


# ---------------------------------------------------------------------------
# symbol / hilbert / artin-schreier


def cmd_symbol(args):
    ring = _ring_arg(args)
    if args.n is None or args.a is None or args.b is None:
        raise UsageError("symbol needs --a, --b and --n")
    if args.rho is not None:
        rho = algebras.RootOfUnity(ring, ring.decode(args.rho), args.n)
    else:
        rho = algebras.find_root_of_unity(ring, args.n)
    A = algebras.symbol_algebra(ring.decode(args.a), ring.decode(args.b), rho)
    az = algebras.is_azumaya(A)
    out = {
        "input": {"ring": ring.to_json(), "a": args.a, "b": args.b, "n": args.n, "rho": ring.encode(rho.rho)},
        "algebra": A.to_json(),
        "certificate": {"azumaya": az.to_json(ring)},
    }
    if algebras.is_ext_or_prime_field(ring) and (ring.order() - 1) % args.n == 0:
        split = algebras.split_over_finite_field(A, seed=args.seed)
        out["certificate"]["split"] = split.to_json(ring)
    return out


def _split_from_json(obj, ring):
    dec = ring.decode
    images = [ExactMatrix(ring, [[dec(x) for x in row] for row in m]) for m in obj["images"]]
    return algebras.SplitData(
        tuple(dec(x) for x in obj["element"]),
        [dec(x) for x in obj["eigenvalues"]],
        tuple(dec(x) for x in obj["idempotent"]),
        [tuple(dec(x) for x in v) for v in obj["left_ideal_basis"]],
        images,
        obj.get("seed", 0),
        obj.get("tries", 0),
    )


def verify_symbol(out):
    A = algebras.StructureConstantAlgebra.from_json(out["algebra"])
    ring = A.ring
    inp = out["input"]
    rho = algebras.RootOfUnity(ring, ring.decode(inp["rho"]), int(inp["n"]))
    rebuilt = algebras.symbol_algebra(ring.decode(inp["a"]), ring.decode(inp["b"]), rho)
    checks = {"table_matches": rebuilt == A}
    az = algebras.is_azumaya(A)
    checks["azumaya"] = bool(az) == out["certificate"]["azumaya"]["azumaya"]
    split = out["certificate"].get("split")
    if split is not None:
        checks["split"] = algebras.verify_split(A, _split_from_json(split, ring))
    return checks


def _rational(text):
    try:
        q = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise MalformedInput(f"not a rational number: {text!r}") from exc
    return q


def cmd_hilbert(args):
    if args.a is None or args.b is None or args.place is None:
        raise UsageError("hilbert needs --a, --b and --place")
    a, b = _rational(args.a), _rational(args.b)
    place = hilbert.parse_place(args.place)
    s = hilbert.hilbert_symbol(a, b, place)
    oracle = hilbert.hilbert_symbol_oracle(a, b, place)
    if s != oracle:
        raise InvariantBreach(f"closed form {s} disagrees with the solvability search {oracle}")
    prod, values = hilbert.product_over_places(a, b)
    return {
        "input": {"a": str(a), "b": str(b), "place": str(place)},
        "symbol": s,
        "certificate": {
            "oracle": oracle,
            "places": {str(k): v for k, v in values.items()},
            "product": prod,
        },
    }


def verify_hilbert(out):
    inp = out["input"]
    a, b = _rational(inp["a"]), _rational(inp["b"])
    place = hilbert.parse_place(inp["place"])
    prod, _ = hilbert.product_over_places(a, b)
    return {
        "closed_form": hilbert.hilbert_symbol(a, b, place) == out["symbol"],
        "oracle": hilbert.hilbert_symbol_oracle(a, b, place) == out["symbol"],
        "product_formula": prod == 1,
    }


def cmd_artin_schreier(args):
    if args.action == "build":
        ring = _ring_arg(args)
        if args.a is None:
            raise UsageError("artin-schreier build needs --a")
        E = galois.artin_schreier(ring, ring.decode(args.a))
        cert = galois.is_galois(E)
        return {
            "input": {"ring": ring.to_json(), "a": args.a},
            "extension": E.to_json(),
            "certificate": {"galois": cert.to_json(ring)},
        }
    E = galois.GaloisExtensionData.from_json(load_json(args.extension, "extension"))
    res = galois.artin_schreier_descent(E)
    ring = E.base
    return {
        "input": {"extension": E.to_json()},
        "a": ring.encode(res.a),
        "certificate": {"galois": E.certificate.to_json(ring), "descent": res.to_json(ring)},
    }


def verify_artin_schreier(out):
    if "extension" in out:
        E = galois.GaloisExtensionData.from_json(out["extension"])
        ring = E.base
        rebuilt = galois.artin_schreier(ring, ring.decode(out["input"]["a"]))
        return {
            "table_matches": rebuilt.algebra == E.algebra and rebuilt.sigma == E.sigma,
            "galois": bool(galois.is_galois(E)) == out["certificate"]["galois"]["galois"],
        }
    E = galois.GaloisExtensionData.from_json(out["input"]["extension"])
    ring = E.base
    d = out["certificate"]["descent"]
    x = [ring.decode(c) for c in d["x"]]
    checks = galois.check_descent(E, ring.decode(out["a"]), x)
    checks["galois"] = bool(galois.is_galois(E))
    return checks


# ---------------------------------------------------------------------------
# selftest


def _suite_sl(rng, count):
    ok = 0
    for _ in range(count):
        ring = ZMod(rng.choice((6, 720, 30030)))
        a = sampling.random_sl(ring, rng.choice((2, 3, 4)), rng)
        ok += factor_sl(a).evaluate(ring) == a
    return ok


def _suite_min_gens(rng, count):
    ok = 0
    for _ in range(count):
        module = sampling.random_module(sampling.random_zmod(rng), rng)
        gens = minimal_generators(module)
        ok += len(gens) == max_fiber_dim(module) and bool(generates(module, gens))
    return ok


def _suite_extend(rng, count):
    ok = 0
    for _ in range(count):
        ring = sampling.random_zmod(rng)
        module, ideals, elems = sampling.random_extend_instance(ring, rng)
        new = extend_generator(module, ideals, elems)
        ok += all(
            span_dim_at(module, elems + [new], q) == span_dim_at(module, elems, q) + 1 for q in ideals
        )
    return ok


def _suite_lift(rng, count):
    ok = 0
    for _ in range(count):
        ring = sampling.random_zmod(rng)
        module = sampling.random_module(ring, rng, max_ambient=3)
        g = sampling.random_element(ring, rng)
        quotient = module.with_extra_relations(
            [[ring.mul(g, x) for x in e] for e in module.unit_vectors()]
        )
        b = minimal_generators(quotient)
        b += [[sampling.random_element(ring, rng) for _ in range(module.ambient)]]
        if len(b) < max_fiber_dim(module):
            b += [[ring.zero()] * module.ambient] * (max_fiber_dim(module) - len(b))
        a, cert = lift_generators(module, [g], b)
        ok += cert.check(ring, a, b) and bool(generates(module, a))
    return ok


def _suite_two_gen(rng, count):
    order = QuadOrder(-5)
    ok = 0
    for _ in range(count):
        ideal = sampling.random_quadratic_ideal(order, rng)
        x, y, _ = ideal_two_generators(ideal)
        ok += QuadIdeal.generated_by(order, [x, y]) == ideal
    return ok


def _suite_classify(rng, count):
    ok = 0
    for _ in range(count):
        ring = sampling.random_zmod(rng)
        frame = sampling.random_frame(ring, rng.randint(1, 3), rng)
        P = frame.idempotent
        gens = [list(c) for c in P.e.columns()]
        data = grassmann.classifying_surjection(P, gens, frame)
        ok += data.generators() == gens and data.generators_from_coordinates() == gens and frame.check()
    return ok


def _suite_symbol(rng, count):
    from .rings import PrimeField

    ok = 0
    for _ in range(count):
        q, n = rng.choice(((5, 2), (7, 2), (7, 3), (13, 2), (13, 3)))
        F = PrimeField(q)
        a, b = rng.randrange(1, q), rng.randrange(1, q)
        A = algebras.symbol_algebra(a, b, algebras.find_root_of_unity(F, n))
        data = algebras.split_over_finite_field(A, seed=rng.randrange(1 << 16))
        ok += bool(algebras.is_azumaya(A)) and algebras.verify_split(A, data)
    return ok


def _suite_hilbert(rng, count):
    ok = 0
    for _ in range(count):
        a, b = (rng.choice((-1, 1)) * rng.randint(1, 50) for _ in range(2))
        place = rng.choice((2, 3, 5, 7, 13, hilbert.INFINITY))
        ok += hilbert.hilbert_symbol(a, b, place) == hilbert.hilbert_symbol_oracle(a, b, place)
    return ok


def _suite_artin_schreier(rng, count):
    rings = galois.small_char_p_rings(9)
    ok = 0
    for _ in range(count):
        R = rng.choice(rings)
        a = rng.choice(list(R.elements()))
        E = galois.artin_schreier(R, a)
        res = galois.artin_schreier_descent(E)
        ok += bool(E.certificate) and galois.wp_preimage(R, R.sub(res.a, a)) is not None
    return ok


SUITES = {
    "factor-sl": _suite_sl,
    "min-gens": _suite_min_gens,
    "extend-generator": _suite_extend,
    "lift-gens": _suite_lift,
    "two-gen-ideal": _suite_two_gen,
    "classify": _suite_classify,
    "symbol": _suite_symbol,
    "hilbert": _suite_hilbert,
    "artin-schreier": _suite_artin_schreier,
}


def cmd_selftest(args):
    report = {}
    failed = 0
    for name, suite in SUITES.items():
        rng = random.Random(f"{args.seed}:{name}")
        passed = suite(rng, args.count)
        report[name] = {"runs": args.count, "passed": int(passed)}
        failed += args.count - passed
    out = {"seed": args.seed, "backend": kernels.BACKEND, "suites": report, "failures": failed}
    if failed:
        raise _SelftestFailure(out)
    return out


class _SelftestFailure(InvariantBreach):
    def __init__(self, report):
        super().__init__(f"{report['failures']} invariant checks failed")
        self.report = report

    def to_json(self):
        out = super().to_json()
        out["report"] = self.report
        return out


def verify_selftest(out):
    return {"no_failures": out.get("failures") == 0}


# ---------------------------------------------------------------------------
# dispatch

COMMANDS = {
    "factor-sl": (cmd_factor_sl, verify_factor_sl),
    "min-gens": (cmd_min_gens, verify_min_gens),
    "lift-gens": (cmd_lift_gens, verify_lift_gens),
    "two-gen-ideal": (cmd_two_gen_ideal, verify_two_gen_ideal),
    "classify": (cmd_classify, verify_classify),
    "symbol": (cmd_symbol, verify_symbol),
    "hilbert": (cmd_hilbert, verify_hilbert),
    "artin-schreier": (cmd_artin_schreier, verify_artin_schreier),
    "selftest": (cmd_selftest, verify_selftest),
}


def build_parser():
    parser = _Parser(prog="forster-forge", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--verify", metavar="PATH", help="re-check an emitted result")
        p.add_argument("--seed", type=int, default=0, help="seed for randomized searches")
        p.add_argument("--output", metavar="PATH", help="also write the JSON here")
        return p

    p = add("factor-sl", "factor an SL_m matrix into elementary matrices")
    p.add_argument("--ring", help="ring descriptor (JSON)")
    p.add_argument("--matrix", help="matrix (JSON object, or row list with --ring)")

    p = add("min-gens", "minimal generators of a module over a semilocal ring")
    p.add_argument("--module", help='{"ring", "ambient", "relations"} (JSON)')

    p = add("lift-gens", "lift generators of M/IM to generators of M")
    p.add_argument("--module")
    p.add_argument("--ideal", help="list of ideal generators (JSON)")
    p.add_argument("--b", help="list of module elements (JSON)")

    p = add("two-gen-ideal", "two generators of an ideal of a quadratic order")
    p.add_argument("--ring", help="quad_order descriptor (JSON)")
    p.add_argument("--d", type=int, help="shortcut for the order of Q(sqrt d)")
    p.add_argument("--ideal", help="row-major 2x2 HNF (JSON)")
    p.add_argument("--bound", type=int, help="norm search bound")

    p = add("classify", "classifying surjection of generators of im(e)")
    p.add_argument("--idempotent", help='{"ring", "e"} (JSON)')
    p.add_argument("--gens", help="list of generators (JSON)")

    p = add("symbol", "symbol algebra with Azumaya and splitting certificates")
    p.add_argument("--ring")
    p.add_argument("--a")
    p.add_argument("--b")
    p.add_argument("--n", type=int)
    p.add_argument("--rho", help="primitive n-th root of unity (default: first found)")

    p = add("hilbert", "local Hilbert symbol of two rationals")
    p.add_argument("--a")
    p.add_argument("--b")
    p.add_argument("--place", help="a prime or inf")

    p = add("artin-schreier", "Artin-Schreier construction and descent")
    p.add_argument("action", choices=("build", "descend"))
    p.add_argument("--ring")
    p.add_argument("--a")
    p.add_argument("--extension", help="Galois extension data (JSON)")

    p = add("selftest", "run the randomized invariant suites")
    p.add_argument("--count", type=int, default=5, help="runs per suite")
    return parser


def dispatch(argv=None, stdout=None):
    """Run one command; returns the exit status. JSON goes to ``stdout``."""
    stdout = stdout or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    run, verify = COMMANDS[args.command]
    try:
        if args.verify:
            emitted = load_json("@" + args.verify, "verify")
            checks = verify(emitted)
            ok = all(bool(v) for v in checks.values())
            result = {"verified": ok, "checks": checks}
            status = EXIT_OK if ok else InvariantBreach.exit_code
        else:
            result = run(args)
            status = EXIT_OK
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ForgeError as exc:
        result, status = exc.to_json(), exc.exit_code
    except (KeyError, TypeError, ValueError) as exc:
        # structurally wrong JSON inside an otherwise parsed document
        err = MalformedInput(f"malformed input: {exc!r}")
        result, status = err.to_json(), err.exit_code
    except Exception as exc:  # a bug, reported as a broken invariant
        err = InvariantBreach(f"unexpected {type(exc).__name__}: {exc}")
        result, status = err.to_json(), err.exit_code
    text = dumps(result)
    print(text, file=stdout)
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    return status


def main(argv=None):
    raise SystemExit(dispatch(argv))


if __name__ == "__main__":
    main()
