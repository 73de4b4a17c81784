"""Compare the compiled and pure-Python modular kernels.

    python benchmarks/bench_kernels.py [--sizes 16 64 128] [--repeat 3]

Both backends are imported directly, so FORSTER_FORGE_PURE has no effect
here. Every timed call is also cross-checked for equal output.
"""

import argparse
import random
import time

from forster_forge import _pykernels as py

try:
    from forster_forge import _ckernels as cy
except ImportError:
    cy = None

PRIMES = (23, 65537, 2**31 - 1)


def _best(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def cases(n, p, rng):
    a = [[rng.randrange(p) for _ in range(n)] for _ in range(n)]
    b = [[rng.randrange(p) for _ in range(n)] for _ in range(n)]
    return {
        "matmul": lambda k: k.matmul_mod(a, b, p),
        "rref": lambda k: k.rref_mod_p(a, p),
        "det": lambda k: k.det_mod_p(a, p),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[16, 64, 128])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    if cy is None:
        print("compiled kernels are not built; nothing to compare")
        return
    rng = random.Random(args.seed)
    print(f"{'kernel':<10}{'n':>6}{'p':>12}{'python s':>12}{'cython s':>12}{'speedup':>10}")
    for n in args.sizes:
        for p in PRIMES:
            for name, run in cases(n, p, rng).items():
                tp, op = _best(lambda: run(py), args.repeat)
                tc, oc = _best(lambda: run(cy), args.repeat)
                if op != oc:
                    raise SystemExit(f"backends disagree on {name} n={n} p={p}")
                print(f"{name:<10}{n:>6}{p:>12}{tp:>12.4f}{tc:>12.4f}{tp / max(tc, 1e-9):>10.1f}")
    for p, k in ((3, 3), (2, 5), (13, 3)):
        hits = [(a, b) for a in range(1, 30) for b in range(1, 30)]
        tp, op = _best(lambda: [py.isotropic_mod_pk(a, b, p, k) for a, b in hits], args.repeat)
        tc, oc = _best(lambda: [cy.isotropic_mod_pk(a, b, p, k) for a, b in hits], args.repeat)
        if op != oc:
            raise SystemExit(f"backends disagree on isotropic p={p}")
        print(f"{'isotropic':<10}{p**k:>6}{p:>12}{tp:>12.4f}{tc:>12.4f}{tp / max(tc, 1e-9):>10.1f}")


if __name__ == "__main__":
    main()
