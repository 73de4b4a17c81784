"""Local Hilbert symbols of rationals, with an exhaustive solvability oracle."""

from fractions import Fraction

from . import kernels
from .errors import MalformedInput
from .intarith import factorize, is_prime, legendre, trial_bound

INFINITY = "inf"

# precision for the oracle: k = 3 for odd p, 5 for p = 2
ORACLE_PRECISION = {2: 5}
ODD_PRECISION = 3


def parse_place(place):
    if isinstance(place, str):
        s = place.strip().lower()
        if s in ("inf", "infinity", "oo", "real"):
            return INFINITY
        try:
            place = int(s)
        except ValueError as exc:
            raise MalformedInput(f"bad place {place!r}") from exc
    if not isinstance(place, int) or not is_prime(place):
        raise MalformedInput(f"place must be a prime or infinity, got {place!r}")
    return place


def _integral(x):
    """A nonzero integer in the same square class as the rational ``x``."""
    x = Fraction(x)
    if x == 0:
        raise MalformedInput("Hilbert symbol arguments must be nonzero")
    return x.numerator * x.denominator


def _split(x, p):
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v, x


def hilbert_symbol(a, b, place):
    """Closed form: odd p, p = 2, and the real place."""
    place = parse_place(place)
    a, b = _integral(a), _integral(b)
    if place == INFINITY:
        return -1 if a < 0 and b < 0 else 1
    p = place
    alpha, u = _split(a, p)
    beta, v = _split(b, p)
    if p == 2:
        eps_u, eps_v = ((u - 1) // 2) % 2, ((v - 1) // 2) % 2
        om_u, om_v = ((u * u - 1) // 8) % 2, ((v * v - 1) // 8) % 2
        e = eps_u * eps_v + alpha * om_v + beta * om_u
        return -1 if e % 2 else 1
    e = (alpha * beta * ((p - 1) // 2)) % 2
    s = -1 if e else 1
    if beta % 2:
        s *= legendre(u, p)
    if alpha % 2:
        s *= legendre(v, p)
    return s


def _reduce_square_class(x, p):
    """Strip even powers of p so the valuation is 0 or 1."""
    v, u = _split(x, p)
    return u * p ** (v % 2)


def hilbert_symbol_oracle(a, b, place):
    """Search for a primitive solution of ``z^2 = a x^2 + b y^2`` mod ``p^k``."""
    place = parse_place(place)
    a, b = _integral(a), _integral(b)
    if place == INFINITY:
        # real solutions exist unless both forms are negative definite
        return 1 if (a > 0 or b > 0) else -1
    p = place
    k = ORACLE_PRECISION.get(p, ODD_PRECISION)
    a, b = _reduce_square_class(a, p), _reduce_square_class(b, p)
    return 1 if kernels.isotropic_mod_pk(a, b, p, k) else -1


def bad_places(a, b):
    """Places where the symbol can be -1: primes dividing ``2ab``, and infinity."""
    a, b = _integral(a), _integral(b)
    bound = trial_bound()
    primes = {2}
    for x in (a, b):
        primes |= set(factorize(abs(x), bound))
    return sorted(primes) + [INFINITY]


def product_over_places(a, b):
    """``(prod of all local symbols, {place: symbol})``; the first must be +1."""
    values = {pl: hilbert_symbol(a, b, pl) for pl in bad_places(a, b)}
    prod = 1
    for s in values.values():
        prod *= s
    return prod, values
