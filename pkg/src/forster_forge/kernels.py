"""Backend selection for the modular kernels.

The compiled extension is used when it imports and ``FORSTER_FORGE_PURE`` is
unset; moduli at or above ``SMALL_MODULUS`` always take the Python path
because the compiled code works in 64-bit integers.
"""

import os

from . import _pykernels as py

SMALL_MODULUS = 2**31

try:
    if os.environ.get("FORSTER_FORGE_PURE"):
        raise ImportError("pure backend forced")
    from . import _ckernels as compiled
except ImportError:
    compiled = None

BACKEND = "cython" if compiled is not None else "python"


def _pick(modulus):
    if compiled is not None and modulus < SMALL_MODULUS:
        return compiled
    return py


def matmul_mod(a, b, n):
    return _pick(n).matmul_mod(a, b, n)


def rref_mod_p(a, p):
    return _pick(p).rref_mod_p(a, p)


def rank_mod_p(a, p):
    return _pick(p).rank_mod_p(a, p)


def det_mod_p(a, p):
    return _pick(p).det_mod_p(a, p)


def isotropic_mod_pk(a, b, p, k):
    return _pick(p**k).isotropic_mod_pk(a, b, p, k)
