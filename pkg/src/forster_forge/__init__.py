"""Exact constructive algebra over small commutative rings.

Generators of modules over semilocal rings, elementary factorization of
SL_m, idempotents and classifying surjections, symbol algebras, Hilbert
symbols and Artin-Schreier extensions, each with a checkable certificate.
"""

from .algebras import (
    RootOfUnity,
    StructureConstantAlgebra,
    dual_numbers,
    find_root_of_unity,
    is_azumaya,
    matrix_algebra,
    split_over_finite_field,
    symbol_algebra,
    verify_split,
)
from .errors import ForgeError, InvariantBreach
from .forster_swan import (
    extend_generator,
    ideal_two_generators,
    lift_generators,
    minimal_generators,
    stable_range_reduce,
)
from .galois import GaloisExtensionData, artin_schreier, artin_schreier_descent, is_galois
from .grassmann import (
    FrameTriple,
    classifying_surjection,
    idempotent_from_frame,
    is_section_surjection,
    specialize_universal_idempotent,
    truncate_surjection,
)
from .hilbert import hilbert_symbol, hilbert_symbol_oracle, product_over_places
from .kernels import BACKEND
from .linalg import ExactMatrix, charpoly, determinant, inverse_or_certificate, solve
from .modules import ModulePresentation, ProjectiveIdempotent, generates
from .quadratic import QuadIdeal
from .rings import ExtField, FpQuotient, LocalInt, PrimeField, Product, QuadOrder, ZMod, ring_from_json
from .slfactor import ElementaryWord, factor_sl, position_sequence

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "ElementaryWord",
    "ExactMatrix",
    "ExtField",
    "ForgeError",
    "FpQuotient",
    "FrameTriple",
    "GaloisExtensionData",
    "InvariantBreach",
    "LocalInt",
    "ModulePresentation",
    "PrimeField",
    "Product",
    "ProjectiveIdempotent",
    "QuadIdeal",
    "QuadOrder",
    "RootOfUnity",
    "StructureConstantAlgebra",
    "ZMod",
    "artin_schreier",
    "artin_schreier_descent",
    "charpoly",
    "classifying_surjection",
    "determinant",
    "dual_numbers",
    "extend_generator",
    "factor_sl",
    "find_root_of_unity",
    "generates",
    "hilbert_symbol",
    "hilbert_symbol_oracle",
    "ideal_two_generators",
    "idempotent_from_frame",
    "inverse_or_certificate",
    "is_azumaya",
    "is_galois",
    "is_section_surjection",
    "lift_generators",
    "matrix_algebra",
    "minimal_generators",
    "position_sequence",
    "product_over_places",
    "ring_from_json",
    "solve",
    "specialize_universal_idempotent",
    "split_over_finite_field",
    "stable_range_reduce",
    "symbol_algebra",
    "truncate_surjection",
    "verify_split",
]
