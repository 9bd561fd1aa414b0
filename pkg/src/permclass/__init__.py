"""Permutation classes Av(4231, 35142, 42513, 351624) and
Av(52341, 53241, 52431, 35142, 42513, 351624): brute-force enumeration,
simple permutations, glue decompositions, word encodings, automata and
generating functions."""

from .perm_core import Permutation, contains, avoids, parse, to_text
from .class_enum import BASIS_A, BASIS_APRIME, count_class, generate_class
from .simple_decomp import is_simple, substitution_decompose
from .structure_glue import GlueType, glue, glue_decompose, membership
from .codec import decode_A, encode_A, phi_prime, psi_prime, check_language

__all__ = [
    "Permutation", "contains", "avoids", "parse", "to_text",
    "BASIS_A", "BASIS_APRIME", "count_class", "generate_class",
    "is_simple", "substitution_decompose",
    "GlueType", "glue", "glue_decompose", "membership",
    "encode_A", "decode_A", "phi_prime", "psi_prime", "check_language",
]

__version__ = "0.1.0"
