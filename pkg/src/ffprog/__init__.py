"""Exact arithmetic for statistics of polynomial factorizations over finite fields.

Subpackages by layer:

- ``field``      finite fields F_q (Zech-log tables, q = p^k <= 2^16)
- ``polyring``   dense polynomials over F_q, deterministic factorization
- ``symrep``     symmetric-group characters and bound constants
- ``arithfun``   factorization-type functions and sieve identities
- ``dirichlet``  characters on residue classes, L-polynomials and their zeros
- ``bounds``     exhaustive verification of progression bounds
- ``anatomy``    factorization-type measures, total variation, stick-breaking models
- ``cli``        the ``ffprog`` command-line entry point
"""

from .field import Field, FieldElem, make_field, parse_field
from .polyring import (
    Poly,
    factor,
    is_irreducible,
    poly_from_string,
    poly_gcd,
)

__version__ = "0.1.0"

__all__ = [
    "Field",
    "FieldElem",
    "make_field",
    "parse_field",
    "Poly",
    "factor",
    "is_irreducible",
    "poly_from_string",
    "poly_gcd",
    "__version__",
]
