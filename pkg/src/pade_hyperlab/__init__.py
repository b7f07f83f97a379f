"""Pade interpolation by determinants, with exact and high-precision checks.

Subpackages and modules:

- ``numerics``: exact rationals, fixed-precision complex fields, equality policies
- ``linalg``: dense matrices, determinants, minors
- ``condensation``: determinant condensation identities
- ``series``: bracket functions, hypergeometric and very-well-poised series
- ``detformulas``: closed-form determinant evaluations
- ``pade``: interpolation problems and their solution routes
- ``cli``: the ``pade-hyperlab`` command
"""

from .errors import CheckFailed, InputError, PadeHyperlabError, SpecError
from .numerics import EXACT, RATIONAL, EqPolicy, complex_field, proj_eq, rational, scalar_eq

__version__ = "0.1.0"

__all__ = [
    "EXACT",
    "RATIONAL",
    "CheckFailed",
    "EqPolicy",
    "InputError",
    "PadeHyperlabError",
    "SpecError",
    "complex_field",
    "proj_eq",
    "rational",
    "scalar_eq",
]
