"""Finite Heyting algebras: structure, morphisms, validity and primitivity."""

from .errors import *  # noqa: F401,F403
from .kernel import (  # noqa: F401
    AlgebraMap,
    HeytingAlgebra,
    closure,
    from_covers,
    is_isomorphic,
    ordinal_sum,
    product,
)

__version__ = "0.1.0"
