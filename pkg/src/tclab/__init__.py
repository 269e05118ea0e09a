"""Groebner-basis toolkit for presented algebras ``K[x]/I``.

Dimension and height, Jacobian and Fitting ideals, the singular locus, and
bounded characteristic-p checks for test-element computations.
"""

from .charp import (
    CharPContext,
    TcVerdict,
    frobenius_closure_member,
    frobenius_power,
    krull_truncation_check,
    tc_certify_in,
    tc_refute_in,
    truncate_presentation,
)
from .differentials import (
    fitting_ideal,
    jacobian_fitting,
    jacobian_ideal,
    jacobian_matrix,
    regular_at,
    singular_locus,
)
from .dimension import PresentedAlgebra, components_of, height, krull_dim
from .errors import AlgebraError, DomainError, VerificationError
from .field import PrimeField, RationalField
from .groebner import GroebnerBasis, Ideal, groebner_basis, normal_form
from .poly import MonomialOrder, PolyRing, Polynomial
from .ringfile import RingFile, parse_ring_file

__version__ = "0.1.0"

__all__ = [
    "AlgebraError",
    "CharPContext",
    "DomainError",
    "GroebnerBasis",
    "Ideal",
    "MonomialOrder",
    "PolyRing",
    "Polynomial",
    "PresentedAlgebra",
    "PrimeField",
    "RationalField",
    "RingFile",
    "TcVerdict",
    "VerificationError",
    "components_of",
    "fitting_ideal",
    "frobenius_closure_member",
    "frobenius_power",
    "groebner_basis",
    "height",
    "jacobian_fitting",
    "jacobian_ideal",
    "jacobian_matrix",
    "krull_dim",
    "krull_truncation_check",
    "normal_form",
    "parse_ring_file",
    "regular_at",
    "singular_locus",
    "tc_certify_in",
    "tc_refute_in",
    "truncate_presentation",
]
