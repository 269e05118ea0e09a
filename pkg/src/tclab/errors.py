"""Exception hierarchy shared by the library and the CLI.

The CLI maps each class to a stable error code and exit status, see
``tclab.cli``.
"""


class AlgebraError(Exception):
    """Base class; also raised for malformed arguments."""

    code = "E_ARG"


class RingMismatchError(AlgebraError):
    """Operands live in different polynomial rings."""


class ExponentOverflowError(AlgebraError):
    """A monomial exponent left the machine-word range."""

    code = "E_OVERFLOW"


class ZeroPolynomialError(AlgebraError):
    """An operation that needs a nonzero polynomial received zero."""


class DomainError(AlgebraError):
    """Mathematically meaningless request, e.g. a unit defining ideal."""

    code = "E_DOMAIN"


class VerificationError(AlgebraError):
    """A user-supplied claim failed its machine check."""

    code = "E_VERIFY"

    def __init__(self, message, failed_checks=()):
        super().__init__(message)
        self.failed_checks = list(failed_checks)
