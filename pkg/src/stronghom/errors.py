"""Exception hierarchy.

``ParseError`` (malformed documents) and ``ValidationError`` subclasses (malformed
mathematical input, such as d d != 0) both map to exit status 2 in the CLI;
``CertificateFailure`` signals a failed exactness or
naturality check on valid input (exit status 1).
"""


class StrongHomError(Exception):
    pass


class ValidationError(StrongHomError, ValueError):
    pass


class ContainmentViolation(ValidationError):
    """A lattice that should sit inside another does not."""


class NotWellDefined(ValidationError):
    """A map does not descend to the requested subquotients."""


class InvalidComplex(ValidationError):
    pass


class InvalidChainMap(ValidationError):
    pass


class InvalidHomotopy(ValidationError):
    pass


class IncoherentMorphism(ValidationError):
    pass


class IncoherentHomotopy(ValidationError):
    pass


class InvalidTower(ValidationError):
    pass


class TowerTooShort(ValidationError):
    pass


class InvalidSimplicial(ValidationError):
    pass


class NonStabilizing(StrongHomError):
    """An image chain failed to stabilise within its proven bound."""


class CertificateFailure(StrongHomError):
    pass


class ParseError(StrongHomError, ValueError):
    """Malformed input document (exit status 2)."""
