"""Exception types shared across the package."""


class GainProphetError(Exception):
    """Base class for every error raised by this package."""


class ParseError(GainProphetError):
    """Input text could not be parsed."""


class ValidationError(GainProphetError):
    """A value violates a documented invariant."""


class SizeError(GainProphetError):
    """Too few observations for the requested operation."""


class DomainError(GainProphetError):
    """A value lies outside the mathematical domain of the operation."""


class NoRootError(GainProphetError):
    """The score does not change sign over the supplied bracket."""
