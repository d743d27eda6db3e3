"""Exception types shared across the package."""


class VknotError(Exception):
    """Base class for all library errors."""


class ParseError(VknotError):
    """Malformed Gauss-code, braid-word or polynomial text."""


class LabelError(ParseError):
    """A crossing label does not occur exactly once as O and once as U."""


class SignMismatchError(ParseError):
    """The two passages of a crossing carry different signs."""


class ZeroPolynomialError(VknotError):
    """Operation undefined on the zero polynomial."""


class EmptyCodeError(VknotError):
    """Operation requires a nonempty Gauss code."""


class NotAKnotError(VknotError):
    """Closure has more than one component."""


class NotDivisibleError(VknotError):
    """Candidate period does not divide the crossing number."""


class NotPeriodicError(VknotError):
    """No rotation symmetry of the requested order exists."""


class InvalidPeriodError(VknotError):
    """Period structure is not valid for the given diagram."""


class NotAlmostClassicalError(VknotError):
    """Input admits no Alexander numbering."""


class NotPrimeError(VknotError):
    """Argument must be prime."""


class NotPrimePowerError(VknotError):
    """Argument must be a prime power."""


class NotCoprimeError(VknotError):
    """Arguments must be relatively prime."""
