"""Exception taxonomy shared across the package."""


class MaxClass5Error(Exception):
    """Base class for all package errors."""


class ParamError(MaxClass5Error):
    """Invalid presentation parameters; carries the offending field name."""

    def __init__(self, field, message):
        self.field = field
        super().__init__(f"{field}: {message}")


class DimensionError(MaxClass5Error):
    """Element vector length does not match the group."""


class ConsistencyError(MaxClass5Error):
    """Derived relation tables violate the presentation."""


class StructureError(MaxClass5Error):
    """A structural computation returned something outside the expected shape."""


class CosetIndexError(MaxClass5Error):
    """Subgroup is not contained in, or not normal in, the ambient group."""


class UnsupportedQuotient(MaxClass5Error):
    """Transfer requested for a quotient that is not cyclic of order 5."""


class BadGenerator(MaxClass5Error):
    """Designated complement generator lies inside the kernel subgroup."""


class SizeGuard(MaxClass5Error):
    """Operation refused because the group exceeds its size guard."""


class FormatError(MaxClass5Error):
    """Malformed input file; carries a line number where known."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class PrecondError(MaxClass5Error):
    """Record fails the preconditions of the prediction it was passed to."""


class MissingS(MaxClass5Error):
    """Scenario needs the class-number exponent s but none was supplied."""


class SweepError(MaxClass5Error):
    """A parameter sweep hit a group that failed its consistency check."""
