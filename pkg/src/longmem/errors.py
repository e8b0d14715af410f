"""Exception hierarchy. Everything data-related derives from DataError."""


class DataError(ValueError):
    """Input data or a derived series cannot be processed."""


class ParseError(DataError):
    """A row of an input file could not be parsed."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class EmptyInputError(ParseError):
    """The input held no data rows at all (usually the wrong file)."""


class ValidationError(ParseError):
    """A row parsed but violates a domain invariant (e.g. price <= 0)."""


class DegenerateSeriesError(DataError):
    """The series has no variability for the requested statistic."""
