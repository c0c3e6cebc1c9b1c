"""Exception hierarchy shared across the package.

Validation errors always name the offending field so that CLI and service
layers can surface machine-readable messages without string parsing.
"""

from __future__ import annotations


class GreenCalcError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(GreenCalcError):
    """An input value violates a model invariant."""

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}")


class UnknownFormat(GreenCalcError):
    """An unsupported rendering format was requested."""


class DataError(GreenCalcError):
    """Base class for reference-data and ingestion problems."""


class MalformedRow(DataError):
    """A CSV row could not be parsed (wrong column count, bad number...)."""

    def __init__(self, line: int, message: str):
        self.line = line
        super().__init__(f"line {line}: {message}")


class DuplicateName(DataError):
    """Two catalog rows share the same (case-folded) key."""

    def __init__(self, name: str):
        self.name = name
        super().__init__(f"duplicate entry: {name!r}")


class InvariantViolation(DataError):
    """A parsed row violates a domain invariant."""

    def __init__(self, name: str, reason: str):
        self.name = name
        self.reason = reason
        super().__init__(f"{name!r}: {reason}")


class MissingWorldAverage(DataError):
    """The carbon-intensity table has no WORLD row."""


class NotFound(DataError):
    """A catalog lookup failed; carries closest names by edit distance."""

    def __init__(self, name: str, suggestions: list[str] | None = None):
        self.name = name
        self.suggestions = suggestions or []
        hint = f" (did you mean: {', '.join(self.suggestions)}?)" if self.suggestions else ""
        super().__init__(f"not found: {name!r}{hint}")


class NegativeValue(DataError):
    """A job-record field that must be non-negative is negative."""

    def __init__(self, field: str, line: int):
        self.field = field
        self.line = line
        super().__init__(f"line {line}: negative value for {field}")


class UsageOutOfRange(DataError):
    """A job-record usage factor falls outside [0, 1]."""

    def __init__(self, line: int):
        self.line = line
        super().__init__(f"line {line}: usage_factor outside [0, 1]")


class ChecksumMismatch(DataError):
    """A bundled data file does not match its pinned checksum."""

    def __init__(self, filename: str, expected: str, actual: str):
        self.filename = filename
        super().__init__(
            f"{filename}: checksum mismatch (expected {expected[:12]}..., got {actual[:12]}...)"
        )
