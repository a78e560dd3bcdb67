"""Exception hierarchy shared by every stage of the pipeline."""

from __future__ import annotations


class UcvariaError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(UcvariaError):
    """The input document is not well-formed."""

    def __init__(self, message: str, source: str | None = None,
                 line: int | None = None, column: int | None = None):
        self.source = source
        self.line = line
        self.column = column
        where = source or "<input>"
        if line is not None:
            where += f":{line}"
            if column is not None:
                where += f":{column}"
        super().__init__(f"{where}: {message}")


class ValidationError(UcvariaError):
    """The input is well-formed but violates a domain invariant."""


class ContractViolation(UcvariaError, ValueError):
    """A caller broke an operation's precondition (bad index, empty context...)."""


class DegenerateCorpusError(UcvariaError):
    """A term-document matrix has no nonzero entry, so no SVD exists to reduce."""


class MissingDescriptionError(UcvariaError):
    """A use-case has no description and name fallback is disabled."""
