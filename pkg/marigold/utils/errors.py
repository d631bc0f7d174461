"""
Exception hierarchy for Marigold.

Library code raises these; only the command-line layer turns them into
log lines and exit codes (see EXIT_CODES).
"""

from typing import Optional


class MarigoldError(Exception):
    """Base class for every error raised on purpose by this package."""


class TournamentError(MarigoldError, ValueError):
    """A weighted tournament or reversal function violates its invariants."""


class PreconditionError(MarigoldError, ValueError):
    """An operation was called outside its precondition (e.g. MoV of a winner
    requested from a constructive solver)."""


class ParityError(PreconditionError):
    """Raised when n or m has the wrong parity for a construction."""


class ParseError(MarigoldError, ValueError):
    """Malformed input file. Carries the 1-based line number when known."""

    def __init__(self, message: str, line: Optional[int] = None, source: Optional[str] = None):
        self.line = line
        self.source = source
        where = ""
        if source:
            where += f"{source}"
        if line is not None:
            where += f":{line}" if where else f"line {line}"
        super().__init__(f"{where}: {message}" if where else message)


class ScaleGuardError(MarigoldError):
    """The instance is larger than the solver is allowed to handle."""


class BudgetExhaustedError(MarigoldError):
    """An explicit search budget ran out before a witness was found."""


class InvariantFailure(MarigoldError):
    """An internal self-check failed. Always a bug, never bad input."""


# Exit codes used by the command line
EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_SCALE = 3
EXIT_INVARIANT = 4


def exit_code_for(error: BaseException) -> int:
    """Map an exception to the process exit code."""
    if isinstance(error, ParseError):
        return EXIT_PARSE
    if isinstance(error, (ScaleGuardError, BudgetExhaustedError)):
        return EXIT_SCALE
    if isinstance(error, InvariantFailure):
        return EXIT_INVARIANT
    return EXIT_USAGE
