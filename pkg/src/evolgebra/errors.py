"""Exceptions raised by evolgebra.

Every error the library raises on purpose derives from
:class:`EvolgebraError`, so the CLI can catch them in one place and map
them to exit code 1.
"""

from typing import Optional


class EvolgebraError(Exception):
    """Base class for all evolgebra errors."""


class BackendMismatchError(EvolgebraError, TypeError):
    """Two scalars from different backends met in one expression."""


class UnsupportedBackendError(EvolgebraError):
    """The operation is not available in the requested backend.

    For example ``exp`` and ``log`` are undefined over the rationals.
    """


class DomainError(EvolgebraError, ValueError):
    """An argument is outside the domain of the operation."""


class DimensionMismatchError(EvolgebraError, ValueError):
    """Vectors or matrices of incompatible sizes were combined."""


class DegenerateNormError(EvolgebraError):
    """The gamma constant is zero, so the gamma-norm is not a norm."""


class NotClassifiedError(EvolgebraError):
    """The algebra is outside the canonical maximal-nilpotency class."""


class NotApplicableError(EvolgebraError):
    """The operation does not apply to this classification case."""


class InvalidParameterError(EvolgebraError, ValueError):
    """Parameters do not describe a member of the classified family."""


class SingularMatrixError(EvolgebraError):
    """A matrix that had to be inverted is singular."""


class BranchError(EvolgebraError):
    """A fractional power or logarithm has no value on this branch."""


class SeriesLimitError(EvolgebraError):
    """The exponential series did not settle within the term cap."""


class ConfigError(EvolgebraError):
    """The configuration file holds a value of the wrong type."""


class AlgebraParseError(EvolgebraError):
    """An algebra document could not be parsed.

    Attributes:
        line: 1-based line of the syntax error, when known.
        field: The document field the problem was found in, when known.
    """

    def __init__(
        self, message: str, line: Optional[int] = None, field: Optional[str] = None
    ) -> None:
        """Keep the diagnostics next to the message."""
        self.line = line
        self.field = field
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field '{field}'")
        prefix = f"{', '.join(where)}: " if where else ""
        super().__init__(f"{prefix}{message}")
