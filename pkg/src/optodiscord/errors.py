"""Exception hierarchy shared by the numerical kernels and the sweep driver."""


class OptoDiscordError(Exception):
    """Base class for every error raised by this package."""


class ParameterError(OptoDiscordError, ValueError):
    """A physical parameter violates its invariant."""


# linear algebra

class DimensionMismatch(OptoDiscordError, ValueError):
    pass


class DimensionTooLarge(OptoDiscordError, ValueError):
    pass


class UnstableDrift(OptoDiscordError):
    """The drift matrix has an eigenvalue with non-negative real part."""

    def __init__(self, abscissa, message=None):
        self.abscissa = abscissa
        super().__init__(message or f"drift matrix is not Hurwitz (spectral abscissa {abscissa:.6g})")


class SingularSystem(OptoDiscordError):
    pass


class NoConvergence(OptoDiscordError):
    pass


# Gaussian states

class InvalidBlockId(OptoDiscordError, ValueError):
    pass


class ComplexEigenvalue(OptoDiscordError):
    """Symplectic eigenvalue radicand is negative beyond round-off."""


class NegativeRadicand(OptoDiscordError):
    pass


class DomainError(OptoDiscordError, ValueError):
    pass


# stability

class DegenerateArray(OptoDiscordError):
    """An entire Routh row vanished (roots symmetric about the origin)."""


# configuration

class ParseError(OptoDiscordError):
    def __init__(self, message, line=None):
        self.line = line
        where = f"line {line}: " if line is not None else ""
        super().__init__(where + message)


class ValidationError(OptoDiscordError, ValueError):
    def __init__(self, field, message):
        self.field = field
        super().__init__(f"{field}: {message}")
