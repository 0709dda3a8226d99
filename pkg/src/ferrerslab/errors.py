"""Exception hierarchy.

Everything derived from :class:`DomainError` is a mathematical domain
problem (pole, branch cut, divergent regime, ...) and maps to exit
status 2 in the CLI.
"""


class DomainError(ValueError):
    """Input lies outside the domain of an operation."""


class PoleError(DomainError):
    """Argument sits on (or within tolerance of) a pole of Gamma."""


class ParameterPoleError(PoleError):
    """nu + mu is a negative integer."""


class CPoleError(PoleError):
    """Lower hypergeometric parameter c is a non-positive integer."""


class BranchCutError(DomainError):
    """Point lies on (-inf, -1] or [1, inf)."""


class BranchError(DomainError):
    """2F1 argument lies on the cut [1, inf)."""


class DegenerateConnectionError(DomainError):
    """A connection formula hits a Gamma pole (integer parameter difference)."""


class DivergentRegimeError(DomainError):
    """Hypergeometric series diverges on the unit circle."""


class AtOneError(DomainError):
    """Unit-circle evaluation at w = 1 with Re(c - a - b) <= 0."""


class AsymptoticUndefinedError(DomainError):
    """mu + 1/2 is a non-positive integer, so 1/Gamma(mu + 1/2) = 0."""


class HalfPiError(DomainError):
    """theta = pi/2 where the Dirichlet bound degenerates."""


class NoConvergenceError(DomainError):
    """Oracle series requested outside its convergence region."""


class RepresentationDomainError(DomainError):
    """No oracle representation covers the requested point."""


class ExtrapolationUnstableError(DomainError):
    """Radial-limit extrapolants disagree beyond the requested digits."""


class ParseError(ValueError):
    """Malformed numeric literal on the command line."""

    def __init__(self, text, position, reason="unexpected character"):
        self.text = text
        self.position = position
        super().__init__(f"cannot parse {text!r} at position {position}: {reason}")
