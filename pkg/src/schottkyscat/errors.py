"""Exception and warning types shared across the package."""


class SchottkyScatError(Exception):
    """Base class for all package errors."""


class InvalidElementError(SchottkyScatError):
    """Matrix is not a valid unit-determinant group element."""


class InvalidConfigurationError(SchottkyScatError):
    """Arc configuration is malformed (overlaps, bad pairing, parse errors)."""


class NotSchottkyError(SchottkyScatError):
    """Generators fail the arc mapping condition at a sampled point."""


class NotProperlyDiscontinuousError(SchottkyScatError):
    """A nontrivial word moved a boundary sample by (numerically) zero."""


class DivergenceError(SchottkyScatError):
    """Word-shell sums grow: the spectral parameter is outside the
    convergence region."""


class BracketFailureError(SchottkyScatError):
    """Critical-exponent bisection could not bracket the transition."""


class SingularParameterError(SchottkyScatError):
    """The Fredholm matrix id + R1 is numerically singular (resonance)."""


class NormalizationZeroError(SchottkyScatError):
    """The c-function used to normalize an intertwiner vanishes."""


class BadPointError(SchottkyScatError):
    """Operation hit a pole tied to an integral spectral parameter."""


class DomainMismatchError(SchottkyScatError):
    """Sections live on incompatible domains or at incompatible weights."""


class UndefinedResidualError(SchottkyScatError):
    """PDE residual undefined because the value at the stencil center is
    numerically zero."""


class UnsupportedRankError(SchottkyScatError):
    """Rank tag outside {2, 3}."""


class BadPointWarning(UserWarning):
    """Emitted when a continuation is evaluated at a bad (integral)
    parameter where normalizations may degenerate."""
