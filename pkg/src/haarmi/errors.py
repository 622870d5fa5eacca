"""Exception types shared across the package.

Every failure mode that callers are expected to handle gets its own class so
that the command-line driver can map it to a stable exit code.
"""


class HaarMIError(Exception):
    """Base class for all package-specific errors."""


class InvalidDimensionError(HaarMIError, ValueError):
    """A subsystem dimension is not a positive integer, or a product overflows
    a configured cap."""


class DomainError(HaarMIError, ValueError):
    """An argument lies outside the mathematical domain of a function
    (e.g. a non-positive point for the digamma function, an even index
    where an odd one is required)."""


class RegimeError(HaarMIError, ValueError):
    """An operation that requires the factorised regime (d_A * d_B <= d_E)
    was invoked on swapped-regime dimensions."""


class DegeneratePoleError(HaarMIError, ValueError):
    """The four-pole partial-fraction form is requested for dimensions whose
    poles coincide (d_A == d_B, or a dimension equals 1)."""


class NonConvergenceError(HaarMIError, ArithmeticError):
    """An adaptive quadrature failed to reach the requested tolerance within
    its evaluation budget."""


class SeriesOverflowError(HaarMIError, OverflowError):
    """A term of the asymptotic series produced a non-finite intermediate.

    Attributes:
        k: 1-based index of the offending term.
    """

    def __init__(self, message: str, k: int):
        super().__init__(message)
        self.k = k


class NumericalValidityError(HaarMIError, ArithmeticError):
    """A numerical sanity invariant was violated (e.g. a reduced density
    matrix produced an eigenvalue below -1e-10, or two supposedly identical
    evaluation routes drifted apart)."""


class OracleWorkerError(HaarMIError, RuntimeError):
    """A Monte Carlo worker raised; the run is aborted and partial results
    are discarded."""
