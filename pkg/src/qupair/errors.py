"""Exception types shared across the package."""


class QupairError(Exception):
    """Base class for all errors raised by this package."""


class InvalidParameters(QupairError, ValueError):
    """Model parameters are rejected (negative, NaN or infinite rates)."""


class NonUniqueSteadyState(QupairError):
    """The generator has more than one stationary state (rank below 15)."""


class NotPositive(QupairError):
    """A computed density matrix has an eigenvalue below -1e-9.

    This signals a solver failure; it is never a valid model output.
    """


class InvalidObservables(QupairError):
    """Observables do not reconstruct a physical block density matrix."""


class NotBlockForm(QupairError):
    """A density matrix has entries outside the allowed block pattern."""


class DeltaOutOfRange(QupairError):
    """A correlator value lies outside the domain of the requested curve."""


class DegenerateRates(QupairError):
    """A closed form requires both total rates to be strictly positive."""


class UsageError(QupairError):
    """Bad command line or config input. The CLI exits with status 2."""
