"""Exception types shared across the package."""


class TFLocalError(Exception):
    """Base class for all numerical and contract errors raised by tflocal."""


class NonConvergence(TFLocalError):
    """Quadrature did not reach its target tolerance at maximum refinement."""

    def __init__(self, message, err_estimate=None):
        super().__init__(message)
        self.err_estimate = err_estimate


class SolverFailure(TFLocalError):
    pass


class TruncationRisk(TFLocalError):
    """A probe or basis index sits too close to the truncation edge."""


class DegenerateSpectrum(TFLocalError):
    pass


class OutOfRange(TFLocalError, ValueError):
    pass


class FitFailure(TFLocalError):
    pass


class GridTooCoarse(TFLocalError, ValueError):
    pass


class ZeroSignal(TFLocalError, ValueError):
    pass


class RootNotBracketed(TFLocalError):
    pass
