"""Exception types shared across the package."""


class DopplerSeqError(Exception):
    """Base class for all package-specific errors."""


class InvalidInputError(DopplerSeqError):
    """An argument violates a documented precondition or type invariant."""


class ConfigError(DopplerSeqError):
    """A run configuration file is malformed or inconsistent."""


class BracketError(InvalidInputError):
    """Root bracketing failed: f(lo) and f(hi) do not straddle zero."""


class DegenerateInputError(InvalidInputError):
    """Input carries no usable information (e.g. an all-zero vector)."""


class NumericalError(DopplerSeqError):
    """A computation produced non-finite values or otherwise broke down."""


class InfeasibleProblemError(DopplerSeqError):
    """A conic subproblem was certified (or strongly suspected) infeasible."""


class RankOneExtractionError(DopplerSeqError):
    """Alternating minimization did not converge to a rank-one matrix."""

    def __init__(self, message: str, sigma_ratio: float):
        super().__init__(message)
        self.sigma_ratio = sigma_ratio
