"""Shared exception types.

Domain errors (bad arguments) raise plain ValueError throughout the package;
numerical failures (non-convergence, step-size underflow, lost brackets)
raise SolverError carrying whatever diagnostic state the caller attached.
"""


class SolverError(RuntimeError):
    """A numerical procedure failed to converge or lost its bracket.

    ``details`` holds diagnostic state (last iterate, residuals, ...).
    """

    def __init__(self, message, **details):
        super().__init__(message)
        self.details = details
