"""Exception types shared across the solver."""


class SolverBreakdownError(RuntimeError):
    """A state left the physically valid region (positive density/pressure).

    Carries the flat/grid index of the first offending cell and, when known,
    the simulation time. This is the single error the run loop converts into
    a failure record and a breakdown exit status.
    """

    def __init__(self, message, index=None, time=None):
        super().__init__(message)
        self.index = index
        self.time = time


class NegativeDensityError(SolverBreakdownError):
    pass


class NegativePressureError(SolverBreakdownError):
    pass


class DegenerateHistoryError(ValueError):
    """Multistep history contains repeated or non-monotone times."""


class InvalidDimensionsError(ValueError):
    """Grid construction asked for non-positive cell counts or bad extents."""


class ConfigError(ValueError):
    """Unknown or invalid configuration key, value, or section."""
