class InputError(ValueError):
    """An argument violates an operation's precondition."""


class ConvergenceError(RuntimeError):
    """An iterative routine hit its iteration cap.

    ``residuals`` holds the last measured residual values by name.
    """

    def __init__(self, message, **residuals):
        super().__init__(message)
        self.residuals = residuals
