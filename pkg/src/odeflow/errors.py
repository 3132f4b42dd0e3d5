"""Exception hierarchy shared across odeflow."""


class OdeflowError(Exception):
    """Base class for all errors raised by odeflow."""


class ContractError(OdeflowError, ValueError):
    """An operation was called with arguments violating its preconditions."""


class ArityError(ContractError):
    """A linear combination requested an unsupported number of inputs."""


class UnsupportedError(OdeflowError):
    """The stepper does not provide the requested capability."""


class StepperStateError(OdeflowError, RuntimeError):
    """A multistep stepper was used before its history was primed."""


class DivergenceError(OdeflowError, FloatingPointError):
    """A step produced non-finite values.

    The time at which the non-finite state was detected is stored in ``t``.
    """

    def __init__(self, t, message=None):
        self.t = t
        super().__init__(message or f"non-finite state produced at t={t!r}")


class StepSizeUnderflowError(OdeflowError, RuntimeError):
    """The adaptive controller shrank the step below ``dt_min``."""


class ControllerStallError(OdeflowError, RuntimeError):
    """Too many consecutive rejections for a single step."""


class DecompositionError(ContractError):
    """The grid cannot be split among the requested number of workers."""
