"""odeflow: explicit ODE steppers over pluggable state algebras.

Steppers only ever touch a state through its algebra (linear combinations,
max-norms, resizing), so the same Runge-Kutta or Adams code advances a flat
:class:`StateVector` or a domain-decomposed :class:`DistributedState`.
"""

from . import models
from .adaptive import (AdaptiveController, ControllerConfig, StepResult, integrate_adaptive,
                       try_step)
from .distributed import DistributedState, GridPartition, decompose, gather_to_root, halo_exchange
from .errors import (ArityError, ContractError, ControllerStallError, DecompositionError,
                     DivergenceError, OdeflowError, StepperStateError, StepSizeUnderflowError,
                     UnsupportedError)
from .state_algebra import (StateVector, copy_into, elementwise_err_ratio, for_each,
                            linear_combination, new_like, norm_inf, resize_like, sum_squares)
from .steppers import StepperKind, bootstrap_multistep, integrate_const, make_stepper

__version__ = "0.1.0"
