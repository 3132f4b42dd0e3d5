"""Error-controlled step-size adaptation around an error stepper.

Elementary controller: with ``r`` the largest per-element error ratio and
``p`` the order of the propagated solution,

* accept (``r <= 1``): ``dt_next = dt * min(grow_cap, max(shrink_floor, safety * r**(-1/p)))``
* reject (``r > 1``):  ``dt_next = dt * max(shrink_floor, safety * r**(-1/(p-1)))``

A rejected trial is undone by copying back a checkpoint, so the state is
restored bit for bit.
"""

import math
from dataclasses import dataclass
from typing import NamedTuple

from .errors import ContractError, ControllerStallError, StepSizeUnderflowError, UnsupportedError
from .state_algebra import copy_into, elementwise_err_ratio, new_like
from .steppers.base import conforms


@dataclass(frozen=True)
class ControllerConfig:
    atol: float = 1e-6
    rtol: float = 1e-6
    safety: float = 0.9
    shrink_floor: float = 0.2
    grow_cap: float = 5.0
    max_rejects_per_step: int = 50
    dt_min: float = 1e-14

    def __post_init__(self):
        if self.atol < 0 or self.rtol < 0 or (self.atol == 0 and self.rtol == 0):
            raise ContractError("need atol > 0 or rtol > 0, both non-negative")
        if not 0 < self.safety < 1:
            raise ContractError("safety must lie in (0, 1)")
        if not 0 < self.shrink_floor < 1 < self.grow_cap:
            raise ContractError("need 0 < shrink_floor < 1 < grow_cap")
        if not self.dt_min > 0:
            raise ContractError("dt_min must be positive")
        if self.max_rejects_per_step < 1:
            raise ContractError("max_rejects_per_step must be >= 1")


class StepResult(NamedTuple):
    accepted: bool
    dt_taken: float
    dt_next: float
    error_ratio: float


class AdaptiveController:
    """Wraps a stepper providing ``do_step_with_error``."""

    def __init__(self, stepper, config=None):
        if getattr(stepper, "tableau", None) is None or not stepper.tableau.has_error_estimate:
            raise UnsupportedError(f"{stepper!r} is not an error stepper")
        self.stepper = stepper
        self.config = config or ControllerConfig()
        self.rejected = 0
        self._checkpoint = None

    def try_step(self, system, u, t, dt):
        cfg = self.config
        p = self.stepper.order
        if self._checkpoint is None or not conforms(self._checkpoint, u):
            self._checkpoint = new_like(u)
        ckpt = self._checkpoint
        copy_into(ckpt, u)
        err = self.stepper.do_step_with_error(system, u, t, dt)
        ratio = elementwise_err_ratio(err, ckpt, u, cfg.atol, cfg.rtol)

        if ratio <= 1.0:
            if ratio == 0.0:
                factor = cfg.grow_cap
            else:
                factor = min(cfg.grow_cap, max(cfg.shrink_floor, cfg.safety * ratio ** (-1.0 / p)))
            return StepResult(True, dt, dt * factor, ratio)

        copy_into(u, ckpt)
        self.rejected += 1
        if math.isfinite(ratio):
            factor = max(cfg.shrink_floor, cfg.safety * ratio ** (-1.0 / (p - 1)))
        else:
            factor = cfg.shrink_floor
        dt_next = dt * factor
        if abs(dt_next) < cfg.dt_min:
            raise StepSizeUnderflowError(
                f"step size {dt_next!r} fell below dt_min={cfg.dt_min!r} at t={t!r}")
        return StepResult(False, dt, dt_next, ratio)

    def integrate(self, system, u, t0, tf, dt0, observer=None):
        """Advance ``u`` from ``t0`` to exactly ``tf``.

        The last step is shortened to land on ``tf``.  ``observer(u, t)`` is
        called after every accepted step.  Returns the number of accepted
        steps.
        """
        if not tf > t0:
            raise ContractError(f"need tf > t0, got t0={t0!r}, tf={tf!r}")
        if not dt0 > 0:
            raise ContractError(f"need dt0 > 0, got {dt0!r}")
        t, dt, steps = t0, dt0, 0
        while t < tf:
            last = t + dt >= tf
            trial = tf - t if last else dt
            rejects = 0
            while True:
                res = self.try_step(system, u, t, trial)
                if res.accepted:
                    break
                rejects += 1
                if rejects > self.config.max_rejects_per_step:
                    raise ControllerStallError(
                        f"{rejects} consecutive rejections at t={t!r}")
                trial, last = res.dt_next, False
            t = tf if last else t + trial
            steps += 1
            dt = res.dt_next
            if observer is not None:
                observer(u, t)
        return steps


def try_step(stepper, system, u, t, dt, config=None):
    """Single trial step; see :class:`AdaptiveController`."""
    return AdaptiveController(stepper, config).try_step(system, u, t, dt)


def integrate_adaptive(stepper, system, u, t0, tf, dt0, config=None, observer=None):
    """Adaptive integration from ``t0`` to ``tf``; returns accepted steps."""
    return AdaptiveController(stepper, config).integrate(system, u, t0, tf, dt0, observer)
