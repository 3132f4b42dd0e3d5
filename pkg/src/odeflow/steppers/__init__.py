"""Explicit steppers written against the state algebra.

Use :func:`make_stepper` to build one from a name such as ``"rk4"``,
``"dopri5"``, ``"ab4"`` or ``"abm8"``.
"""

import enum
import re

from ..errors import ContractError
from . import tableaux
from .base import ExplicitRungeKutta, Stepper
from .integrate import integrate_const
from .multistep import (AdamsBashforth, AdamsBashforthMoulton, adams_bashforth_coefficients,
                        adams_moulton_coefficients, bootstrap_multistep)
from .symplectic import SymplecticEuler, VelocityVerlet
from .tableaux import ButcherTableau


class StepperKind(enum.Enum):
    EXPLICIT_EULER = "euler"
    MODIFIED_MIDPOINT = "midpoint"
    RK4 = "rk4"
    CASH_KARP54 = "cash_karp54"
    DOPRI5 = "dopri5"
    FEHLBERG78 = "fehlberg78"
    ADAMS_BASHFORTH = "ab"
    ADAMS_BASHFORTH_MOULTON = "abm"
    SYMPLECTIC_EULER = "symplectic_euler"
    VELOCITY_VERLET = "velocity_verlet"


ONE_STEP = ("euler", "midpoint", "rk4", "cash_karp54", "dopri5", "fehlberg78")
ERROR_STEPPERS = ("cash_karp54", "dopri5", "fehlberg78")
MULTISTEP = tuple(f"ab{k}" for k in range(1, 9)) + tuple(f"abm{k}" for k in range(1, 9))

_ALIASES = {"rkck54": "cash_karp54", "cash_karp": "cash_karp54", "rkf78": "fehlberg78",
            "explicit_euler": "euler", "modified_midpoint": "midpoint",
            "verlet": "velocity_verlet"}


def make_stepper(kind, steps=None):
    """Build a fresh stepper.

    ``kind`` is a :class:`StepperKind` (multistep kinds need ``steps``) or a
    name; multistep names carry the step count, e.g. ``"abm5"``.
    """
    if isinstance(kind, StepperKind):
        name = kind.value
        if steps is not None:
            name = f"{name}{steps}"
    else:
        name = _ALIASES.get(kind.lower(), kind.lower())
    m = re.fullmatch(r"(abm|ab)(\d+)", name)
    if m:
        cls = AdamsBashforthMoulton if m.group(1) == "abm" else AdamsBashforth
        return cls(int(m.group(2)))
    if name in tableaux.ALL:
        return ExplicitRungeKutta(tableaux.ALL[name])
    if name == "symplectic_euler":
        return SymplecticEuler()
    if name == "velocity_verlet":
        return VelocityVerlet()
    raise ContractError(f"unknown stepper {kind!r}")


def do_step(kind, system, u, t, dt):
    """One-shot convenience: build a stepper and take a single step."""
    return make_stepper(kind).do_step(system, u, t, dt)


__all__ = [
    "AdamsBashforth",
    "AdamsBashforthMoulton",
    "ButcherTableau",
    "ERROR_STEPPERS",
    "ExplicitRungeKutta",
    "MULTISTEP",
    "ONE_STEP",
    "Stepper",
    "StepperKind",
    "SymplecticEuler",
    "VelocityVerlet",
    "adams_bashforth_coefficients",
    "adams_moulton_coefficients",
    "bootstrap_multistep",
    "do_step",
    "integrate_const",
    "make_stepper",
    "tableaux",
]
