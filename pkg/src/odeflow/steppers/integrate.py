"""Fixed-step integration driver."""

from ..errors import ContractError


def integrate_const(stepper, system, u, t0, tf, dt, observer=None):
    """Take ``round((tf - t0) / dt)`` steps of size ``dt``.

    Step ``i`` starts at ``t0 + i*dt`` (no accumulated time drift).  The
    observer, if any, is called as ``observer(u, t)`` before every step.
    Multistep steppers run their startup steps first; those count as steps.

    Returns the number of steps taken.
    """
    if not tf > t0:
        raise ContractError(f"need tf > t0, got t0={t0!r}, tf={tf!r}")
    if not dt > 0:
        raise ContractError(f"need dt > 0, got {dt!r}")
    n = round((tf - t0) / dt)
    for i in range(n):
        t = t0 + i * dt
        if observer is not None:
            observer(u, t)
        stepper.step(system, u, t, dt)
    return n
