"""Symplectic steppers for separable Hamiltonians.

The state stacks ``m`` coordinate components followed by ``m`` momentum
components.  The force callable has the system signature but sees only the
coordinates: ``force(t, q, out)`` writes ``-dV/dq`` into ``out``.
"""

from ..errors import ContractError
from ..state_algebra import linear_combination
from .base import Stepper


class _Symplectic(Stepper):

    def _split(self, qp):
        c = qp.component_count
        if c % 2:
            raise ContractError(
                f"symplectic state needs an even component count, got {c}")
        m = c // 2
        return qp.view(slice(0, m)), qp.view(slice(m, c))


class SymplecticEuler(_Symplectic):
    """Kick with the current force, then drift with the new momentum."""

    name = "symplectic_euler"
    order = 1

    def do_step(self, force, qp, t, dt):
        q, p = self._split(qp)
        a = self._temporary("_a", q)
        force(t, q, a)
        linear_combination(p, [(1.0, p), (dt, a)])
        linear_combination(q, [(1.0, q), (dt, p)])
        self._check(qp, t + dt)
        return qp


class VelocityVerlet(_Symplectic):
    """Half kick, drift, half kick."""

    name = "velocity_verlet"
    order = 2

    def do_step(self, force, qp, t, dt):
        q, p = self._split(qp)
        a = self._temporary("_a", q)
        half = 0.5 * dt
        force(t, q, a)
        linear_combination(p, [(1.0, p), (half, a)])
        linear_combination(q, [(1.0, q), (dt, p)])
        force(t + dt, q, a)
        linear_combination(p, [(1.0, p), (half, a)])
        self._check(qp, t + dt)
        return qp
