"""Stepper base class and the explicit Runge-Kutta family."""

import math

from ..errors import ArityError, DivergenceError, UnsupportedError
from ..state_algebra import MAX_INPUTS, linear_combination, new_like, norm_inf


class Stepper:
    """Common interface of all steppers.

    A system is any callable ``system(t, u, dudt)`` writing ``F(t, u)`` into
    the pre-sized state ``dudt``.  Steppers update ``u`` in place and keep
    their temporaries between calls, so one instance serves one trajectory
    at a time.
    """

    name = "stepper"
    order = None
    check_finite = True

    def do_step(self, system, u, t, dt):
        raise NotImplementedError

    def step(self, system, u, t, dt):
        """Advance one step; multistep methods use this to run their startup."""
        return self.do_step(system, u, t, dt)

    def _temporary(self, attr, model):
        tmp = getattr(self, attr, None)
        if tmp is None or not conforms(tmp, model):
            tmp = new_like(model)
            setattr(self, attr, tmp)
        return tmp

    def _check(self, u, t):
        if self.check_finite and not math.isfinite(norm_inf(u)):
            raise DivergenceError(t)

    def __repr__(self):
        return f"{type(self).__name__}({self.name!r})"


def conforms(a, b):
    if type(a) is not type(b) or a.component_count != b.component_count:
        return False
    if a.size != b.size:
        return False
    return getattr(a, "partition", None) == getattr(b, "partition", None)


class ExplicitRungeKutta(Stepper):
    """Generic explicit Runge-Kutta stepper driven by a Butcher tableau.

    Stage states are ``u + sum(dt*a_ij * k_j)`` and the update is
    ``u + sum(dt*b_i * k_i)``, each evaluated as one linear combination with
    ``u`` first and zero coefficients skipped.
    """

    def __init__(self, tableau):
        if tableau.stages + 1 > MAX_INPUTS:
            raise ArityError(
                f"{tableau.name} has {tableau.stages} stages; the algebra supports "
                f"at most {MAX_INPUTS - 1}")
        self.tableau = tableau
        self.name = tableau.name
        self.order = tableau.order
        self.error_order = tableau.order_err
        self._k = None

    def _stages(self, system, u, t, dt):
        fl = self.tableau.floats
        s = self.tableau.stages
        if self._k is None or not conforms(self._k[0], u):
            self._k = [new_like(u) for _ in range(s)]
        k = self._k
        x = self._temporary("_x", u) if s > 1 else None
        for i in range(s):
            terms = [(dt * a, k[j]) for j, a in enumerate(fl["a"][i]) if a != 0.0]
            if terms:
                linear_combination(x, [(1.0, u)] + terms)
                system(t + fl["c"][i] * dt, x, k[i])
            else:
                system(t + fl["c"][i] * dt, u, k[i])
        return k

    def _update(self, u, k, dt):
        fl = self.tableau.floats
        terms = [(dt * b, k[i]) for i, b in enumerate(fl["b"]) if b != 0.0]
        linear_combination(u, [(1.0, u)] + terms)

    def do_step(self, system, u, t, dt):
        k = self._stages(system, u, t, dt)
        self._update(u, k, dt)
        self._check(u, t + dt)
        return u

    def do_step_with_error(self, system, u, t, dt):
        """Advance ``u`` and return the embedded error estimate.

        The estimate is ``dt * sum((b_i - b_err_i) * k_i)``; it lives in a
        buffer owned by the stepper and is overwritten by the next call.
        """
        if not self.tableau.has_error_estimate:
            raise UnsupportedError(f"{self.name} has no embedded error weights")
        k = self._stages(system, u, t, dt)
        self._update(u, k, dt)
        err = self._temporary("_err", u)
        terms = [(dt * e, k[i]) for i, e in enumerate(self.tableau.floats["e"]) if e != 0.0]
        linear_combination(err, terms)
        return err
