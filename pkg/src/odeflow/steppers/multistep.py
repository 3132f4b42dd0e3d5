"""Adams-Bashforth and Adams-Bashforth-Moulton multistep methods."""

from fractions import Fraction
from math import factorial

from ..errors import ContractError, StepperStateError
from ..state_algebra import copy_into, linear_combination, new_like
from .base import ExplicitRungeKutta, Stepper
from .tableaux import FEHLBERG78

MAX_STEPS = 8


def _poly_mul(p, q):
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return out


def _adams_coefficients(steps, shift):
    """Integrate the Lagrange basis over one step.

    ``shift = 0`` gives Adams-Bashforth weights for ``f_n, f_{n-1}, ...``;
    ``shift = 1`` gives Adams-Moulton weights for ``f_{n+1}, f_n, ...``.
    """
    weights = []
    for j in range(steps):
        poly = [Fraction(1)]
        for i in range(steps):
            if i != j:
                poly = _poly_mul(poly, [Fraction(i - shift), Fraction(1)])
        integral = sum(c / (p + 1) for p, c in enumerate(poly))
        weights.append(Fraction((-1) ** j, factorial(j) * factorial(steps - 1 - j)) * integral)
    return tuple(weights)


def adams_bashforth_coefficients(steps):
    return _adams_coefficients(steps, 0)


def adams_moulton_coefficients(steps):
    return _adams_coefficients(steps, 1)


class AdamsBashforth(Stepper):
    """Explicit ``k``-step Adams-Bashforth method of order ``k``.

    The history holds ``F`` at the current and the ``k - 1`` previous step
    times, newest last.  Until it is full, :meth:`step` advances with
    Runge-Kutta-Fehlberg 7(8) and records ``F`` after each startup step;
    :meth:`do_step` refuses to run on an incomplete history.
    """

    def __init__(self, steps):
        if not 1 <= steps <= MAX_STEPS:
            raise ContractError(f"steps must be in 1..{MAX_STEPS}, got {steps}")
        self.steps = steps
        self.order = steps
        self.name = f"ab{steps}"
        self.beta = tuple(float(b) for b in adams_bashforth_coefficients(steps))
        self.initializer = ExplicitRungeKutta(FEHLBERG78)
        self.reset()

    def reset(self):
        self._history = []
        self.dt = None

    @property
    def primed(self):
        return self.steps == 1 or len(self._history) == self.steps

    @property
    def history(self):
        return list(self._history)

    def prime(self, values, dt):
        """Load ``F`` values (oldest first) as if produced by a startup run."""
        values = list(values)
        expected = self.steps if self.steps > 1 else 0
        if len(values) != expected:
            raise ContractError(f"{self.name} needs {self.steps} history values")
        self.reset()
        for v in values:
            buf = new_like(v)
            copy_into(buf, v)
            self._history.append(buf)
        self.dt = dt

    def _push(self, system, u, t):
        # the oldest slope is dead once the step using it has been taken
        if len(self._history) == self.steps:
            buf = self._history.pop(0)
        else:
            buf = new_like(u)
        system(t, u, buf)
        self._history.append(buf)

    def _check_dt(self, dt):
        if self.dt is None:
            self.dt = dt
        elif dt != self.dt:
            raise ContractError(
                f"{self.name} runs at fixed dt={self.dt!r}; got {dt!r} (call reset())")

    def startup_step(self, system, u, t, dt):
        """One fixed Fehlberg 7(8) step that extends the history."""
        self._check_dt(dt)
        if not self._history:
            self._push(system, u, t)
        self.initializer.do_step(system, u, t, dt)
        self._push(system, u, t + dt)
        return u

    def step(self, system, u, t, dt):
        if self.primed:
            return self.do_step(system, u, t, dt)
        return self.startup_step(system, u, t, dt)

    def _current_slopes(self, system, u, t):
        """History newest first; for one step this is just ``F(t, u)``."""
        if self.steps == 1:
            f = self._temporary("_f", u)
            system(t, u, f)
            return [f]
        return self._history[::-1]

    def _advance_history(self, system, u, t):
        if self.steps > 1:
            self._push(system, u, t)

    def do_step(self, system, u, t, dt):
        if not self.primed:
            raise StepperStateError(
                f"{self.name} history holds {len(self._history)} of {self.steps} values")
        self._check_dt(dt)
        slopes = self._current_slopes(system, u, t)
        linear_combination(u, [(1.0, u)] + [(dt * b, f) for b, f in zip(self.beta, slopes)])
        self._check(u, t + dt)
        self._advance_history(system, u, t + dt)
        return u


class AdamsBashforthMoulton(AdamsBashforth):
    """``k``-step predictor-corrector in PECE mode.

    Adams-Bashforth predicts, ``F`` is evaluated at the prediction, one
    Adams-Moulton correction follows and ``F`` is evaluated again for the
    history.  No corrector iteration.
    """

    def __init__(self, steps):
        super().__init__(steps)
        self.name = f"abm{steps}"
        self.beta_corrector = tuple(float(b) for b in adams_moulton_coefficients(steps))

    def do_step(self, system, u, t, dt):
        if not self.primed:
            raise StepperStateError(
                f"{self.name} history holds {len(self._history)} of {self.steps} values")
        self._check_dt(dt)
        slopes = self._current_slopes(system, u, t)
        pred = self._temporary("_pred", u)
        linear_combination(pred, [(1.0, u)] + [(dt * b, f) for b, f in zip(self.beta, slopes)])
        fp = self._temporary("_fp", u)
        system(t + dt, pred, fp)
        bc = self.beta_corrector
        terms = [(1.0, u), (dt * bc[0], fp)]
        terms += [(dt * b, f) for b, f in zip(bc[1:], slopes)]
        linear_combination(u, terms)
        self._check(u, t + dt)
        self._advance_history(system, u, t + dt)
        return u


def bootstrap_multistep(stepper, system, u, t0, dt):
    """Run the ``k - 1`` startup steps of a multistep stepper.

    Returns the number of steps taken; ``u`` ends at ``t0 + (k-1)*dt``.
    """
    stepper.reset()
    taken = 0
    while not stepper.primed:
        stepper.startup_step(system, u, t0 + taken * dt, dt)
        taken += 1
    return taken
