"""Experiment drivers: convergence sweeps, Gray-Scott runs, strong scaling.

Error norms for the convergence sweeps are taken over the whole
trajectory: ``l_inf`` is the largest absolute error over every grid point
and every step, ``l_2`` the square root of the sum of squared errors over
the same set.
"""

import csv
import math
import os
import time
from dataclasses import dataclass, field

import numpy as np

from .. import models
from ..adaptive import ControllerConfig, integrate_adaptive
from ..distributed import decompose, gather_to_root
from ..errors import ContractError, DivergenceError
from ..steppers import ERROR_STEPPERS, integrate_const, make_stepper
from .vtk import write_vtk

CONVERGENCE_HEADER = ("stepper", "dt", "steps", "l_inf", "l_2", "seconds")
TIMING_HEADER = ("workers", "run", "seconds")

ONE_STEP_SWEEP = (0.5, 0.25, 0.125, 0.0625, 0.03125)
MULTISTEP_SWEEP = (2.0 ** -4, 2.0 ** -5, 2.0 ** -6, 2.0 ** -7)
ROUNDOFF_FLOOR = 1e-13


@dataclass
class ConvergenceRecord:
    stepper: str
    dt: float
    steps: int
    l_inf: float
    l_2: float
    seconds: float

    @property
    def finite(self):
        return math.isfinite(self.l_inf) and math.isfinite(self.l_2)


@dataclass
class Problem:
    """Initial state, exact solution and right-hand side on one partition."""

    name: str
    partition: object
    system: object
    exact: object  # exact(t) -> state

    def initial(self, t0):
        return self.exact(t0)


def make_problem(name, dims=None, workers=1):
    """``"exp"`` (exponential family) or ``"sig"`` (sigmoid)."""
    if name in ("exp", "exponential"):
        n = (dims or (16,))[0]
        part = models.exponential_partition(n, workers)
        return Problem("exp", part, models.ExponentialSystem(),
                       lambda t: models.exponential_exact(t, part))
    if name in ("sig", "sigmoid"):
        n = (dims or (1,))[0]
        part = models.sigmoid_partition(n, workers)
        return Problem("sig", part, models.SigmoidSystem(),
                       lambda t: models.sigmoid_state(t, part))
    raise ContractError(f"unknown problem {name!r}")


class _TrajectoryError:
    """Observer accumulating trajectory norms; keeps its own clock."""

    def __init__(self, problem):
        self.problem = problem
        self.l_inf = 0.0
        self.sq = 0.0
        self.seconds = 0.0

    def __call__(self, u, t):
        start = time.perf_counter()
        a, b = models.error_norms(u, self.problem.exact(t))
        self.l_inf = max(self.l_inf, a) if math.isfinite(a) else math.nan
        self.sq += b * b
        self.seconds += time.perf_counter() - start


def convergence_case(problem, stepper_name, dt, t0=models.T0, tf=models.TF, config=None):
    """Integrate one problem at one ``dt`` and return a :class:`ConvergenceRecord`.

    With ``config`` the stepper runs under the adaptive controller and
    ``dt`` is only the first trial step; ``steps`` then counts accepted
    steps.
    """
    stepper = make_stepper(stepper_name)
    u = problem.initial(t0)
    obs = _TrajectoryError(problem)
    start = time.perf_counter()
    try:
        if config is not None:
            steps = integrate_adaptive(stepper, problem.system, u, t0, tf, dt, config, obs)
        else:
            def after_previous_step(v, t):
                if t > t0:
                    obs(v, t)

            steps = integrate_const(stepper, problem.system, u, t0, tf, dt, after_previous_step)
            obs(u, tf)
    except DivergenceError:
        steps, obs.l_inf, obs.sq = round((tf - t0) / dt), math.nan, math.nan
    seconds = time.perf_counter() - start - obs.seconds
    return ConvergenceRecord(stepper.name, dt, steps, obs.l_inf, math.sqrt(obs.sq), seconds)


def run_convergence(problem, steppers, dts, t0=models.T0, tf=models.TF, config=None):
    """Sweep every stepper over every ``dt``; returns ``(records, orders)``.

    ``orders`` maps stepper name to the fitted order, i.e. minus the
    least-squares slope of ``log(l_inf)`` against ``log(steps)``.
    """
    dts = list(dts)
    if any(b >= a for a, b in zip(dts, dts[1:])):
        raise ContractError("dt sweep must be strictly decreasing")
    records, orders = [], {}
    for name in steppers:
        recs = [convergence_case(problem, name, dt, t0, tf, config) for dt in dts]
        records += recs
        orders[recs[0].stepper] = fitted_order(recs)
    return records, orders


def fitted_order(records, floor=ROUNDOFF_FLOOR):
    """Minus the log-log slope of l_inf versus steps, ignoring points below ``floor``.

    Returns NaN when fewer than two usable points remain.
    """
    pts = [(r.steps, r.l_inf) for r in records if r.finite and r.l_inf > floor]
    if len(pts) < 2:
        return math.nan
    x = np.log([p[0] for p in pts])
    y = np.log([p[1] for p in pts])
    slope = np.polyfit(x, y, 1)[0]
    return float(-slope)


def write_convergence_csv(path, records):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(CONVERGENCE_HEADER)
        for r in records:
            w.writerow([r.stepper, repr(r.dt), r.steps, repr(r.l_inf), repr(r.l_2),
                        repr(r.seconds)])


def read_convergence_csv(path):
    with open(path, newline="") as fh:
        rows = list(csv.DictReader(fh))
    return [ConvergenceRecord(r["stepper"], float(r["dt"]), int(r["steps"]), float(r["l_inf"]),
                              float(r["l_2"]), float(r["seconds"])) for r in rows]


# -- Gray-Scott -------------------------------------------------------------------------

@dataclass
class GrayScottSummary:
    steps: int
    seconds: float
    step_seconds: list = field(repr=False)
    field_min: tuple = ()
    field_max: tuple = ()
    c1_variance: float = 0.0
    snapshots: list = field(default_factory=list)
    state: object = field(default=None, repr=False)


def run_grayscott(n=32, workers=1, stepper="rk4", dt=1.0, t0=0.0, tf=20.0, seed=0,
                  out=None, snapshot_every=0, dims=None, system=None):
    """Integrate Gray-Scott on a periodic cube and summarise the final field.

    Snapshots ``snapshot_t<step>.vtk`` are written to ``out`` every
    ``snapshot_every`` steps and at the end (0 disables them).
    A divergence raises :class:`DivergenceError` carrying the failing time.
    """
    if dims is None:
        part = models.grayscott_partition(n, workers)
    else:
        dims = tuple(dims) + (dims[-1],) * (3 - len(dims))
        part = decompose(dims, workers=workers, ghost_width=1, periodic=True,
                         box=tuple((0.0, 2.5) for _ in dims))
    u = models.grayscott_init(part, seed)
    system = system or models.GrayScottSystem()
    st = make_stepper(stepper)
    nsteps = round((tf - t0) / dt)
    origin = tuple(lo for lo, _ in part.box)
    snapshots = []

    def snap(step):
        if out is None or not snapshot_every:
            return
        path = os.path.join(out, f"snapshot_t{step}.vtk")
        write_vtk(path, gather_to_root(u), origin, part.spacing,
                  title=f"gray-scott step {step} t={t0 + step * dt!r}")
        snapshots.append(path)

    per_step = []
    if out is not None and snapshot_every:
        os.makedirs(out, exist_ok=True)
    snap(0)
    for i in range(nsteps):
        start = time.perf_counter()
        st.step(system, u, t0 + i * dt, dt)
        per_step.append(time.perf_counter() - start)
        if snapshot_every and (i + 1) % snapshot_every == 0 and i + 1 != nsteps:
            snap(i + 1)
    if nsteps:
        snap(nsteps)
    g = gather_to_root(u)
    return GrayScottSummary(nsteps, float(sum(per_step)), per_step,
                            tuple(float(c.min()) for c in g), tuple(float(c.max()) for c in g),
                            float(g[1].var()), snapshots, u)


# -- strong scaling ---------------------------------------------------------------------

def run_scale(worker_counts, experiment="exp", n=128, stepper="rk4", dt=0.0625, t0=models.T0,
              tf=models.TF, repeats=3, out=None, seed=0):
    """Time the same run for each worker count ``repeats`` times.

    Returns ``(rows, summary)``: ``rows`` are ``(workers, run, seconds)``
    and ``summary`` maps ``W`` to ``(mean_seconds, efficiency)`` with
    efficiency ``T(1) / (W T(W))`` relative to the smallest ``W``.
    """
    rows = []
    for W in worker_counts:
        for run in range(repeats):
            if experiment == "grayscott":
                seconds = run_grayscott(n, W, stepper, dt, t0, tf, seed).seconds
            else:
                problem = make_problem(experiment, (n,), W)
                st = make_stepper(stepper)
                u = problem.initial(t0)
                start = time.perf_counter()
                integrate_const(st, problem.system, u, t0, tf, dt)
                seconds = time.perf_counter() - start
            rows.append((W, run, seconds))
    means = {W: float(np.mean([s for w, _, s in rows if w == W])) for W in worker_counts}
    base_w = min(worker_counts)
    base = means[base_w] * base_w
    summary = {W: (means[W], base / (W * means[W])) for W in worker_counts}
    if out is not None:
        with open(os.path.join(out, "timing.csv"), "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(TIMING_HEADER)
            for W, run, s in rows:
                w.writerow([W, run, repr(s)])
    return rows, summary


def expected_order(stepper_name):
    return make_stepper(stepper_name).order


def default_config(atol=None, rtol=None):
    if atol is None and rtol is None:
        return None
    return ControllerConfig(atol=1e-6 if atol is None else atol,
                            rtol=1e-6 if rtol is None else rtol)


__all__ = [
    "CONVERGENCE_HEADER",
    "ConvergenceRecord",
    "ERROR_STEPPERS",
    "GrayScottSummary",
    "MULTISTEP_SWEEP",
    "ONE_STEP_SWEEP",
    "TIMING_HEADER",
    "convergence_case",
    "fitted_order",
    "make_problem",
    "read_convergence_csv",
    "run_convergence",
    "run_grayscott",
    "run_scale",
    "write_convergence_csv",
]
