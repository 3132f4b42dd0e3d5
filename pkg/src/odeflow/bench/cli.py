"""``odeflow`` command: desk-scale versions of the benchmark experiments.

Examples
--------
::

    odeflow converge-sig --stepper rk4,dopri5 --assert-order
    odeflow converge-ab --problem exp --stepper ab4 --out results/
    odeflow grayscott --dims 32 --tf 200 --snapshot-every 50 --out snaps/
    odeflow scale --workers 1,2,4 --dims 128
"""

import argparse
import math
import os
import sys

from .. import models
from ..errors import OdeflowError
from . import runner

EXPERIMENTS = ("converge-exp", "converge-sig", "converge-ab", "grayscott", "scale")
DEFAULT_STEPPERS = {
    "converge-exp": "rk4,cash_karp54,dopri5,fehlberg78",
    "converge-sig": "rk4,cash_karp54,dopri5,fehlberg78",
    "converge-ab": ",".join([f"ab{k}" for k in range(1, 9)] + [f"abm{k}" for k in range(1, 9)]),
    "grayscott": "rk4",
    "scale": "rk4",
}
DEFAULT_DIMS = {"converge-exp": 16, "converge-sig": 1, "converge-ab": None,
                "grayscott": 32, "scale": 128}


def _floats(text):
    return [float(v) for v in text.split(",") if v]


def _ints(text):
    return [int(v) for v in text.split(",") if v]


def build_parser():
    p = argparse.ArgumentParser(prog="odeflow", description=__doc__.splitlines()[0])
    p.add_argument("experiment", choices=EXPERIMENTS)
    p.add_argument("--stepper", help="stepper name or comma list")
    p.add_argument("--workers", type=_ints,
                   help="worker count (comma list for 'scale'); falls back to $ODEFLOW_WORKERS")
    p.add_argument("--dims", type=_ints, help="NX[,NY[,NZ]]")
    p.add_argument("--dt", type=_floats, help="step size, or a decreasing comma list")
    p.add_argument("--t0", type=float)
    p.add_argument("--tf", type=float)
    p.add_argument("--atol", type=float, help="run error steppers adaptively")
    p.add_argument("--rtol", type=float)
    p.add_argument("--out", default=".", help="output directory")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--assert-order", action="store_true",
                   help="fail unless every fitted order is within tolerance of the nominal one")
    p.add_argument("--problem", choices=("exp", "sig"), default="exp",
                   help="benchmark problem for converge-ab")
    p.add_argument("--snapshot-every", type=int, default=0, help="grayscott snapshot interval")
    p.add_argument("--repeats", type=int, default=3, help="runs per worker count for scale")
    p.add_argument("--scale-experiment", choices=("exp", "sig", "grayscott"), default="exp")
    return p


def order_tolerance(order):
    return max(0.5, 0.1 * order)


def _workers(args):
    if args.workers:
        return args.workers
    env = os.environ.get("ODEFLOW_WORKERS")
    return _ints(env) if env else [1]


def _converge(args, out):
    exp = args.experiment
    problem_name = {"converge-exp": "exp", "converge-sig": "sig"}.get(exp, args.problem)
    dims = args.dims or ([DEFAULT_DIMS[exp]] if DEFAULT_DIMS[exp] else None)
    if exp == "converge-ab" and dims is None:
        dims = [16] if problem_name == "exp" else [1]
    problem = runner.make_problem(problem_name, dims, _workers(args)[0])
    steppers = (args.stepper or DEFAULT_STEPPERS[exp]).split(",")
    dts = args.dt or (runner.MULTISTEP_SWEEP if exp == "converge-ab" else runner.ONE_STEP_SWEEP)
    t0 = models.T0 if args.t0 is None else args.t0
    tf = models.TF if args.tf is None else args.tf
    config = runner.default_config(args.atol, args.rtol)
    records, orders = runner.run_convergence(problem, steppers, dts, t0, tf, config)
    runner.write_convergence_csv(os.path.join(out, "convergence.csv"), records)

    ok = all(r.finite for r in records)
    for name, order in orders.items():
        nominal = runner.expected_order(name)
        good = abs(order - nominal) <= order_tolerance(nominal)
        mark = "" if not args.assert_order else (" ok" if good else " FAIL")
        print(f"{name:12s} fitted order {order:6.3f} (nominal {nominal}){mark}")
        if args.assert_order and not good:
            ok = False
    return ok


def _grayscott(args, out):
    dims = args.dims or [DEFAULT_DIMS["grayscott"]]
    t0 = 0.0 if args.t0 is None else args.t0
    tf = 20.0 if args.tf is None else args.tf
    dt = (args.dt or [1.0])[0]
    res = runner.run_grayscott(dims=dims, workers=_workers(args)[0],
                               stepper=args.stepper or "rk4", dt=dt, t0=t0, tf=tf,
                               seed=args.seed, out=out, snapshot_every=args.snapshot_every)
    print(f"steps {res.steps}  wall {res.seconds:.3f} s")
    for c, (lo, hi) in enumerate(zip(res.field_min, res.field_max)):
        print(f"C{c}: min {lo:.6g} max {hi:.6g}")
    print(f"C1 variance {res.c1_variance:.6g}")
    for path in res.snapshots:
        print("wrote", path)
    return all(math.isfinite(v) for v in res.field_min + res.field_max)


def _scale(args, out):
    kind = args.scale_experiment
    n = (args.dims or [32 if kind == "grayscott" else DEFAULT_DIMS["scale"]])[0]
    if kind == "grayscott":
        t0, tf, dt = 0.0, 20.0, 1.0
    else:
        t0, tf, dt = models.T0, models.TF, 0.0625
    t0 = t0 if args.t0 is None else args.t0
    tf = tf if args.tf is None else args.tf
    dt = (args.dt or [dt])[0]
    workers = args.workers or (_workers(args) if os.environ.get("ODEFLOW_WORKERS")
                               else [1, 2, 4, 8])
    rows, summary = runner.run_scale(workers, kind, n, args.stepper or "rk4", dt, t0, tf,
                                     args.repeats, out, args.seed)
    print("workers  mean_seconds  efficiency")
    for W, (mean, eff) in summary.items():
        print(f"{W:7d}  {mean:12.4f}  {eff:10.3f}")
    return True


def main(argv=None):
    args = build_parser().parse_args(argv)
    out = args.out
    os.makedirs(out, exist_ok=True)
    try:
        if args.experiment == "grayscott":
            ok = _grayscott(args, out)
        elif args.experiment == "scale":
            ok = _scale(args, out)
        else:
            ok = _converge(args, out)
    except OdeflowError as exc:
        print(f"odeflow: {exc}", file=sys.stderr)
        return 1
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
