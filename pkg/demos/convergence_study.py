"""Measure convergence orders of the Runge-Kutta and Adams families.

Both test problems run from t = -5 to t = 5.  The error is the
maximum over every step and grid point, and the order is the negative
slope of log(error) against log(steps).

    python3 demos/convergence_study.py
"""

from odeflow.bench import fitted_order, make_problem, run_convergence
from odeflow.bench.runner import MULTISTEP_SWEEP, ONE_STEP_SWEEP

problems = {"sigmoid": make_problem("sig"), "exponential 16x16": make_problem("exp", (16,))}

print("one-step methods, dt = 0.5 ... 0.03125")
for label, problem in problems.items():
    records, orders = run_convergence(problem, ["rk4", "cash_karp54", "dopri5", "fehlberg78"],
                                      ONE_STEP_SWEEP)
    print(f"  {label}:", ", ".join(f"{k} {v:.2f}" for k, v in orders.items()))

# the exponential reaches its roundoff floor before order 8 shows
r = [r for r in records if r.stepper == "fehlberg78"][-1]
print(f"  fehlberg78 finest dt on the exponential: l_inf = {r.l_inf:.2e}")

print("\nAdams methods, dt = 2^-4 ... 2^-7")
for label, problem in problems.items():
    names = [f"ab{k}" for k in range(1, 9)] + [f"abm{k}" for k in range(1, 9)]
    records, _ = run_convergence(problem, names, MULTISTEP_SWEEP)
    row = []
    for name in names:
        fit = fitted_order([r for r in records if r.stepper == name])
        row.append(f"{name} {fit:.2f}")
    print(f"  {label}:")
    print("    " + ", ".join(row[:8]))
    print("    " + ", ".join(row[8:]))

# High orders flatten out once the error reaches about 1e-12: there are too
# few points left above the floor for a clean slope.
