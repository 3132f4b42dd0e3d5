"""Adaptive Dormand-Prince on the sigmoid, with the step history printed."""

import numpy as np

from odeflow import models
from odeflow.adaptive import AdaptiveController, ControllerConfig
from odeflow.steppers import make_stepper

part = models.sigmoid_partition(1)
u = models.sigmoid_state(models.T0, part)
times = []

ctrl = AdaptiveController(make_stepper("dopri5"), ControllerConfig(atol=1e-8, rtol=1e-8))
ctrl.integrate(models.SigmoidSystem(), u, models.T0, models.TF, 0.1,
               observer=lambda state, t: times.append(t))

steps = np.diff([models.T0] + times)
print(f"{len(times)} accepted, {ctrl.rejected} rejected")
# the last step is clipped to land on tf, so leave it out
inner = steps[:-1]
print(f"dt from {inner.min():.3g} to {inner.max():.3g} before the final step")
for t, h in list(zip(times, steps))[::6]:
    print(f"  t = {t:7.3f}  dt = {h:.4f}")
err = abs(float(u.to_array().ravel()[0]) - models.sigmoid_exact(models.TF))
print(f"final error {err:.2e}")
