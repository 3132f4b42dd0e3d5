"""Hard-coded RK4 for Gray-Scott on a single periodic array.

This is the baseline the generic stepper is timed against.  It uses no
state algebra, no decomposition and no halo exchange: one padded buffer,
``np.pad``-free periodic wrap, and the RK4 update written out by hand.
"""

import numpy as np


class NativeGrayScottRK4:
    """RK4 on a ``(2, nx, ny, nz)`` periodic field, all buffers preallocated."""

    def __init__(self, shape, spacing, d1=2e-4, d2=1e-4, F=0.014, K=0.053):
        self.shape = tuple(shape)
        self.inv_h2 = [1.0 / (h * h) for h in spacing]
        self.d1, self.d2, self.F, self.K = d1, d2, F, K
        nx, ny, nz = self.shape[1:]
        self._pad = np.empty((2, nx + 2, ny + 2, nz + 2))
        self._k = [np.empty(self.shape) for _ in range(4)]
        self._tmp = np.empty(self.shape)

    def rhs(self, u, out):
        p = self._pad
        p[:, 1:-1, 1:-1, 1:-1] = u
        p[:, 0, 1:-1, 1:-1] = u[:, -1]
        p[:, -1, 1:-1, 1:-1] = u[:, 0]
        p[:, :, 0, :] = p[:, :, -2, :]
        p[:, :, -1, :] = p[:, :, 1, :]
        p[:, :, :, 0] = p[:, :, :, -2]
        p[:, :, :, -1] = p[:, :, :, 1]
        ix, iy, iz = self.inv_h2
        c = p[:, 1:-1, 1:-1, 1:-1]
        lap = ((p[:, 2:, 1:-1, 1:-1] + p[:, :-2, 1:-1, 1:-1] - 2.0 * c) * ix
               + (p[:, 1:-1, 2:, 1:-1] + p[:, 1:-1, :-2, 1:-1] - 2.0 * c) * iy
               + (p[:, 1:-1, 1:-1, 2:] + p[:, 1:-1, 1:-1, :-2] - 2.0 * c) * iz)
        c0, c1 = u[0], u[1]
        react = c0 * c1 * c1
        out[0] = self.d1 * lap[0] - react + self.F * (1.0 - c0)
        out[1] = self.d2 * lap[1] + react - (self.F + self.K) * c1

    def step(self, u, dt):
        k1, k2, k3, k4 = self._k
        tmp = self._tmp
        self.rhs(u, k1)
        np.multiply(k1, 0.5 * dt, out=tmp)
        tmp += u
        self.rhs(tmp, k2)
        np.multiply(k2, 0.5 * dt, out=tmp)
        tmp += u
        self.rhs(tmp, k3)
        np.multiply(k3, dt, out=tmp)
        tmp += u
        self.rhs(tmp, k4)
        k2 += k3
        k2 *= 2.0
        k2 += k1
        k2 += k4
        k2 *= dt / 6.0
        u += k2

    def run(self, u, steps, dt):
        """Advance ``u`` in place by ``steps`` steps of size ``dt``."""
        for _ in range(steps):
            self.step(u, dt)
        return u
