"""Benchmark right-hand sides: exponential family, sigmoid and Gray-Scott."""

import math

import numpy as np

from .distributed import DistributedState, decompose, halo_exchange
from .errors import ContractError
from .state_algebra import for_each, linear_combination, new_like, norm_inf, sum_squares

T0, TF = -5.0, 5.0


# -- exponential family ---------------------------------------------------------------

class ExponentialSystem:
    """``du/dt = u`` point by point; no spatial coupling."""

    def __call__(self, t, u, dudt):
        linear_combination(dudt, [(1.0, u)])


def exponential_solution(x, y, t):
    """Closed form ``x * y * exp(t)``."""
    return x * y * math.exp(t)


def exponential_partition(n=16, workers=1):
    """Partition of ``[0, 1]^2`` into ``n x n`` points (2-D, no ghosts)."""
    return decompose((n, n, 1), workers=workers, ghost_width=0, periodic=False,
                     box=((0.0, 1.0), (0.0, 1.0), (0.0, 1.0)))


def exponential_exact(t, partition):
    """Exact exponential-family field at time ``t`` on the grid points."""
    nx, ny, nz = partition.global_dims
    (x0, x1), (y0, y1), _ = partition.box
    x = x0 + np.arange(nx) * ((x1 - x0) / nx)
    y = y0 + np.arange(ny) * ((y1 - y0) / ny)
    field = (x[:, None] * y[None, :] * math.exp(t))[:, :, None]
    return DistributedState.from_global(partition, np.broadcast_to(field, (nx, ny, nz)))


# -- sigmoid --------------------------------------------------------------------------

def _logistic(u, dudt):
    np.multiply(u, 1.0 - u, out=dudt)


class SigmoidSystem:
    """Logistic growth ``du/dt = u (1 - u)`` applied element-wise."""

    def __call__(self, t, u, dudt):
        for_each(_logistic, u, dudt)


def sigmoid_exact(t):
    return 1.0 / (1.0 + math.exp(-t))


def sigmoid_partition(n=8, workers=1):
    return decompose((n, 1, 1), workers=workers, ghost_width=0, periodic=False)


def sigmoid_state(t, partition):
    """Uniform field holding the exact sigmoid value at time ``t``."""
    return DistributedState.from_global(
        partition, np.full(partition.global_dims, sigmoid_exact(t)))


# -- Gray-Scott -----------------------------------------------------------------------

def laplacian(block, g, inv_h2):
    """Seven-point Laplacian of the interior of a ghosted 3-D block."""
    nx, ny, nz = (n - 2 * g for n in block.shape)
    c = block[g:g + nx, g:g + ny, g:g + nz]
    xs = block[g + 1:g + 1 + nx, g:g + ny, g:g + nz] + block[g - 1:g - 1 + nx, g:g + ny, g:g + nz]
    ys = block[g:g + nx, g + 1:g + 1 + ny, g:g + nz] + block[g:g + nx, g - 1:g - 1 + ny, g:g + nz]
    zs = block[g:g + nx, g:g + ny, g + 1:g + 1 + nz] + block[g:g + nx, g:g + ny, g - 1:g - 1 + nz]
    c2 = c + c
    return ((xs - c2) * inv_h2[0] + (ys - c2) * inv_h2[1]) + (zs - c2) * inv_h2[2]


class GrayScottSystem:
    """Two-species Gray-Scott reaction-diffusion on a periodic grid.

    ``dC0/dt = d1 Lap(C0) - C0 C1^2 + F (1 - C0)``
    ``dC1/dt = d2 Lap(C1) + C0 C1^2 - (F + K) C1``

    Each evaluation first refreshes the ghost layers of ``u``, so steppers
    need no communication code of their own.
    """

    def __init__(self, d1=2e-4, d2=1e-4, F=0.014, K=0.053):
        self.d1, self.d2, self.F, self.K = d1, d2, F, K

    def __call__(self, t, u, dudt):
        part = u.partition
        g = part.ghost_width
        if g < 1:
            raise ContractError("Gray-Scott needs ghost_width >= 1")
        if u.component_count != 2:
            raise ContractError("Gray-Scott state has two components")
        halo_exchange(u)
        inv_h2 = tuple(1.0 / (h * h) for h in part.spacing)
        d1, d2, F, K = self.d1, self.d2, self.F, self.K
        fk = F + K

        def task(r):
            block = u.blocks[r]
            c0, c1 = u.owned(r)
            out = dudt.owned(r)
            react = c0 * c1 * c1
            out[0] = d1 * laplacian(block[0], g, inv_h2) - react + F - F * c0
            out[1] = d2 * laplacian(block[1], g, inv_h2) + react - fk * c1

        part.team.run(task)


def grayscott_partition(n=32, workers=1, length=2.5):
    return decompose((n, n, n), workers=workers, ghost_width=1, periodic=True,
                     box=((0.0, length),) * 3)


def grayscott_initial_field(global_dims, seed=0, seed_fraction=0.125):
    """Global ``(2, nx, ny, nz)`` array: trivial state plus a seeded cube.

    ``C0 = 1, C1 = 0`` everywhere except a centred cube whose side is
    ``seed_fraction`` of the domain, where ``C0 = 0.5`` and ``C1 = 0.25``,
    each scaled by ``1 + 0.01 * U(-1, 1)`` drawn from ``seed``.
    """
    dims = tuple(global_dims)
    field = np.empty((2,) + dims)
    field[0] = 1.0
    field[1] = 0.0
    sides = tuple(max(1, round(n * seed_fraction)) for n in dims)
    region = tuple(slice(n // 2 - s // 2, n // 2 - s // 2 + s) for n, s in zip(dims, sides))
    rng = np.random.default_rng(seed)
    field[0][region] = 0.5 * (1.0 + 0.01 * rng.uniform(-1.0, 1.0, sides))
    field[1][region] = 0.25 * (1.0 + 0.01 * rng.uniform(-1.0, 1.0, sides))
    return field


def grayscott_init(partition, seed=0, seed_fraction=0.125):
    """Scatter the seeded initial field; identical for any worker count."""
    field = grayscott_initial_field(partition.global_dims, seed, seed_fraction)
    return DistributedState.from_global(partition, field)


# -- error norms ----------------------------------------------------------------------

def error_norms(u, u_exact):
    """``(max |e|, sqrt(sum e^2))`` for ``e = u - u_exact`` over all points."""
    e = new_like(u)
    linear_combination(e, [(1.0, u), (-1.0, u_exact)])
    return norm_inf(e), math.sqrt(sum_squares(e))
