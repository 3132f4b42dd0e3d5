"""Slab decomposition of a regular Cartesian grid."""

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from ..errors import DecompositionError


@dataclass(frozen=True)
class GridPartition:
    """Geometry of a decomposed grid and the worker that owns each slab.

    The grid is split along ``axis`` only; every worker owns the full
    extent of the two other axes.  Each worker's local buffer carries
    ``ghost_width`` extra cells on both sides of every axis.

    Attributes
    ----------
    global_dims : tuple of int
        ``(nx, ny, nz)``; use ``nz = 1`` for 2-D problems.
    box : tuple of (float, float)
        Physical ``(lo, hi)`` per axis.  Point ``i`` sits at
        ``lo + i * (hi - lo) / n``.
    workers : int
    ghost_width : int
    periodic : tuple of bool
    axis : int
        Decomposed axis.
    bounds : tuple of (int, int)
        Half-open owned index range along ``axis`` for every rank.
    """

    global_dims: tuple
    box: tuple
    workers: int
    ghost_width: int
    periodic: tuple
    axis: int
    bounds: tuple

    @property
    def spacing(self):
        return tuple((hi - lo) / n for (lo, hi), n in zip(self.box, self.global_dims))

    @property
    def size(self):
        nx, ny, nz = self.global_dims
        return nx * ny * nz

    def owned_shape(self, rank):
        lo, hi = self.bounds[rank]
        shape = list(self.global_dims)
        shape[self.axis] = hi - lo
        return tuple(shape)

    def local_shape(self, rank):
        g = self.ghost_width
        return tuple(n + 2 * g for n in self.owned_shape(rank))

    def owned_index(self, rank):
        """Slices selecting owned cells inside a local (ghosted) buffer."""
        g = self.ghost_width
        return tuple(slice(g, g + n) for n in self.owned_shape(rank))

    def global_index(self, rank):
        """Slices selecting this rank's cells inside a global array."""
        lo, hi = self.bounds[rank]
        idx = [slice(None)] * 3
        idx[self.axis] = slice(lo, hi)
        return tuple(idx)

    def coordinates(self, rank):
        """Owned point coordinates as three broadcastable arrays."""
        out = []
        for ax, ((lo, hi), n) in enumerate(zip(self.box, self.global_dims)):
            h = (hi - lo) / n
            start, stop = (self.bounds[rank] if ax == self.axis else (0, n))
            x = lo + np.arange(start, stop) * h
            shape = [1, 1, 1]
            shape[ax] = x.size
            out.append(x.reshape(shape))
        return tuple(out)

    def neighbors(self, rank):
        """``(left, right)`` ranks along the decomposed axis, or None at a wall."""
        w = self.workers
        periodic = self.periodic[self.axis]
        left = rank - 1 if rank > 0 else (w - 1 if periodic else None)
        right = rank + 1 if rank < w - 1 else (0 if periodic else None)
        return left, right

    @cached_property
    def team(self):
        from .comm import Team
        return Team(self.workers)


def decompose(global_dims, workers=1, ghost_width=0, periodic=True, box=None):
    """Split the longest axis into ``workers`` contiguous slabs.

    Slab widths differ by at most one cell; the remainder goes to the
    lowest ranks, one cell each.  Ties for the longest axis go to the
    lowest axis index.

    >>> decompose((7, 1, 1), 2).bounds
    ((0, 4), (4, 7))
    """
    dims = tuple(int(n) for n in global_dims)
    dims = dims + (1,) * (3 - len(dims))
    if len(dims) != 3 or min(dims) < 1:
        raise DecompositionError(f"invalid grid dimensions {global_dims!r}")
    if workers < 1:
        raise DecompositionError("workers must be >= 1")
    if ghost_width < 0:
        raise DecompositionError("ghost_width must be >= 0")
    if isinstance(periodic, bool):
        periodic = (periodic,) * 3
    if box is None:
        box = ((0.0, 1.0),) * 3
    box = tuple((float(lo), float(hi)) for lo, hi in box)

    axis = int(np.argmax(dims))
    n = dims[axis]
    base, extra = divmod(n, workers)
    bounds, start = [], 0
    for r in range(workers):
        width = base + (1 if r < extra else 0)
        if width < max(ghost_width, 1):
            raise DecompositionError(
                f"slab of rank {r} has {width} cells, needs at least "
                f"{max(ghost_width, 1)} (grid {dims}, {workers} workers)")
        bounds.append((start, start + width))
        start += width
    for ax, m in enumerate(dims):
        if ax != axis and ghost_width > m:
            raise DecompositionError(
                f"ghost width {ghost_width} exceeds axis {ax} extent {m}")

    return GridPartition(global_dims=dims, box=box, workers=int(workers),
                         ghost_width=int(ghost_width), periodic=tuple(periodic),
                         axis=axis, bounds=tuple(bounds))
