"""Grid-backed distributed state and its algebra."""

import math

import numpy as np

from ..errors import ContractError
from ..state_algebra import (MAX_COMPONENTS, Algebra, block_err_ratio, block_max_abs,
                             check_arity, combine_into, _check_tolerances)


class DistributedAlgebra(Algebra):
    """Algebra whose operations run on every worker's owned cells.

    Element-wise work is identical whatever the number of workers, and the
    only cross-worker reduction is ``max``, combined in ascending rank
    order.  Results are therefore independent of the decomposition.
    """

    @staticmethod
    def _conform(out, states):
        for s in states:
            if not isinstance(s, DistributedState):
                raise ContractError(
                    f"expected DistributedState, got {type(s).__name__}")
            if s.partition != out.partition:
                raise ContractError("states live on different partitions")
            if s.component_count != out.component_count:
                raise ContractError("component count mismatch")
            if s.blocks is None or out.blocks is None:
                raise ContractError("state has not been sized; call resize_like first")

    def resize_like(self, target, model):
        if target.component_count != model.component_count:
            raise ContractError(
                f"component count mismatch: {target.component_count} "
                f"vs {model.component_count}")
        if model.blocks is None:
            target.partition, target.blocks = model.partition, None
            return target
        if target.blocks is not None and target.partition == model.partition:
            return target
        part = model.partition
        old = target.global_array() if target.blocks is not None else None
        target.partition = part
        target.blocks = [np.zeros((target.component_count,) + part.local_shape(r))
                         for r in range(part.workers)]
        if old is not None:
            # keep overlapping global indices, zero elsewhere
            nx, ny, nz = part.global_dims
            fill = np.zeros((target.component_count, nx, ny, nz))
            keep = tuple(slice(0, min(a, b)) for a, b in zip(old.shape[1:], (nx, ny, nz)))
            fill[(slice(None),) + keep] = old[(slice(None),) + keep]
            target._scatter(fill)
        return target

    def linear_combination(self, out, terms):
        check_arity(terms)
        inputs = [x for _, x in terms]
        self._conform(out, inputs)
        coeffs = [float(c) for c, _ in terms]

        def task(r):
            combine_into(out.owned(r), coeffs, [x.owned(r) for x in inputs])

        out.partition.team.run(task)
        return out

    def norm_inf(self, u):
        if u.blocks is None:
            return 0.0
        return reduce_max(u, lambda r: block_max_abs(u.owned(r)))

    def sum_squares(self, u):
        if u.blocks is None:
            return 0.0
        sq = u.partition.team.run(lambda r: u.owned(r) * u.owned(r))
        # global index order, so the sum does not depend on the worker count
        full = np.concatenate(sq, axis=1 + u.partition.axis)
        return float(np.sum(full))

    def err_ratio(self, e, u_old, u_new, atol, rtol):
        _check_tolerances(atol, rtol)
        self._conform(e, [u_old, u_new])
        return reduce_max(e, lambda r: block_err_ratio(
            e.owned(r), u_old.owned(r), u_new.owned(r), atol, rtol))

    def for_each(self, fn, states):
        self._conform(states[0], states[1:])
        states[0].partition.team.run(lambda r: fn(*[s.owned(r) for s in states]))


def reduce_max(state, local):
    """Combine per-rank values with ``max`` in ascending rank order."""
    parts = state.partition.team.run(local)
    result = parts[0]
    for p in parts[1:]:
        if math.isnan(result):
            break
        # a NaN on any later rank replaces the running max
        if not p <= result:
            result = p
    return result


class DistributedState:
    """State split across the workers of a :class:`GridPartition`.

    Each rank holds a ``(C, lx + 2g, ny + 2g, nz + 2g)`` buffer; the algebra
    only reads and writes the owned interior, ghosts are refreshed by
    :func:`halo_exchange`.
    """

    algebra = DistributedAlgebra()

    def __init__(self, partition, component_count=1, blocks=None):
        if not 1 <= component_count <= MAX_COMPONENTS:
            raise ContractError(
                f"component count must be in 1..{MAX_COMPONENTS}, got {component_count}")
        self.partition = partition
        self._count = component_count
        self.blocks = blocks

    @classmethod
    def zeros(cls, partition, component_count=1):
        state = cls(partition, component_count)
        state.blocks = [np.zeros((component_count,) + partition.local_shape(r))
                        for r in range(partition.workers)]
        return state

    @classmethod
    def from_global(cls, partition, array):
        """Scatter a ``(C, nx, ny, nz)`` array (or ``(nx, ny, nz)`` for C=1)."""
        array = np.asarray(array, dtype=np.float64)
        if array.ndim == 3:
            array = array[np.newaxis]
        if array.shape[1:] != partition.global_dims:
            raise ContractError(
                f"array shape {array.shape[1:]} does not match grid {partition.global_dims}")
        state = cls.zeros(partition, array.shape[0])
        state._scatter(array)
        return state

    def _scatter(self, array):
        part = self.partition

        def task(r):
            self.owned(r)[...] = array[(slice(None),) + part.global_index(r)]

        part.team.run(task)

    @property
    def component_count(self):
        return self._count

    @property
    def size(self):
        return 0 if self.blocks is None else self.partition.size

    def owned(self, rank):
        return self.blocks[rank][(slice(None),) + self.partition.owned_index(rank)]

    def empty_like(self):
        return DistributedState(self.partition, self._count)

    def copy(self):
        blocks = None if self.blocks is None else [b.copy() for b in self.blocks]
        return DistributedState(self.partition, self._count, blocks)

    def view(self, components):
        """Return a state sharing memory with the selected components."""
        blocks = [b[components] for b in self.blocks]
        return DistributedState(self.partition, blocks[0].shape[0], blocks)

    def global_array(self):
        return gather_to_root(self)

    def to_array(self):
        return gather_to_root(self).reshape(self._count, -1)

    def __repr__(self):
        return (f"DistributedState(C={self._count}, dims={self.partition.global_dims}, "
                f"workers={self.partition.workers})")


def gather_to_root(state):
    """Assemble the owned cells of all ranks into one ``(C, nx, ny, nz)`` array.

    Ghost cells are ignored.
    """
    part = state.partition
    out = np.empty((state.component_count,) + part.global_dims)
    for r in range(part.workers):
        out[(slice(None),) + part.global_index(r)] = state.owned(r)
    return out


def reduce_max_abs(state):
    return state.algebra.norm_inf(state)


def _wrap_axis(buf, ax, g):
    """Fill both ghost layers of ``buf`` along ``ax`` from its own interior."""
    n = buf.shape[ax] - 2 * g

    def sl(a, b):
        idx = [slice(None)] * buf.ndim
        idx[ax] = slice(a, b)
        return tuple(idx)

    buf[sl(0, g)] = buf[sl(n, n + g)]
    buf[sl(n + g, n + 2 * g)] = buf[sl(g, 2 * g)]


def halo_exchange(state, components=None):
    """Refresh ghost cells with the owners' current values.

    Along the decomposed axis each rank sends its first and last ``g``
    owned planes to its neighbours through the team channel.  The remaining
    axes are owned in full, so their periodic ghosts are filled locally
    afterwards, which also makes edge and corner ghosts consistent.
    """
    part = state.partition
    g = part.ghost_width
    if g < 1:
        raise ContractError("halo exchange needs ghost_width >= 1")
    if components is None:
        components = range(state.component_count)
    comps = list(components)
    ax = 1 + part.axis
    chan = part.team.channel

    def sl(buf, a, b):
        idx = [comps] + [slice(None)] * 3
        idx[ax] = slice(a, b)
        return tuple(idx)

    def task(r):
        buf = state.blocks[r]
        n = buf.shape[ax] - 2 * g
        left, right = part.neighbors(r)
        if left is not None:
            chan.send(r, left, "to_left", buf[sl(buf, g, 2 * g)].copy())
        if right is not None:
            chan.send(r, right, "to_right", buf[sl(buf, n, n + g)].copy())
        if right is not None:
            buf[sl(buf, n + g, n + 2 * g)] = chan.recv(r, right, "to_left")
        if left is not None:
            buf[sl(buf, 0, g)] = chan.recv(r, left, "to_right")
        for other in range(3):
            if other != part.axis and part.periodic[other]:
                for c in comps:
                    _wrap_axis(buf[c], other, g)

    part.team.run(task)
    return state
