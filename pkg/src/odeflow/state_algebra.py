"""State containers and the algebra every stepper is written against.

A stepper never touches array data directly.  It only asks the algebra of
its state for linear combinations, norms and freshly sized temporaries, so
any container that implements :class:`Algebra` gets every stepper for free.

Two rules make results reproducible bit for bit:

* ``linear_combination`` evaluates ``c0*x0 + c1*x1 + ...`` strictly left to
  right for every element, one IEEE multiply and one IEEE add per term;
* reductions only use ``max``, which is exact and order independent.
"""

import math

import numpy as np

from .errors import ArityError, ContractError

#: Maximum number of input states in one linear combination.  Together with
#: the output this gives 15 participating states.
MAX_INPUTS = 14

#: Supported number of components per state.
MAX_COMPONENTS = 6


def combine_into(dest, coeffs, arrays):
    """Write ``sum(c * a)`` into ``dest`` with a fixed left-to-right order.

    ``dest`` may alias any of ``arrays``; in that case the sum is built in a
    scratch buffer first.
    """
    aliased = any(np.may_share_memory(dest, a) for a in arrays)
    acc = np.empty_like(dest) if aliased else dest
    np.multiply(arrays[0], coeffs[0], out=acc)
    if len(arrays) > 1:
        tmp = np.empty_like(dest)
        for c, a in zip(coeffs[1:], arrays[1:]):
            np.multiply(a, c, out=tmp)
            np.add(acc, tmp, out=acc)
    if aliased:
        dest[...] = acc


def check_arity(terms):
    k = len(terms)
    if k < 1 or k > MAX_INPUTS:
        raise ArityError(
            f"linear combination needs 1..{MAX_INPUTS} inputs, got {k}")


def block_max_abs(a):
    if a.size == 0:
        return 0.0
    return float(np.max(np.abs(a)))


def block_err_ratio(e, u_old, u_new, atol, rtol):
    if e.size == 0:
        return 0.0
    scale = np.maximum(np.abs(u_old), np.abs(u_new))
    scale *= rtol
    scale += atol
    return float(np.max(np.abs(e) / scale))


def _check_tolerances(atol, rtol):
    if atol < 0 or rtol < 0:
        raise ContractError("tolerances must be non-negative")
    if atol == 0 and rtol == 0:
        raise ContractError("atol and rtol are both zero; error ratio undefined")


class Algebra:
    """Operations a stepper may request from a state type.

    Subclasses implement the element-wise work; the public module-level
    functions (:func:`linear_combination` and friends) dispatch on the
    ``algebra`` attribute of the state they receive.
    """

    def resize_like(self, target, model):
        raise NotImplementedError

    def linear_combination(self, out, terms):
        raise NotImplementedError

    def norm_inf(self, u):
        raise NotImplementedError

    def sum_squares(self, u):
        raise NotImplementedError

    def err_ratio(self, e, u_old, u_new, atol, rtol):
        raise NotImplementedError

    def for_each(self, fn, states):
        raise NotImplementedError


class VectorAlgebra(Algebra):
    """Serial algebra for :class:`StateVector`."""

    @staticmethod
    def _conform(out, states):
        for s in states:
            if not isinstance(s, StateVector):
                raise ContractError(f"expected StateVector, got {type(s).__name__}")
            if s.data.shape != out.data.shape:
                raise ContractError(
                    f"shape mismatch: {s.data.shape} vs {out.data.shape}")

    def resize_like(self, target, model):
        if target.component_count != model.component_count:
            raise ContractError(
                f"component count mismatch: {target.component_count} "
                f"vs {model.component_count}")
        n_old, n_new = target.size, model.size
        if n_old == n_new:
            return target
        data = np.zeros((target.component_count, n_new))
        keep = min(n_old, n_new)
        data[:, :keep] = target.data[:, :keep]
        target.data = data
        return target

    def linear_combination(self, out, terms):
        check_arity(terms)
        self._conform(out, [x for _, x in terms])
        combine_into(out.data, [float(c) for c, _ in terms],
                     [x.data for _, x in terms])
        return out

    def norm_inf(self, u):
        return block_max_abs(u.data)

    def sum_squares(self, u):
        return float(np.sum(u.data * u.data))

    def err_ratio(self, e, u_old, u_new, atol, rtol):
        _check_tolerances(atol, rtol)
        self._conform(e, [u_old, u_new])
        return block_err_ratio(e.data, u_old.data, u_new.data, atol, rtol)

    def for_each(self, fn, states):
        self._conform(states[0], states[1:])
        fn(*[s.data for s in states])


class StateVector:
    """Multi-component state held as a ``(C, N)`` float64 array.

    Each row is one scalar field.  A state built without data has ``N = 0``
    and is meant to be sized with :func:`resize_like` before use.

    Parameters
    ----------
    components : array_like, optional
        Either a sequence of equally long 1-D arrays or a 2-D array of
        shape ``(C, N)``.  A 1-D array is taken as a single component.
    component_count : int, optional
        Number of components of an empty state.  Ignored when
        ``components`` is given.
    """

    algebra = VectorAlgebra()

    def __init__(self, components=None, component_count=1):
        if components is None:
            data = np.zeros((component_count, 0))
        else:
            if isinstance(components, (list, tuple)):
                lengths = {np.shape(c) for c in components}
                if len(lengths) > 1:
                    raise ContractError("components must have identical length")
            data = np.array(components, dtype=np.float64)
            if data.ndim == 1:
                data = data[np.newaxis, :]
            if data.ndim != 2:
                raise ContractError("components must be 1-D arrays")
        if not 1 <= data.shape[0] <= MAX_COMPONENTS:
            raise ContractError(
                f"component count must be in 1..{MAX_COMPONENTS}, got {data.shape[0]}")
        self.data = data

    @classmethod
    def _wrap(cls, data):
        obj = cls.__new__(cls)
        obj.data = data
        return obj

    @property
    def component_count(self):
        return self.data.shape[0]

    @property
    def size(self):
        return self.data.shape[1]

    @property
    def components(self):
        return list(self.data)

    def empty_like(self):
        return StateVector(component_count=self.component_count)

    def copy(self):
        return StateVector._wrap(self.data.copy())

    def view(self, components):
        """Return a state sharing memory with the selected components."""
        return StateVector._wrap(self.data[components])

    def to_array(self):
        return self.data.copy()

    def __repr__(self):
        return f"StateVector(C={self.component_count}, N={self.size})"


def resize_like(target, model):
    """Size ``target`` like ``model``, keeping old values and zero-filling."""
    return model.algebra.resize_like(target, model)


def linear_combination(out, terms):
    """Set ``out = sum(c_j * x_j)`` for ``terms = [(c_j, x_j), ...]``.

    ``out`` may be one of the inputs.  Between 1 and :data:`MAX_INPUTS`
    terms are accepted.
    """
    return out.algebra.linear_combination(out, terms)


def norm_inf(u):
    """Largest absolute value over all components and elements."""
    return u.algebra.norm_inf(u)


def sum_squares(u):
    return u.algebra.sum_squares(u)


def elementwise_err_ratio(e, u_old, u_new, atol, rtol):
    """Maximum of ``|e| / (atol + rtol * max(|u_old|, |u_new|))``.

    A value not above one means the step meets the tolerance.
    """
    return e.algebra.err_ratio(e, u_old, u_new, atol, rtol)


def for_each(fn, *states):
    """Call ``fn`` on the raw local arrays of conforming states.

    For distributed states ``fn`` runs once per worker on the owned cells;
    all arrays passed in one call have the same shape.
    """
    return states[0].algebra.for_each(fn, states)


def is_finite(u):
    return math.isfinite(norm_inf(u))


def new_like(model):
    """Fresh zero-filled temporary conforming to ``model``."""
    return resize_like(model.empty_like(), model)


def copy_into(dest, src):
    return linear_combination(dest, [(1.0, src)])
