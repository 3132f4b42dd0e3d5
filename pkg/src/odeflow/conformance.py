"""Conformance kit for state types implementing the algebra contract.

Any state type can be checked by supplying two adapters: one that builds a
state from a float64 array, and one that reads a state back into an array
of the same shape.  Every check compares against plain Python float loops,
which perform exactly one IEEE multiply and one add per term.

Example
-------
>>> from odeflow.state_algebra import StateVector
>>> report = run_conformance(StateVector, lambda s: s.to_array(), shape=(2, 5))
>>> report.ok
True
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import ArityError
from .state_algebra import (MAX_INPUTS, elementwise_err_ratio, linear_combination, new_like,
                            norm_inf)


def reference_combination(coeffs, arrays):
    """Scalar left-to-right reference for a linear combination."""
    flats = [np.asarray(a, dtype=np.float64).ravel() for a in arrays]
    out = np.empty_like(flats[0])
    for i in range(out.size):
        acc = float(coeffs[0]) * float(flats[0][i])
        for c, x in zip(coeffs[1:], flats[1:]):
            acc = acc + float(c) * float(x[i])
        out[i] = acc
    return out.reshape(np.shape(arrays[0]))


def reference_norm_inf(array):
    best = 0.0
    for x in np.asarray(array, dtype=np.float64).ravel():
        best = max(best, abs(float(x)))
    return best


def reference_err_ratio(e, u_old, u_new, atol, rtol):
    best = 0.0
    for ei, oi, ni in zip(np.ravel(e), np.ravel(u_old), np.ravel(u_new)):
        scale = atol + rtol * max(abs(float(oi)), abs(float(ni)))
        best = max(best, abs(float(ei)) / scale)
    return best


def bitwise_equal(a, b):
    a = np.ascontiguousarray(a, dtype=np.float64)
    b = np.ascontiguousarray(b, dtype=np.float64)
    return a.shape == b.shape and np.array_equal(a.view(np.uint64), b.view(np.uint64))


@dataclass
class ConformanceReport:
    results: list = field(default_factory=list)

    def record(self, name, passed, detail=""):
        self.results.append((name, bool(passed), detail))

    @property
    def ok(self):
        return all(passed for _, passed, _ in self.results)

    @property
    def failures(self):
        return [r for r in self.results if not r[1]]

    def __str__(self):
        lines = [f"{'PASS' if p else 'FAIL'} {name} {detail}".rstrip()
                 for name, p, detail in self.results]
        return "\n".join(lines)


def run_conformance(make_state, to_array, shape, seed=0, max_inputs=MAX_INPUTS):
    """Run the full kit and return a :class:`ConformanceReport`.

    Parameters
    ----------
    make_state : callable
        ``make_state(array) -> state`` for a float64 array of ``shape``.
    to_array : callable
        ``to_array(state) -> array`` with the same layout.
    shape : tuple
        Array shape used for every test state, components first.
    """
    rng = np.random.default_rng(seed)
    report = ConformanceReport()

    def rand():
        return rng.uniform(-2.0, 2.0, shape) * 10.0 ** rng.integers(-3, 4, shape)

    for k in range(1, max_inputs + 1):
        coeffs = [float(c) for c in rng.uniform(-1.5, 1.5, k)]
        arrays = [rand() for _ in range(k)]
        expected = reference_combination(coeffs, arrays)

        states = [make_state(a) for a in arrays]
        out = new_like(states[0])
        linear_combination(out, list(zip(coeffs, states)))
        report.record(f"linear_combination k={k}", bitwise_equal(to_array(out), expected))
        report.record(f"inputs untouched k={k}",
                      all(bitwise_equal(to_array(s), a) for s, a in zip(states, arrays)))

        aliased_ok = True
        for j in range(k):
            states = [make_state(a) for a in arrays]
            linear_combination(states[j], list(zip(coeffs, states)))
            aliased_ok &= bitwise_equal(to_array(states[j]), expected)
        report.record(f"aliasing k={k}", aliased_ok)

    # one state repeated in every slot, output aliased too
    a = rand()
    coeffs = [float(c) for c in rng.uniform(-1.5, 1.5, max_inputs)]
    s = make_state(a)
    linear_combination(s, [(c, s) for c in coeffs])
    report.record("repeated input aliasing",
                  bitwise_equal(to_array(s), reference_combination(coeffs, [a] * max_inputs)))

    s = make_state(rand())
    for k in (0, max_inputs + 1):
        try:
            linear_combination(new_like(s), [(1.0, s)] * k)
        except ArityError:
            report.record(f"arity {k} rejected", True)
        else:
            report.record(f"arity {k} rejected", False, "no error raised")

    a = rand()
    report.record("norm_inf", norm_inf(make_state(a)) == reference_norm_inf(a))
    report.record("norm_inf zero", norm_inf(make_state(np.zeros(shape))) == 0.0)

    e, uo, un = rand() * 1e-6, rand(), rand()
    got = elementwise_err_ratio(make_state(e), make_state(uo), make_state(un), 1e-6, 1e-3)
    report.record("err_ratio", got == reference_err_ratio(e, uo, un, 1e-6, 1e-3))
    return report
