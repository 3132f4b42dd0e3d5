"""Experiment harness: convergence sweeps, Gray-Scott runs, scaling, snapshots."""

from .native import NativeGrayScottRK4
from .runner import (CONVERGENCE_HEADER, TIMING_HEADER, ConvergenceRecord, GrayScottSummary,
                     convergence_case, fitted_order, make_problem, read_convergence_csv,
                     run_convergence, run_grayscott, run_scale, write_convergence_csv)
from .vtk import read_vtk, write_vtk
