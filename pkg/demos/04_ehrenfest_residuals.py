#!/usr/bin/env python3
"""Ehrenfest's theorem, verified by finite differences.

In the truncated algebra d<x>/dt = <p>/m and d<p>/dt = -<dV/dx> hold
exactly, so the report residuals measure nothing but the second-order
finite-difference error of the time derivative.  Halving the grid
spacing must divide both residuals by four.
"""

import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

import numpy as np

from matrixwell import StateVector, TimeGrid, WellConfig, ehrenfest_report

cfg = WellConfig(N=16)
rng = np.random.default_rng(11)
coeffs = np.zeros(cfg.N, dtype=complex)
coeffs[:5] = rng.normal(size=5) + 1j * rng.normal(size=5)
state = StateVector(coeffs)

print("random 5-mode state; residuals of d<x>/dt = <p>/m and d<p>/dt = -<dV/dx>\n")
print("   steps       h        max residual_x    max residual_p")
prev = None
for steps in (65, 129, 257, 513):
    grid = TimeGrid(0.0, 0.256, steps)
    rep = ehrenfest_report(state, cfg, grid)
    rx = rep.column("residual_x")[2:-2].max()
    rp = rep.column("residual_p")[2:-2].max()
    note = "" if prev is None else f"   (x {prev[0] / rx:.2f}, x {prev[1] / rp:.2f})"
    print(f"   {steps:5d}   {grid.spacing:.2e}     {rx:.3e}       {rp:.3e}{note}")
    prev = (rx, rp)

print("\nA stationary eigenstate has nothing to differentiate:")
rep = ehrenfest_report(StateVector.eigenstate(3, cfg.N), cfg, TimeGrid(0.0, 1.0, 33))
print("  max residual_x = %.2e, max residual_p = %.2e"
      % (rep.column("residual_x").max(), rep.column("residual_p").max()))
