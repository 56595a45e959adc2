#!/usr/bin/env python3
"""Benchmarks whose solutions are curves, not points.

The decision vector holds the free interior ordinates of a discretized
path.  The shortest-path problem has no constraint beyond y >= 0 and its
discrete optimum is exactly the straight line; the hanging rope must also
hold a fixed length, handled by an augmented-Lagrangian outer loop around
exact-gradient descent.  Node tables are dumped as CSV for plotting.
"""

import csv
import math
import sys

import numpy as np

from optbench import SolverConfig, augmented_lagrangian_path, get_problem, optimum_gap

# ---------------------------------------------------------------------------
# Shortest path: (0,0) -> (1,1)
# ---------------------------------------------------------------------------
f9 = get_problem("f9")
result = augmented_lagrangian_path(f9, "nm", SolverConfig(max_evaluations=10_000, seed=0))
gap = optimum_gap(f9, result.best_point)
print(f"shortest path (M = {f9.dimension}):")
print(f"  length found      {result.objective_value:.10f}")
print(f"  sqrt(2)           {math.sqrt(2):.10f}")
print(f"  node deviation    {gap.location_gap:.2e} (L-inf from the line y = x)")

# ---------------------------------------------------------------------------
# Hanging rope: length 2.3504 between (-1, 0) and (1, 0)
# ---------------------------------------------------------------------------
f10 = get_problem("f10")
result = augmented_lagrangian_path(f10, "nm", SolverConfig(max_evaluations=20_000, seed=0))
gap = optimum_gap(f10, result.best_point)
residual = f10.equality_residual(result.best_point)
oracle = 1.0 - math.sinh(2.0) / 2.0

print(f"\nhanging rope (M = {f10.dimension}, L = {f10.params.length}):")
print(f"  energy found      {result.objective_value:.6f}")
print(f"  catenary energy   {oracle:.6f}  (1 - sinh(2)/2)")
print(f"  length residual   {residual:+.2e}")
print(f"  node deviation    {gap.location_gap:.2e} (L-inf from cosh(x) - cosh(1))")

# dump the solved rope next to the exact catenary
frame = f10.path_frame
grid = np.linspace(frame.x_lo, frame.x_hi, f10.dimension + 2)
solved = np.concatenate([[frame.y_lo], result.best_point, [frame.y_hi]])
exact = np.cosh(grid) - math.cosh(1.0)

writer = csv.writer(sys.stdout, lineterminator="\n")
print("\nx,solved_y,catenary_y")
for row in zip(grid, solved, exact):
    writer.writerow([f"{v:.6f}" for v in row])
