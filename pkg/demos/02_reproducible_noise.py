#!/usr/bin/env python3
"""Reproducible noise streams.

The noisy benchmarks draw their per-component noise from a counter-based
generator keyed by (run_seed, eval_index).  Nothing is stateful: any
worker, in any order, reproduces exactly the same evaluation.
"""

import numpy as np

from optbench import NoiseKey, NoisePolicy, evaluate, get_problem, uniform, uniform_vector

print("Keyed draws are pure functions of (seed, eval_index, component):")
key = NoiseKey(run_seed=42, eval_index=7)
print("  first call: ", [round(uniform(key, c), 6) for c in range(4)])
print("  second call:", [round(uniform(key, c), 6) for c in range(4)])
print("  as a block: ", np.round(uniform_vector(key, 4), 6))

print("\nDistinct evaluation indices give fresh, independent draws:")
for index in range(3):
    print(f"  eval {index}:", np.round(uniform_vector(NoiseKey(42, index), 4), 6))

# ---------------------------------------------------------------------------
# The noisy well f1: noise never moves the optimum
# ---------------------------------------------------------------------------
f1 = get_problem("f1")
origin = np.zeros(f1.dimension)
values = {evaluate(f1, origin, NoiseKey(seed, index))
          for seed in range(50) for index in range(20)}
print(f"\nf1 at the origin under 1000 distinct keys: {values} (always exactly -1)")

x = np.full(f1.dimension, 0.3)
samples = [evaluate(f1, x, NoiseKey(0, index)) for index in range(5)]
print(f"f1 at x = 0.3 * ones: five draws {[round(v, 6) for v in samples]}")

# ---------------------------------------------------------------------------
# Resampling policies
# ---------------------------------------------------------------------------
print("\nPolicies (same point, increasing eval_index):")
for policy in (NoisePolicy.PER_EVALUATION, NoisePolicy.FIXED_PER_RUN):
    sphere = get_problem("noisy_sphere", noise_policy=policy, dimension=3)
    draws = [round(evaluate(sphere, [1.0, 2.0, 3.0], NoiseKey(9, i)), 6) for i in range(4)]
    print(f"  {policy.value:15s} -> {draws}")
print("PER_EVALUATION resamples on every call; FIXED_PER_RUN freezes the")
print("eval-0 draw so the objective becomes deterministic for a whole run.")
