"""Deterministic, parallel-safe uniform noise streams.

Stochastic benchmark evaluations draw their noise from a counter-based
generator keyed by ``(run_seed, eval_index)``.  There is no hidden stream
state: the same key and component index always reproduce the same draw, no
matter how calls are interleaved across threads or trials.  Streams for
distinct keys are statistically independent.

The bit source is numpy's Philox generator, which is explicitly designed
for this keyed, stateless style of use.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

_U64 = 2**64


@dataclass(frozen=True)
class NoiseKey:
    """Identifies one stochastic evaluation of one run."""

    run_seed: int
    eval_index: int

    def __post_init__(self):
        for name in ("run_seed", "eval_index"):
            value = getattr(self, name)
            if not isinstance(value, (int, np.integer)) or not 0 <= value < _U64:
                raise ValueError(f"{name} must be an unsigned 64-bit integer, got {value!r}")


class NoisePolicy(enum.Enum):
    """How often a noisy objective redraws its noise components."""

    PER_EVALUATION = "per_evaluation"  # fresh draw on every objective call
    FIXED_PER_RUN = "fixed_per_run"    # the eval_index-0 draw reused for the whole run


def _generator(key: NoiseKey) -> np.random.Generator:
    packed = np.array([key.run_seed, key.eval_index], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=packed))


def uniform(key: NoiseKey, component: int) -> float:
    """Uniform [0, 1) draw for one noise component of one evaluation.

    Deterministic in ``(key.run_seed, key.eval_index, component)`` and equal
    to ``uniform_vector(key, n)[component]`` for any ``n > component``.
    """
    if not isinstance(component, (int, np.integer)) or component < 0:
        raise ValueError(f"component index must be a non-negative integer, got {component!r}")
    return float(_generator(key).random(component + 1)[-1])


def uniform_vector(key: NoiseKey, n: int) -> np.ndarray:
    """First ``n`` components of the key's stream as one array."""
    return _generator(key).random(n)


def effective_key(key: NoiseKey, policy: NoisePolicy) -> NoiseKey:
    """Key actually used for drawing under the given resampling policy."""
    if policy is NoisePolicy.FIXED_PER_RUN:
        return NoiseKey(key.run_seed, 0)
    return key
