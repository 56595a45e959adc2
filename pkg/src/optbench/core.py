"""Uniform problem abstraction with set-valued optimum support.

A :class:`Problem` bundles an objective, box bounds, an optional feasible
region (possibly a union of disconnected pieces) and a declaration of where
and what the optimum is.  Because several benchmarks have optima that are
manifolds, flat regions of positive measure, or whole curves rather than
isolated points, "how close is this candidate" is answered per optimum
variant by :func:`optimum_gap` instead of a blanket distance-to-point.

Objectives are total on the bounding box: infeasible points still get
objective values and feasibility is reported separately, so both penalty-
and feasibility-rule-based solvers can be driven from the same problem.
All values here are immutable after construction; ``evaluate``,
``is_feasible`` and ``optimum_gap`` are pure and safe to call concurrently.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable, Optional, Union

import numpy as np

from .noise import NoiseKey, NoisePolicy


class ContractViolation(ValueError):
    """An argument broke an operation's stated precondition."""


class Direction(enum.Enum):
    MINIMIZE = "min"
    MAXIMIZE = "max"


def score(direction: Direction, value: float) -> float:
    """Direction-normalized value: solvers always minimize this."""
    return value if direction is Direction.MINIMIZE else -value


# ---------------------------------------------------------------------------
# Feasibility
# ---------------------------------------------------------------------------

class Combinator(enum.Enum):
    INTERSECTION_OF_GROUPS = "intersection"
    UNION_OF_GROUPS = "union"


@dataclass(frozen=True)
class FeasibleRegion:
    """Constraint groups of inequality residuals g(x) <= 0.

    A group is satisfied when every residual in it is non-positive; the
    region combines group satisfaction with AND (intersection) or OR
    (union).  Union regions model disconnected feasible pieces.
    """

    groups: tuple
    combinator: Combinator

    def __post_init__(self):
        groups = tuple(tuple(g) for g in self.groups)
        if not groups or any(not g for g in groups):
            raise ContractViolation("a feasible region needs at least one non-empty group")
        object.__setattr__(self, "groups", groups)


@dataclass(frozen=True)
class FeasibilityReport:
    feasible: bool
    group_worst: tuple  # worst (largest) residual within each group
    violation: float    # scalar >= 0, zero exactly when feasible


# ---------------------------------------------------------------------------
# Optimum specifications
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PointSet:
    """Finitely many optimal points sharing one objective value."""

    points: tuple
    value: float

    def __post_init__(self):
        pts = tuple(_freeze(np.asarray(p, dtype=float)) for p in self.points)
        if not pts:
            raise ContractViolation("a point-set optimum needs at least one point")
        object.__setattr__(self, "points", pts)


@dataclass(frozen=True)
class Manifold:
    """Continuum of optima characterized by a residual equation r(x) = 0."""

    residual: Callable[[np.ndarray], float]
    value: float
    probe: np.ndarray  # one known point on the manifold, for self-checks

    def __post_init__(self):
        object.__setattr__(self, "probe", _freeze(np.asarray(self.probe, dtype=float)))


@dataclass(frozen=True)
class FlatRegions:
    """Optimal set of positive measure on which the objective is constant.

    ``contains`` decides membership; ``boundary_distance`` (when available)
    gives the distance from an outside candidate to the region set, and
    ``intervals`` lists the 1-d interval products when the regions have
    that form.  ``level_excess`` is a fallback location measure for
    predicate-only regions: zero inside, positive outside.
    """

    contains: Callable[[np.ndarray], bool]
    value: float
    probe: np.ndarray
    boundary_distance: Optional[Callable[[np.ndarray], float]] = None
    intervals: Optional[tuple] = None
    level_excess: Optional[Callable[[np.ndarray], float]] = None
    count: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "probe", _freeze(np.asarray(self.probe, dtype=float)))


@dataclass(frozen=True)
class Curve:
    """Reference curve optimum: interior ordinates on the problem's grid."""

    reference: np.ndarray
    value: float
    value_tol: float = 1e-9  # discretization bias allowance for self-checks

    def __post_init__(self):
        object.__setattr__(self, "reference", _freeze(np.asarray(self.reference, dtype=float)))


OptimumSpec = Union[PointSet, Manifold, FlatRegions, Curve]


@dataclass(frozen=True)
class GapReport:
    """Variant-matched closeness of a candidate to the declared optimum.

    ``objective_gap`` is |f(candidate) - optimal value| with noise
    amplitudes pinned to their optimum-preserving expectation;
    ``location_gap`` is the variant's own geometry: distance to the nearest
    declared point, |r(x)| for manifolds, 0-or-boundary-distance for flat
    regions, and the node-wise L-infinity deviation for curves (``curve_l2``
    then carries the grid-weighted L2 deviation as well).
    """

    objective_gap: float
    location_gap: float
    feasible: bool
    curve_l2: Optional[float] = None


# ---------------------------------------------------------------------------
# Problem
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PathFrame:
    """Fixed endpoints of a path problem's discretization grid."""

    x_lo: float
    x_hi: float
    y_lo: float
    y_hi: float


@dataclass(frozen=True)
class Problem:
    """Immutable benchmark definition.

    ``dimension`` counts decision variables (for path problems, the free
    interior ordinates).  ``objective`` takes ``(point, NoiseKey)`` and must
    be total on the bounding box; deterministic problems ignore the key.
    """

    id: str
    dimension: int
    lower: np.ndarray
    upper: np.ndarray
    direction: Direction
    objective: Callable[[np.ndarray, NoiseKey], float]
    optimum: OptimumSpec
    region: Optional[FeasibleRegion] = None
    integer_coords: frozenset = frozenset()
    stochastic: bool = False
    noise_policy: NoisePolicy = NoisePolicy.PER_EVALUATION
    objective_noise_free: Optional[Callable[[np.ndarray], float]] = None
    path_frame: Optional[PathFrame] = None
    path_functional: Optional[object] = None  # numerics.PathFunctional
    equality_residual: Optional[Callable[[np.ndarray], float]] = None
    equality_tol: float = 1e-3
    description: str = ""
    params: object = None

    def __post_init__(self):
        if self.dimension < 1:
            raise ContractViolation("dimension must be a positive integer")
        lower = _freeze(np.asarray(self.lower, dtype=float))
        upper = _freeze(np.asarray(self.upper, dtype=float))
        if lower.shape != (self.dimension,) or upper.shape != (self.dimension,):
            raise ContractViolation("bounds must have one (lower, upper) pair per coordinate")
        if not (np.all(np.isfinite(lower)) and np.all(np.isfinite(upper))):
            raise ContractViolation("bounds must be finite")
        if np.any(lower > upper):
            raise ContractViolation("each lower bound must not exceed its upper bound")
        if any(not 0 <= i < self.dimension for i in self.integer_coords):
            raise ContractViolation("integer coordinate indices out of range")
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)

    @property
    def is_path_problem(self) -> bool:
        return self.path_frame is not None

    def make_path(self, interior):
        from .numerics import Path

        frame = self.path_frame
        if frame is None:
            raise ContractViolation(f"{self.id} is not a path problem")
        return Path(frame.x_lo, frame.x_hi, frame.y_lo, frame.y_hi, interior)


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr = arr.copy()
    arr.setflags(write=False)
    return arr


_DEFAULT_KEY = NoiseKey(0, 0)


def _check_point(problem: Problem, point, check_bounds: bool = True) -> np.ndarray:
    x = np.asarray(point, dtype=float)
    if x.shape != (problem.dimension,):
        raise ContractViolation(
            f"{problem.id} expects a point of dimension {problem.dimension}, "
            f"got shape {x.shape}"
        )
    if check_bounds and (np.any(x < problem.lower) or np.any(x > problem.upper)):
        raise ContractViolation(f"point {x} lies outside the bounds of {problem.id}")
    return x


def evaluate(problem: Problem, point, key: NoiseKey = _DEFAULT_KEY) -> float:
    """Objective value at ``point``; identical (point, key) pairs are
    bit-identical.  Clamping out-of-bounds points is the caller's job."""
    x = _check_point(problem, point)
    return float(problem.objective(x, key))


def is_feasible(problem: Problem, point) -> FeasibilityReport:
    """Evaluate the feasible-region combinator exactly at ``point``.

    Unconstrained problems always report feasible.  The scalar violation is
    zero iff feasible: the sum of positive residual parts for intersections,
    and the smallest such group sum for unions (distance-like, not a metric).
    """
    x = _check_point(problem, point, check_bounds=False)
    region = problem.region
    if region is None:
        return FeasibilityReport(feasible=True, group_worst=(), violation=0.0)
    worst = []
    group_ok = []
    group_violation = []
    for group in region.groups:
        residuals = [float(g(x)) for g in group]
        worst.append(max(residuals))
        group_ok.append(all(r <= 0.0 for r in residuals))
        group_violation.append(sum(max(0.0, r) for r in residuals))
    if region.combinator is Combinator.UNION_OF_GROUPS:
        feasible = any(group_ok)
        violation = 0.0 if feasible else min(group_violation)
    else:
        feasible = all(group_ok)
        violation = sum(group_violation)
    return FeasibilityReport(feasible=feasible, group_worst=tuple(worst), violation=violation)


def noise_free_value(problem: Problem, point) -> float:
    """Objective with noise amplitudes at their optimum-preserving
    expectation (0.5 per component); the objective itself for
    deterministic problems."""
    x = _check_point(problem, point, check_bounds=False)
    if problem.objective_noise_free is not None:
        return float(problem.objective_noise_free(x))
    return float(problem.objective(x, _DEFAULT_KEY))


def optimum_gap(problem: Problem, candidate) -> GapReport:
    """Gap report for a candidate point (or Path, for path problems)."""
    from .numerics import Path

    if isinstance(candidate, Path):
        if not problem.is_path_problem:
            raise ContractViolation(f"{problem.id} takes vector candidates, not paths")
        frame = problem.path_frame
        if (candidate.x_lo, candidate.x_hi, candidate.y_lo, candidate.y_hi) != (
            frame.x_lo,
            frame.x_hi,
            frame.y_lo,
            frame.y_hi,
        ):
            raise ContractViolation("candidate path endpoints do not match the problem frame")
        x = np.asarray(candidate.interior, dtype=float)
    else:
        x = np.asarray(candidate, dtype=float)
    if x.shape != (problem.dimension,):
        raise ContractViolation(
            f"candidate shape {x.shape} does not match dimension {problem.dimension}"
        )

    objective_gap = abs(noise_free_value(problem, x) - problem.optimum.value)
    feasible = is_feasible(problem, x).feasible
    curve_l2 = None
    opt = problem.optimum
    if isinstance(opt, PointSet):
        location = min(float(np.linalg.norm(x - p)) for p in opt.points)
    elif isinstance(opt, Manifold):
        location = abs(float(opt.residual(x)))
    elif isinstance(opt, FlatRegions):
        if opt.contains(x):
            location = 0.0
        elif opt.boundary_distance is not None:
            location = float(opt.boundary_distance(x))
        elif opt.intervals is not None:
            location = _interval_distance(x, opt.intervals)
        elif opt.level_excess is not None:
            location = float(opt.level_excess(x))
        else:
            raise ContractViolation(f"{problem.id}: flat regions carry no distance measure")
    elif isinstance(opt, Curve):
        dev = x - opt.reference
        location = float(np.max(np.abs(dev)))
        h = (problem.path_frame.x_hi - problem.path_frame.x_lo) / (problem.dimension + 1)
        curve_l2 = float(np.sqrt(h * np.sum(dev * dev)))
    else:  # pragma: no cover - exhaustive over OptimumSpec
        raise ContractViolation(f"unknown optimum spec {type(opt).__name__}")
    return GapReport(
        objective_gap=objective_gap,
        location_gap=location,
        feasible=feasible,
        curve_l2=curve_l2,
    )


def _interval_distance(x: np.ndarray, intervals) -> float:
    """Euclidean distance from x to the nearest interval-product region."""
    best = np.inf
    for box in intervals:
        lo = np.array([b[0] for b in box], dtype=float)
        hi = np.array([b[1] for b in box], dtype=float)
        gap = np.maximum(np.maximum(lo - x, x - hi), 0.0)
        best = min(best, float(np.linalg.norm(gap)))
    return best


def check_problem(problem: Problem, tol: float = 1e-9) -> None:
    """Construction-time self-check of the declared optimum.

    Point-set optima must evaluate (noise-free) to the declared value
    within ``tol`` and be feasible; manifold and flat-region specs must
    accept their probe point; curve references must reproduce the declared
    value within the curve's discretization allowance.
    """
    opt = problem.optimum
    if isinstance(opt, PointSet):
        for p in opt.points:
            value = noise_free_value(problem, p)
            if abs(value - opt.value) > tol:
                raise ContractViolation(
                    f"{problem.id}: declared optimum {p} evaluates to {value!r}, "
                    f"expected {opt.value!r}"
                )
            if not is_feasible(problem, p).feasible:
                raise ContractViolation(f"{problem.id}: declared optimum {p} is infeasible")
    elif isinstance(opt, Manifold):
        r = abs(float(opt.residual(opt.probe)))
        if r > 1e-12:
            raise ContractViolation(f"{problem.id}: manifold probe has residual {r!r}")
        if not is_feasible(problem, opt.probe).feasible:
            raise ContractViolation(f"{problem.id}: manifold probe is infeasible")
    elif isinstance(opt, FlatRegions):
        if not opt.contains(opt.probe):
            raise ContractViolation(f"{problem.id}: flat-region probe is not a member")
        value = noise_free_value(problem, opt.probe)
        if abs(value - opt.value) > tol:
            raise ContractViolation(
                f"{problem.id}: flat-region probe evaluates to {value!r}, "
                f"expected {opt.value!r}"
            )
    elif isinstance(opt, Curve):
        value = noise_free_value(problem, opt.reference)
        if abs(value - opt.value) > opt.value_tol:
            raise ContractViolation(
                f"{problem.id}: reference curve evaluates to {value!r}, "
                f"expected {opt.value!r} within {opt.value_tol!r}"
            )
